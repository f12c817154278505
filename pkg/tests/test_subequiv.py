"""The relations a = r b t and their constructive witness recipes."""

import numpy as np
import pytest

from ringcomp.matrices import Idem, Mat, all_idems, all_mats, diag, diag_sum, \
    identity, parse_matrix, zero
from ringcomp.subequiv import (complement, precsim1, precsim1_exhaustive,
                               precsimM, regular_idempotent,
                               triangular_identity)


def mat(ring, rows):
    return parse_matrix(ring, str(rows))


class TestPrecsim1:
    def test_rank_one_into_padded_rank_one(self, f2):
        v = precsim1(mat(f2, [[1]]), mat(f2, [[1, 0], [0, 0]]))
        assert v.is_true
        assert v.witness.r @ mat(f2, [[1, 0], [0, 0]]) @ v.witness.t \
            == mat(f2, [[1]])

    def test_one_not_under_two_mod_four(self, z4):
        # r * 2 * t only reaches {0, 2}
        assert precsim1(mat(z4, [[1]]), mat(z4, [[2]])).is_false

    def test_two_under_one_mod_four(self, z4):
        v = precsim1(mat(z4, [[2]]), mat(z4, [[1]]))
        assert v.is_true

    def test_transitive_on_sampled_triples(self, z4):
        rng = np.random.default_rng(3)
        pool = [Mat(z4, 2, 2, tuple(rng.integers(0, 4, size=4)))
                for _ in range(12)]
        for a in pool[:6]:
            for b in pool[:6]:
                for c in pool[:6]:
                    if precsim1(a, b).is_true and precsim1(b, c).is_true:
                        assert precsim1(a, c).is_true

    def test_budget_exhaustion_is_unknown_not_false(self, z4):
        # pinning `allowed` forces the generic search past every fast path
        v = precsim1(mat(z4, [[1]]), mat(z4, [[2]]), budget=1,
                     allowed=z4.allowed)
        assert v.is_unknown
        with pytest.raises(TypeError):
            bool(v)


class TestFastPathAgreement:
    def test_all_1x1_and_2x2_pairs_over_f2(self, f2):
        shapes = [(1, 1), (1, 2), (2, 1), (2, 2)]
        mats = [m for r, c in shapes for m in all_mats(f2, r, c)]
        for a in mats:
            for b in mats:
                fast = precsim1(a, b)
                slow = precsim1_exhaustive(a, b)
                assert fast.status == slow.status, (a, b)

    def test_sampled_3x3_over_f3(self, f3):
        rng = np.random.default_rng(11)
        for _ in range(60):
            a = Mat(f3, 3, 3, tuple(rng.integers(0, 3, size=9)))
            b = Mat(f3, 3, 3, tuple(rng.integers(0, 3, size=9)))
            assert precsim1(a, b).status == precsim1_exhaustive(a, b).status

    def test_all_1x1_and_sampled_2x2_over_z4(self, z4):
        for x in range(4):
            for y in range(4):
                a, b = mat(z4, [[x]]), mat(z4, [[y]])
                assert precsim1(a, b).status == precsim1_exhaustive(a, b).status
        rng = np.random.default_rng(13)
        for _ in range(40):
            a = Mat(z4, 2, 2, tuple(rng.integers(0, 4, size=4)))
            b = Mat(z4, 2, 2, tuple(rng.integers(0, 4, size=4)))
            fast = precsim1(a, b)
            assert fast.status == precsim1_exhaustive(a, b).status
            assert not fast.is_unknown


class TestPrecsimM:
    def test_triangular_rule_applies_verbatim(self, f2):
        a = diag(f2, [1, 1])
        b = mat(f2, [[1, 1], [0, 1]])
        assert precsimM(a, b, depth=1).is_true

    def test_reflexive_in_unital_ring(self, f2):
        one = mat(f2, [[1]])
        assert precsimM(one, one, depth=1).is_true

    def test_nothing_reaches_one_from_zero(self, f2):
        v = precsimM(mat(f2, [[1]]), mat(f2, [[0]]), depth=3)
        assert v.is_false

    def test_one_step_subequivalence_implies_malcolmson(self, z4):
        rng = np.random.default_rng(5)
        for _ in range(20):
            a = Mat(z4, 1, 1, (int(rng.integers(0, 4)),))
            b = Mat(z4, 2, 2, tuple(rng.integers(0, 4, size=4)))
            if precsim1(a, b).is_true:
                assert precsimM(a, b, depth=1).is_true


class TestComplement:
    def test_unit_inside_identity(self, f2):
        res = complement(Idem(mat(f2, [[1]])), identity(f2, 2))
        assert res.f.base == diag(f2, [1, 0])
        assert res.w == diag(f2, [0, 1])

    def test_self_complement_is_zero(self, f2):
        e = mat(f2, [[1, 0], [0, 0]])
        res = complement(Idem(e), e)
        assert res.f.base == e
        assert res.w.is_zero()

    def test_zero_case(self, f2):
        v = mat(f2, [[1, 1], [0, 1]])
        res = complement(Idem(zero(f2, 1, 1)), v)
        assert res.f.base.is_zero()
        assert res.w == v

    def test_witnesses_re_verify(self, f2):
        e = Idem(mat(f2, [[1]]))
        v = identity(f2, 2)
        res = complement(e, v)
        fw = diag_sum(res.f.base, res.w)
        assert res.v_leq_fw.r @ fw @ res.v_leq_fw.t == v
        assert res.fw_leq_v.r @ v @ res.fw_leq_v.t == fw


class TestRegularIdempotent:
    def test_rank_one_matrix_over_f2(self, f2):
        a = mat(f2, [[1, 1], [0, 0]])
        v = regular_idempotent(a)
        assert v.is_true
        e = v.witness.e.base
        assert e @ e == e
        assert precsim1(a, e).is_true and precsim1(e, a).is_true

    def test_unit_is_regular(self, f2):
        v = regular_idempotent(mat(f2, [[1]]))
        assert v.is_true and v.witness.e.base == mat(f2, [[1]])

    def test_two_mod_four_is_not_regular(self, z4):
        assert regular_idempotent(mat(z4, [[2]])).is_false


class TestTriangularIdentity:
    def test_exact_product_on_sampled_triples(self, f2):
        rng = np.random.default_rng(7)
        count = 0
        while count < 50:
            a = Mat(f2, 2, 2, tuple(rng.integers(0, 2, size=4)))
            reg = regular_idempotent(a)
            if not reg.is_true:
                continue
            b = Mat(f2, 2, 2, tuple(rng.integers(0, 2, size=4)))
            c = Mat(f2, 2, 2, tuple(rng.integers(0, 2, size=4)))
            _, _, _, prod = triangular_identity(a, reg.witness.x, b, c)
            assert prod == diag_sum(a, b)
            count += 1

    def test_rejects_non_inverse(self, z4):
        with pytest.raises(ValueError):
            triangular_identity(mat(z4, [[2]]), mat(z4, [[0]]),
                                mat(z4, [[1]]), mat(z4, [[0]]))
