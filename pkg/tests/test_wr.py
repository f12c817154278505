"""Truncated class monoids of matrices and idempotents."""

import numpy as np
import pytest

from ringcomp.matrices import diag, identity, parse_matrix
from ringcomp.subequiv import precsim1, regular_idempotent
from ringcomp.wr import build_V, build_W, saturation_report


def mat(ring, rows):
    return parse_matrix(ring, str(rows))


class TestBuildW:
    def test_gf2_kmax4_is_the_rank_chain(self, f2):
        w = build_W(f2, 4)
        assert w.n_classes() == 5
        ranks = [0 if r.is_zero() else np.linalg.matrix_rank(r.arr % 2)
                 for r in w.reps]
        order = np.argsort(ranks)
        for pos_i, i in enumerate(order):
            for pos_j, j in enumerate(order):
                assert bool(w.leq[i, j]) == (pos_i <= pos_j)
        # addition is rank addition on all certified entries
        for (i, j), k in w.add.items():
            if k is not None:
                assert ranks[k] == ranks[i] + ranks[j]

    def test_zmod4_kmax2_incomparable_pair(self, z4):
        w = build_W(z4, 2)
        i22 = w.classify(diag(z4, [2, 2]))
        i1 = w.classify(mat(z4, [[1]]))
        assert i22 is not None and i1 is not None and i22 != i1
        assert not w.leq[i22, i1] and not w.leq[i1, i22]

    def test_product_ring_is_componentwise(self, f2xf3):
        w = build_W(f2xf3, 2)
        # classes are pairs of componentwise ranks 0..2
        assert w.n_classes() == 9
        for (i, j), k in w.add.items():
            if k is None:
                assert w.add_cert[(i, j)] == "truncation_relative"

    def test_addition_commutes_and_is_monotone_where_defined(self, z4):
        w = build_W(z4, 2)
        n = w.n_classes()
        for i in range(n):
            for j in range(n):
                assert w.add[(i, j)] == w.add[(j, i)]
        for i in range(n):
            for j in range(n):
                if not w.leq[i, j]:
                    continue
                for k in range(n):
                    a, b = w.add[(i, k)], w.add[(j, k)]
                    if a is not None and b is not None:
                        assert w.leq[a, b]

    def test_zero_class_is_least(self, z4):
        w = build_W(z4, 2)
        assert w.leq[w.zero_class].all()


class TestBuildV:
    def test_gf2_rank_classes(self, f2):
        vm = build_V(f2, 3)
        assert vm.n_classes() == 4  # ranks 0..3

    def test_zmod4_local_ring_free_ranks(self, z4):
        vm = build_V(z4, 2)
        assert vm.n_classes() == 3  # 0, 1, 2

    def test_iota_surjective_for_m2f2(self, m2f2):
        vm = build_V(m2f2, 2)
        covered = set(vm.iota)
        assert covered == set(range(vm.w.n_classes()))
        # every W class carries an idempotent found by the regularity recipe
        for rep in vm.w.reps:
            reg = regular_idempotent(rep)
            assert reg.is_true
            assert vm.w.classify(reg.witness.e.base) == vm.w.classify(rep)

    def test_iota_order_embedding_on_field(self, f2):
        vm = build_V(f2, 2)
        for i in range(vm.n_classes()):
            for j in range(vm.n_classes()):
                lhs = vm.leq(i, j)
                rhs = bool(vm.w.leq[vm.iota[i], vm.iota[j]])
                assert lhs == rhs
                if vm.leq_algebraic(i, j):  # algebraic order refines it
                    assert lhs


class TestSaturation:
    def test_gf2_stable(self, f2):
        rep = saturation_report(f2, 3)
        assert all(entry["stable"] for entry in rep)

    def test_zmod4_one_by_one_chain_confirmed(self, z4):
        rep = saturation_report(z4, 2)
        assert rep[0]["stable"]
        # the scalar chain [0] < [2] < [1] persists at the padded size
        a, b, c = mat(z4, [[0]]), mat(z4, [[2]]), mat(z4, [[1]])
        for lo, hi in ((a, b), (b, c)):
            assert precsim1(lo, hi).is_true
            assert not precsim1(hi, lo).is_true

    def test_trivial_single_class_case(self, f2):
        # k_max=1 probes nothing and reports no instability
        assert saturation_report(f2, 1) == []
