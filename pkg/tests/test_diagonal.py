"""Elementary diagonalization over Z/p^k and the unit/non-unit rank pair."""

import numpy as np
import pytest

from ringcomp.diagonal import (DiagCertificate, diagonalize, psi_rank,
                               valuation_multiset)
from ringcomp.matrices import Mat, identity, parse_matrix
from ringcomp.monoids import nsd_monoid
from ringcomp.rings import RingError, gf, matrix_ring, zmod


def mat(ring, rows):
    return parse_matrix(ring, str(rows))


class TestDiagonalize:
    def test_all_twos_mod_four(self, z4):
        cert = diagonalize(mat(z4, [[2, 2], [2, 2]]))
        assert sorted(int(cert.D.arr[i, i]) for i in range(2)) == [0, 2]
        assert cert.verify()

    def test_identity_is_fixed(self, z4):
        cert = diagonalize(identity(z4, 3))
        assert cert.D == identity(z4, 3)
        assert cert.u_ops == [] and cert.v_ops == []

    def test_unit_pivot_case(self, z4):
        cert = diagonalize(mat(z4, [[1, 1], [0, 2]]))
        assert sorted(int(cert.D.arr[i, i]) for i in range(2)) == [1, 2]
        assert cert.verify()

    def test_rejects_non_chain_ring(self, m2f2):
        with pytest.raises(RingError):
            diagonalize(identity(m2f2, 2))

    def test_rejects_non_square(self, z4):
        with pytest.raises(ValueError):
            diagonalize(mat(z4, [[1, 0]]))

    def test_random_matrices_verify(self, z8):
        rng = np.random.default_rng(17)
        for _ in range(50):
            n = int(rng.integers(1, 5))
            a = Mat.from_arr(z8, rng.integers(0, 8, size=(n, n)))
            cert = diagonalize(a)
            assert cert.verify()
            assert (cert.U @ a @ cert.V) == cert.D


class TestValuationMultiset:
    def test_seed_invariance(self, z8):
        rng = np.random.default_rng(23)
        for _ in range(25):
            a = Mat.from_arr(z8, rng.integers(0, 8, size=(3, 3)))
            base = valuation_multiset(a, seed=0)
            assert valuation_multiset(a, seed=1) == base
            assert valuation_multiset(a, seed=2) == base

    def test_rectangular_inputs_padded(self, z4):
        assert valuation_multiset(mat(z4, [[2, 0]])) == (1, 2)


class TestPsiRank:
    def test_mixed_diagonal(self, z4):
        assert psi_rank(mat(z4, [[1, 0, 0], [0, 2, 0], [0, 0, 0]])) == (1, 1)

    def test_identity(self, z4):
        assert psi_rank(identity(z4, 3)) == (3, 0)

    def test_nsd_comparison_of_rank_pairs(self):
        nsd = nsd_monoid()
        assert nsd.elem_leq((0, 1), (1, 0))
        assert not nsd.elem_leq((1, 0), (0, 1))

    def test_additive_under_diag_sum(self, z8):
        from ringcomp.matrices import diag_sum

        rng = np.random.default_rng(31)
        for _ in range(20):
            a = Mat.from_arr(z8, rng.integers(0, 8, size=(2, 2)))
            b = Mat.from_arr(z8, rng.integers(0, 8, size=(2, 2)))
            ra, rb = psi_rank(a), psi_rank(b)
            rs = psi_rank(diag_sum(a, b))
            assert rs == (ra[0] + rb[0], ra[1] + rb[1])
