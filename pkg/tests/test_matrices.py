"""Matrices, diagonal sum, trim, idempotents, Murray-von Neumann equivalence."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringcomp.matrices import (Idem, Mat, all_idems, all_mats, diag,
                               diag_sum, format_matrix, identity,
                               mvn_equivalent, parse_matrix, zero)


def mat(ring, rows):
    return parse_matrix(ring, str(rows))


class TestDiagSum:
    def test_ones(self, f2):
        assert diag_sum(mat(f2, [[1]]), mat(f2, [[1]])) == diag(f2, [1, 1])

    def test_zero_block_retained_before_trim(self, f2):
        s = diag_sum(mat(f2, [[0]]), mat(f2, [[1]]))
        assert s == mat(f2, [[0, 0], [0, 1]])

    def test_rectangular_blocks(self, f2):
        s = diag_sum(mat(f2, [[1, 1]]), mat(f2, [[1], [0]]))
        assert s == mat(f2, [[1, 1, 0], [0, 0, 1], [0, 0, 0]])

    def test_ring_mismatch_rejected(self, f2, f3):
        with pytest.raises(ValueError):
            diag_sum(mat(f2, [[1]]), mat(f3, [[1]]))


class TestTrim:
    def test_border_only(self, f2):
        m = mat(f2, [[0, 1, 0], [0, 0, 0]])
        assert m.trim() == mat(f2, [[0, 1]])

    def test_idempotent_operation(self, f2):
        m = mat(f2, [[1, 0], [0, 0]])
        assert m.trim().trim() == m.trim()

    def test_zero_matrix_keeps_one_cell(self, f2):
        assert zero(f2, 3, 2).trim() == zero(f2, 1, 1)


class TestMvn:
    def test_identity_witness(self, f2):
        e = Idem(mat(f2, [[1]]))
        v = mvn_equivalent(e, e)
        assert v.is_true
        x, y = v.witness
        assert x @ y == e.base and y @ x == e.base

    def test_rank_one_in_different_sizes(self, f2):
        e = Idem(mat(f2, [[1]]))
        f = Idem(mat(f2, [[1, 0], [0, 0]]))
        v = mvn_equivalent(e, f)
        assert v.is_true
        x, y = v.witness
        assert x @ y == e.base and y @ x == f.base

    def test_one_not_equivalent_to_zero(self, f2):
        v = mvn_equivalent(Idem(mat(f2, [[1]])), Idem(mat(f2, [[0]])))
        assert v.is_false

    def test_symmetric_and_reflexive_on_all_2x2_idems(self, f2):
        idems = all_idems(f2, 2)
        for e in idems:
            assert mvn_equivalent(e, e).is_true
            for f in idems:
                assert (mvn_equivalent(e, f).is_true
                        == mvn_equivalent(f, e).is_true)


class TestAssociativityUpToTrim:
    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(0, 1), min_size=1, max_size=4),
           st.lists(st.integers(0, 1), min_size=1, max_size=4),
           st.lists(st.integers(0, 1), min_size=1, max_size=4))
    def test_diag_sum_assoc(self, a, b, c):
        from ringcomp.rings import gf

        r = gf(2)
        x = Mat(r, 1, len(a), tuple(a))
        y = Mat(r, 1, len(b), tuple(b))
        z = Mat(r, 1, len(c), tuple(c))
        left = diag_sum(diag_sum(x, y), z)
        right = diag_sum(x, diag_sum(y, z))
        assert left == right  # strictly monoidal on shapes, no trim needed


class TestLiterals:
    def test_round_trip(self, z4):
        m = mat(z4, [[1, 2], [3, 0]])
        assert parse_matrix(z4, format_matrix(m)) == m

    def test_whitespace_insensitive(self, f2):
        assert parse_matrix(f2, " [ [1, 0] ,[0,1] ] ") == identity(f2, 2)

    def test_bad_literals(self, f2):
        with pytest.raises(ValueError):
            parse_matrix(f2, "[[1],[1,0]]")
        with pytest.raises(ValueError):
            parse_matrix(f2, "[[7]]")


def test_enumeration_counts(f2, z4):
    assert len(list(all_mats(f2, 2, 2))) == 16
    assert len(list(all_mats(z4, 1, 2))) == 16
    # idempotents of M_2(F_2): 0, I, and the rank-1 ones
    idems = list(all_idems(f2, 2))
    assert len(idems) == 8
