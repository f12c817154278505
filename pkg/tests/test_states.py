"""Exact rational state polytopes and extended functionals."""

import math
from fractions import Fraction

import pytest

from ringcomp.monoids import (Chain, Interval, natural_monoid, nsd_monoid,
                              zero_infinity_table)
from ringcomp.states import (extend_functional, functional_report,
                             state_polytope)
from ringcomp.wr import build_W

INF = math.inf
N = natural_monoid()


class TestStatePolytope:
    def test_field_truncation_has_the_unique_rank_state(self, f2):
        from ringcomp.matrices import identity

        w = build_W(f2, 3)
        u = w.classify(identity(f2, 1))
        pol = state_polytope(w, u)
        assert pol.is_unique()
        v = pol.vertices[0]
        # the state assigns each class its rank
        import numpy as np
        for i, rep in enumerate(w.reps):
            rank = 0 if rep.is_zero() else int(np.linalg.matrix_rank(rep.arr % 2))
            assert v[i] == Fraction(rank)

    def test_nsd_unit_one_zero_is_a_segment(self):
        pol = state_polytope(nsd_monoid(), (1, 0))
        assert not pol.empty
        assert sorted(pol.vertices) == [
            (Fraction(1), Fraction(0)), (Fraction(1), Fraction(1))]

    def test_zero_infinity_table_is_empty(self):
        m = zero_infinity_table()
        pol = state_polytope(m, 1)  # normalize at the absorbing element
        assert pol.empty and pol.vertices == []

    def test_vertices_satisfy_every_constraint_exactly(self, z4):
        w = build_W(z4, 2)
        from ringcomp.matrices import identity
        pol = state_polytope(w, w.classify(identity(z4, 1)))
        assert pol.vertices
        for v in pol.vertices:
            assert pol.check_vertex(v)

    def test_non_order_unit_rejected(self, f2):
        w = build_W(f2, 2)
        from ringcomp.matrices import zero
        with pytest.raises(ValueError):
            state_polytope(w, w.classify(zero(f2, 1, 1)))

    def test_bad_variant_rejected(self, f2):
        w = build_W(f2, 2)
        with pytest.raises(ValueError):
            state_polytope(w, 1, variant="nope")


class TestSylvesterVariant:
    def test_coincides_with_dimension_on_field(self, f2):
        from ringcomp.matrices import identity
        w = build_W(f2, 3)
        u = w.classify(identity(f2, 1))
        dim = state_polytope(w, u, variant="dimension")
        syl = state_polytope(w, u, variant="sylvester", seed=1)
        assert sorted(dim.vertices) == sorted(syl.vertices)

    def test_coincides_on_m2f2(self, m2f2):
        from ringcomp.matrices import identity
        w = build_W(m2f2, 2)
        u = w.classify(identity(m2f2, 1))
        dim = state_polytope(w, u)
        syl = state_polytope(w, u, variant="sylvester", seed=2)
        assert sorted(dim.vertices) == sorted(syl.vertices)

    def test_rows_note_present(self, f2):
        w = build_W(f2, 2)
        from ringcomp.matrices import identity
        syl = state_polytope(w, w.classify(identity(f2, 1)),
                             variant="sylvester")
        assert any("block-triangular" in note for note in syl.notes)


class TestExtendFunctional:
    def test_full_interval_is_infinite(self):
        full = Interval.chain(N, Chain(N, ("affine", ((1, 0),))))
        assert extend_functional(lambda x: x, full) == INF

    def test_agrees_on_principal(self):
        assert extend_functional(lambda x: x, Interval.principal(N, 3)) == 3

    def test_unbounded_nsd_coordinate(self):
        nsd = nsd_monoid()
        ch = Chain(nsd, ("affine", ((1, 0), (0, 0))))
        i = Interval.chain(nsd, ch)
        assert extend_functional(lambda rs: rs[0] + rs[1], i) == INF

    def test_report_additive_and_sup(self):
        ivs = [Interval.principal(N, k) for k in (1, 2, 3)]
        rep = functional_report(lambda x: x, ivs, brute_sup=3)
        assert rep["additive"] and rep["sup_matches"]
        assert rep["values"] == [1, 2, 3]
