"""The bounded shift algebra: normal forms, the st invariant, and the
compact-solution searches."""

import itertools

import pytest

from ringcomp.shift import (DegreeOverflow, ShiftPoly, all_monomials,
                            format_monomial, format_poly, normal_form,
                            parse_monomial, parse_poly,
                            search_compact_solutions, sequence_in_S, st_of)


class TestNormalForm:
    def test_descending_pair_reduces(self):
        assert normal_form((1, 0), 4) == (0,)

    def test_inner_reduction_then_normal(self):
        assert normal_form((2, 0, 1), 4) == (0, 1)

    def test_single_variable_fixed(self):
        assert normal_form((0,), 4) == (0,)

    def test_result_is_nondecreasing(self):
        for word in itertools.product(range(3), repeat=4):
            nf = normal_form(word, 3)
            assert all(a <= b for a, b in zip(nf, nf[1:]))

    def test_confluent_up_to_length_six(self):
        # reducing any descending adjacent pair first gives the same result
        def reduce_all_orders(word):
            outs = set()
            stack = [tuple(word)]
            while stack:
                w = stack.pop()
                redexes = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
                if not redexes:
                    outs.add(w)
                    continue
                for i in redexes:
                    stack.append(w[:i] + w[i + 1:])
            return outs

        for ln in range(1, 7):
            for word in itertools.product(range(3), repeat=ln):
                assert reduce_all_orders(word) == {normal_form(word, 3)}

    def test_index_bound_enforced(self):
        with pytest.raises(ValueError):
            normal_form((5,), 3)


class TestStInvariant:
    def test_examples(self):
        assert st_of((0, 1)) == 0
        assert st_of((2, 2, 2)) == 2
        assert st_of(normal_form((2, 0), 3)) == 0

    def test_product_is_min(self):
        monos = all_monomials(3, 2)
        for p in monos:
            for q in monos:
                pq = normal_form(p + q, 3)
                assert st_of(pq) == min(st_of(p), st_of(q))

    def test_higher_start_absorbed(self):
        monos = all_monomials(3, 2)
        for p in monos:
            for q in monos:
                if st_of(p) > st_of(q):
                    assert normal_form(p + q, 3) == q

    def test_equal_starts_grow(self):
        monos = all_monomials(3, 2)
        for p in monos:
            for q in monos:
                if st_of(p) == st_of(q):
                    pq = normal_form(p + q, 3)
                    assert len(pq) > len(q) and pq != p


class TestShiftPoly:
    def test_relation_in_products(self):
        x0 = ShiftPoly.monomial(2, 4, 4, (0,))
        x1 = ShiftPoly.monomial(2, 4, 4, (1,))
        assert x1 * x0 == x0

    def test_zero_absorbs(self):
        z = ShiftPoly.zero(2, 4, 4)
        p = ShiftPoly.monomial(2, 4, 4, (1, 2))
        assert (z * p).is_zero() and (p * z).is_zero()

    def test_binomial_product_over_f2(self):
        x0 = ShiftPoly.monomial(2, 4, 4, (0,))
        x1 = ShiftPoly.monomial(2, 4, 4, (1,))
        prod = (x0 + x1) * x0
        assert prod == ShiftPoly.make(2, 4, 4, {(0, 0): 1, (0,): 1})

    def test_associative_on_monomials(self):
        gens = [ShiftPoly.monomial(3, 3, 6, m) for m in all_monomials(3, 2)]
        for a, b, c in itertools.islice(
                itertools.product(gens, repeat=3), 400):
            assert (a * b) * c == a * (b * c)

    def test_degree_overflow_is_hard(self):
        p = ShiftPoly.monomial(2, 2, 2, (0, 0))
        with pytest.raises(DegreeOverflow):
            p * p

    def test_literals_round_trip(self):
        mono = parse_monomial("x0^2 x1 x3")
        assert mono == (0, 0, 1, 3)
        assert format_monomial(mono) == "x0^2 x1 x3"
        poly = parse_poly("x0 + x1 x2", 2, 4, 4)
        assert format_poly(poly) == "x0 + x1 x2"

    def test_constants_rejected(self):
        with pytest.raises(ValueError):
            parse_poly("1", 2, 4, 4)


class TestCompactSearch:
    def test_scalar_d1_only_zero(self):
        rep = search_compact_solutions(d=1, D=2, p=2, size=1)
        assert rep["complete"]
        assert rep["zero_is_solution"]
        assert rep["nonzero_solutions"] == []

    def test_x0_never_a_solution(self):
        rep = search_compact_solutions(d=2, D=3, p=2, size=1)
        assert rep["complete"] and rep["nonzero_solutions"] == []

    def test_left_sided_probe_also_empty(self):
        rep = search_compact_solutions(d=2, D=3, p=2, size=1, side="left")
        assert rep["complete"] and rep["nonzero_solutions"] == []

    def test_bad_side_rejected(self):
        with pytest.raises(ValueError):
            search_compact_solutions(d=1, D=2, side="middle")


def test_shift_sequence_membership():
    rep = sequence_in_S(4)
    assert rep["valid"] and len(rep["witness_equations"]) == 3
