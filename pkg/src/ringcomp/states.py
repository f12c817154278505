"""Dimension and Sylvester rank functions as exact-rational state polytopes.

A state on a finite-type ordered monoid fragment is a monotone additive map
normalized at an order-unit.  The polytope of all states is assembled as an
exact H-representation over ``fractions.Fraction`` — additivity equalities
on certified addition entries, monotonicity and nonnegativity inequalities,
and the normalization equality — then the equalities are eliminated by
exact row reduction and the vertices are enumerated by exact double
description (all d-subsets of the active inequalities) for at most 12 free
variables.  The Sylvester variant adds superadditivity inequalities on
block-upper-triangular matrices sampled from the underlying ring.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .matrices import Mat
from .monoids import INF, Chain, FiniteMonoid, Interval, SymbolicMonoid
from .wr import TruncatedPoM

MAX_FREE_VARS = 12


# -- exact linear algebra ------------------------------------------------


def _rref_fractions(rows):
    """Exact reduced row echelon form; returns (rows, pivot column list).

    Each row is a list of Fractions (the last entry is the right-hand
    side).  A pivot in the final column signals an inconsistent system.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _solve_square(rows, rhs):
    """Exact solution of a square Fraction system, or None if singular."""
    n = len(rhs)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = _rref_fractions(aug)
    if n in pivots or len(pivots) < n:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return x


# -- polytope ------------------------------------------------------------


@dataclass
class StatePolytope:
    """Exact description of the normalized states on a monoid fragment."""

    labels: list                       # printable variable names
    equalities: list                   # rows (coeffs..., rhs): sum c x = rhs
    inequalities: list                 # rows (coeffs..., rhs): sum c x >= rhs
    vertices: Optional[list]           # Fraction tuples, or None if too big
    empty: bool
    variant: str
    fragment: str
    free_dim: int = 0
    notes: list = field(default_factory=list)

    def is_unique(self):
        return not self.empty and self.vertices is not None \
            and len(self.vertices) == 1

    def check_vertex(self, v) -> bool:
        """Exact re-substitution of a point into every constraint."""
        for row in self.equalities:
            if sum(c * x for c, x in zip(row[:-1], v)) != row[-1]:
                return False
        for row in self.inequalities:
            if sum(c * x for c, x in zip(row[:-1], v)) < row[-1]:
                return False
        return True

    def to_jsonable(self):
        def frac(x):
            return {"num": x.numerator, "den": x.denominator}

        return {
            "variant": self.variant,
            "fragment": self.fragment,
            "labels": self.labels,
            "empty": self.empty,
            "free_dim": self.free_dim,
            "n_equalities": len(self.equalities),
            "n_inequalities": len(self.inequalities),
            "vertices": None if self.vertices is None else
            [[frac(x) for x in v] for v in self.vertices],
            "notes": self.notes,
        }


def _eliminate_and_enumerate(n, equalities, inequalities):
    """(empty, free_dim, vertices) from the exact H-representation.

    Equalities are removed by row reduction: pivot variables become affine
    expressions in the free ones, inequalities are rewritten accordingly,
    and vertices come from exact solutions of d-subsets of inequality rows.
    """
    red, pivots = _rref_fractions(equalities) if equalities else ([], [])
    if n in pivots:
        return True, 0, []
    free = [c for c in range(n) if c not in pivots]
    d = len(free)

    # x = P y + q with y the free variables
    P = [[Fraction(0)] * d for _ in range(n)]
    q = [Fraction(0)] * n
    for j, c in enumerate(free):
        P[c][j] = Fraction(1)
    for row, c in zip(red, pivots):
        q[c] = row[-1]
        for j, fc in enumerate(free):
            P[c][j] = -row[fc]

    red_ineqs = []
    for row in inequalities:
        coeffs = [sum(row[i] * P[i][j] for i in range(n)) for j in range(d)]
        rhs = row[-1] - sum(row[i] * q[i] for i in range(n))
        if all(c == 0 for c in coeffs):
            if rhs > 0:
                return True, d, []
            continue
        red_ineqs.append(coeffs + [rhs])

    if d == 0:
        point = tuple(q)
        ok = all(sum(r[i] * point[i] for i in range(n)) >= r[-1]
                 for r in inequalities)
        return (not ok), 0, ([point] if ok else [])
    if d > MAX_FREE_VARS:
        return False, d, None

    seen = set()
    vertices = []
    for combo in itertools.combinations(range(len(red_ineqs)), d):
        rows = [red_ineqs[i][:-1] for i in combo]
        rhs = [red_ineqs[i][-1] for i in combo]
        y = _solve_square(rows, rhs)
        if y is None:
            continue
        if any(sum(c * v for c, v in zip(r[:-1], y)) < r[-1]
               for r in red_ineqs):
            continue
        x = tuple(sum(P[i][j] * y[j] for j in range(d)) + q[i]
                  for i in range(n))
        if x not in seen:
            seen.add(x)
            vertices.append(x)
    return (not vertices), d, vertices


# -- fragment adapters ---------------------------------------------------


def _fragment_tables(m, u):
    """(labels, leq pairs, certified add triples, zero index, u index).

    Accepts a TruncatedPoM (u is a class index), a FiniteMonoid (u is an
    element index), or the symbolic NSD monoid handled by its generator
    presentation in state_polytope directly.
    """
    if isinstance(m, TruncatedPoM):
        n = m.n_classes()
        labels = [f"[{r.entries}]{r.rows}x{r.cols}" for r in m.reps]
        leq = [(i, j) for i in range(n) for j in range(n) if m.leq[i, j]]
        add = [(i, j, k) for (i, j), k in m.add.items() if k is not None]
        return labels, leq, add, m.zero_class, u, f"W truncation k_max={m.k_max}"
    if isinstance(m, FiniteMonoid):
        n = m.n
        labels = [m.fmt(x) for x in range(n)]
        leq = [(i, j) for i in range(n) for j in range(n) if m.elem_leq(i, j)]
        add = [(i, j, m.elem_add(i, j)) for i in range(n) for j in range(n)]
        return labels, leq, add, 0, u, f"finite monoid ({n} elements)"
    raise TypeError(f"unsupported monoid fragment {type(m).__name__}")


def _check_order_unit(n, leq_pairs, add_triples, zero, u):
    """u is an order-unit on the fragment: every class sits below some
    certified multiple of u."""
    leq = {(i, j) for i, j in leq_pairs}
    add = {(i, j): k for i, j, k in add_triples}
    multiples = [u]
    cur = u
    while True:
        nxt = add.get((cur, u))
        if nxt is None or nxt in multiples:
            break
        multiples.append(nxt)
        cur = nxt
    for i in range(n):
        if i == zero:
            continue
        if not any((i, mu) in leq for mu in multiples):
            return False, i
    return True, None


def _sylvester_rows(w: TruncatedPoM, n, samples, seed):
    """Superadditivity inequalities s([a]) + s([b]) <= s([[a,c],[0,b]])
    on sampled triples that stay inside the truncation."""
    ring = w.ring
    rng = random.Random(seed)
    rows = []
    shapes = [(p, q, r, s)
              for p in range(1, w.k_max) for q in range(1, w.k_max)
              for r in range(1, w.k_max - p + 1)
              for s in range(1, w.k_max - q + 1)]
    if not shapes:
        return rows
    for _ in range(samples):
        p, q, r, s = rng.choice(shapes)
        a = np.array([[rng.randrange(ring.size) for _ in range(q)]
                      for _ in range(p)], dtype=np.int64)
        b = np.array([[rng.randrange(ring.size) for _ in range(s)]
                      for _ in range(r)], dtype=np.int64)
        c = np.array([[rng.randrange(ring.size) for _ in range(s)]
                      for _ in range(p)], dtype=np.int64)
        tri = np.zeros((p + r, q + s), dtype=np.int64)
        tri[:p, :q] = a
        tri[:p, q:] = c
        tri[p:, q:] = b
        ia = w.classify(Mat.from_arr(ring, a).trim())
        ib = w.classify(Mat.from_arr(ring, b).trim())
        it = w.classify(Mat.from_arr(ring, tri).trim())
        if ia is None or ib is None or it is None:
            continue
        row = [Fraction(0)] * (n + 1)
        row[it] += 1
        row[ia] -= 1
        row[ib] -= 1
        rows.append(row)
    return rows


def state_polytope(m, u, variant="dimension", sylvester_samples=64,
                   seed=0) -> StatePolytope:
    """All normalized monotone additive maps on a certified fragment.

    ``m`` is a TruncatedPoM, a FiniteMonoid, or the symbolic NSD monoid;
    ``u`` is the normalization element (class index, element index, or
    tuple respectively).  variant "sylvester" adds block-triangular
    superadditivity rows sampled from the ring of a TruncatedPoM.
    """
    if variant not in ("dimension", "sylvester"):
        raise ValueError(f"unknown variant {variant!r}")

    if isinstance(m, SymbolicMonoid) and m.kind == "NSD":
        return _nsd_state_polytope(m, u, variant)

    labels, leq_pairs, add_triples, zero, u_idx, fragment = \
        _fragment_tables(m, u)
    n = len(labels)
    ok, bad = _check_order_unit(n, leq_pairs, add_triples, zero, u_idx)
    if not ok:
        raise ValueError(
            f"{labels[bad]} is not below any certified multiple of the unit")

    equalities = []
    zero_row = [Fraction(0)] * (n + 1)
    zero_row[zero] = Fraction(1)
    equalities.append(zero_row)
    for i, j, k in add_triples:
        row = [Fraction(0)] * (n + 1)
        row[i] += 1
        row[j] += 1
        row[k] -= 1
        equalities.append(row)
    norm = [Fraction(0)] * (n + 1)
    norm[u_idx] = Fraction(1)
    norm[-1] = Fraction(1)
    equalities.append(norm)

    inequalities = []
    for i in range(n):
        row = [Fraction(0)] * (n + 1)
        row[i] = Fraction(1)
        inequalities.append(row)
    for i, j in leq_pairs:
        if i == j:
            continue
        row = [Fraction(0)] * (n + 1)
        row[j] += 1
        row[i] -= 1
        inequalities.append(row)

    notes = []
    if variant == "sylvester":
        if isinstance(m, TruncatedPoM):
            extra = _sylvester_rows(m, n, sylvester_samples, seed)
            inequalities.extend(extra)
            notes.append(f"{len(extra)} sampled block-triangular rows")
        else:
            notes.append("no underlying ring; sylvester rows omitted")

    empty, d, vertices = _eliminate_and_enumerate(n, equalities, inequalities)
    if vertices is None:
        notes.append(f"free dimension {d} exceeds {MAX_FREE_VARS}; "
                     "H-representation only")
    pol = StatePolytope(labels, equalities, inequalities, vertices, empty,
                        variant, fragment, d, notes)
    if pol.vertices:
        assert all(pol.check_vertex(v) for v in pol.vertices)
    return pol


def _nsd_state_polytope(m, u, variant):
    """States on N x N with the nearly-simple-domain order.

    Additivity reduces a state to its generator values x0 = s(1,0),
    x1 = s(0,1); every constraint on a grid element (r, s) is the linear
    row r*x0 + s*x1.  The order grid up to bound 5 supplies monotonicity.
    """
    bound = 5
    r_u, s_u = u
    if r_u < 1:
        raise ValueError("the unit's first coordinate must be positive "
                         "for an order-unit of the NSD monoid")
    labels = ["s(1,0)", "s(0,1)"]

    def row_of(elem, sign=1):
        r, s = elem
        return [Fraction(sign * r), Fraction(sign * s)]

    equalities = [row_of(u) + [Fraction(1)]]
    inequalities = [[Fraction(1), Fraction(0), Fraction(0)],
                    [Fraction(0), Fraction(1), Fraction(0)]]
    grid = [(r, s) for r in range(bound + 1) for s in range(bound + 1)]
    for a in grid:
        for b in grid:
            if a != b and m.elem_leq(a, b):
                coeffs = [x - y for x, y in zip(row_of(b), row_of(a))]
                inequalities.append(coeffs + [Fraction(0)])
    empty, d, vertices = _eliminate_and_enumerate(2, equalities, inequalities)
    pol = StatePolytope(labels, equalities, inequalities, vertices, empty,
                        variant, f"NSD generators, order grid <= {bound}", d,
                        ["state determined by generator values"])
    if pol.vertices:
        assert all(pol.check_vertex(v) for v in pol.vertices)
    return pol


# -- functionals ---------------------------------------------------------


_PROBE = 64


def extend_functional(d: Callable, interval: Interval):
    """Extension of a monotone additive map to an interval: the supremum
    of d along the interval's cofinal descriptor, possibly INF.

    Agrees with d on principal intervals.  d maps base elements to
    numbers; values along an affine chain either stabilize within the
    probe window or grow without bound (affine descriptors make eventual
    strict growth permanent).
    """
    mode, payload = interval.form
    if mode == "principal":
        return d(payload)
    if mode == "generators":
        return max(d(g) for g in payload)
    ch: Chain = payload
    if ch.data[0] == "list":
        return d(ch.data[1][-1])
    prev = d(ch.value_at(_PROBE))
    nxt = d(ch.value_at(_PROBE + 1))
    if nxt == prev:
        return prev
    return INF


def functional_report(d, intervals, brute_sup=None):
    """Additivity and supremum behavior of an extended functional on
    explicit interval chains; optionally compared with a brute-force sup."""
    from .monoids import interval_add

    vals = [extend_functional(d, i) for i in intervals]
    add_ok = True
    for a, b in itertools.combinations(intervals, 2):
        s = extend_functional(d, interval_add(a, b))
        va, vb = extend_functional(d, a), extend_functional(d, b)
        expect = INF if INF in (va, vb) else va + vb
        if s != expect:
            add_ok = False
    out = {"values": vals, "additive": add_ok}
    if brute_sup is not None:
        out["sup_matches"] = max(vals) == brute_sup
    return out
