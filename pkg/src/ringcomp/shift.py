"""Bounded model of the free algebra on x0, x1, ... with x_{j} x_i = x_i
for j > i.

Normal-form monomials are words with non-decreasing variable indices
(equivalently, strictly increasing index blocks with positive exponents);
the rewriting rule "x_j x_i -> x_i for j > i" is confluent, so reduction by
a single left-to-right stack pass is canonical.  The algebra is non-unital
and infinite: every operation lives under explicit variable and degree
bounds, and exceeding the degree bound is a hard error, never a silent
truncation.  The module also hosts the exhaustive search showing that
z = s z^2 has no nonzero solutions within the bounds, plus its mirrored
left-sided probe z = z^2 s.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .gfp import rref


class DegreeOverflow(ValueError):
    """A product left the configured degree bound."""


def normal_form(word, d: int):
    """Unique normal form of a variable-index word, as an index tuple.

    One left-to-right pass with a stack: an incoming index i pops every
    larger index above it (x_j x_i -> x_i); the result is non-decreasing.
    """
    stack = []
    for i in word:
        if not 0 <= i < d:
            raise ValueError(f"variable index {i} outside bound {d}")
        while stack and stack[-1] > i:
            stack.pop()
        stack.append(i)
    return tuple(stack)


def st_of(mono) -> int:
    """Smallest variable index of a nonzero normal monomial."""
    if not mono:
        raise ValueError("st is undefined for the empty word")
    return min(mono)


def all_monomials(d: int, max_deg: int):
    """All normal-form monomials with degree 1..max_deg, in degree-lex order."""
    out = []
    for deg in range(1, max_deg + 1):
        for mono in itertools.combinations_with_replacement(range(d), deg):
            out.append(mono)
    return out


@dataclass(frozen=True)
class ShiftPoly:
    """A polynomial in the bounded shift algebra over the prime field F_p.

    terms maps normal monomials (index tuples) to nonzero coefficients;
    the zero polynomial has no terms.
    """

    p: int
    d: int
    D: int
    terms: tuple   # sorted ((mono, coeff), ...)

    @classmethod
    def make(cls, p, d, D, term_map):
        clean = {}
        for mono, c in term_map.items():
            c %= p
            if c == 0:
                continue
            nf = normal_form(mono, d)
            if len(nf) > D:
                raise DegreeOverflow(
                    f"monomial of degree {len(nf)} exceeds bound {D}")
            clean[nf] = (clean.get(nf, 0) + c) % p
        items = tuple(sorted((m, c) for m, c in clean.items() if c))
        return cls(p, d, D, items)

    @classmethod
    def zero(cls, p, d, D):
        return cls(p, d, D, ())

    @classmethod
    def monomial(cls, p, d, D, word, coeff=1):
        return cls.make(p, d, D, {tuple(word): coeff})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((len(m) for m, _ in self.terms), default=0)

    def _compat(self, other):
        if (self.p, self.d, self.D) != (other.p, other.d, other.D):
            raise ValueError("mixed algebra parameters")

    def __add__(self, other):
        self._compat(other)
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = (acc.get(m, 0) + c) % self.p
        return ShiftPoly.make(self.p, self.d, self.D, acc)

    def __neg__(self):
        return ShiftPoly.make(self.p, self.d, self.D,
                              {m: -c for m, c in self.terms})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._compat(other)
        acc = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                nf = normal_form(m1 + m2, self.d)
                if len(nf) > self.D:
                    raise DegreeOverflow(
                        f"product degree {len(nf)} exceeds bound {self.D}")
                acc[nf] = (acc.get(nf, 0) + c1 * c2) % self.p
        return ShiftPoly.make(self.p, self.d, self.D, acc)

    def scale(self, c):
        return ShiftPoly.make(self.p, self.d, self.D,
                              {m: co * c for m, co in self.terms})


def multiply(a: ShiftPoly, b: ShiftPoly) -> ShiftPoly:
    return a * b


# -- literals ------------------------------------------------------------

_MONO_RE = re.compile(r"x(\d+)(?:\^(\d+))?")


def parse_monomial(text: str):
    """Index tuple of a monomial literal like ``x0^2 x1 x3``."""
    word = []
    rest = text.strip()
    if not rest:
        raise ValueError("empty monomial literal")
    pos = 0
    for m in _MONO_RE.finditer(rest):
        if rest[pos:m.start()].strip():
            raise ValueError(f"bad monomial literal {text!r}")
        idx = int(m.group(1))
        exp = int(m.group(2) or 1)
        if exp <= 0:
            raise ValueError("exponents must be positive")
        word.extend([idx] * exp)
        pos = m.end()
    if rest[pos:].strip() or not word:
        raise ValueError(f"bad monomial literal {text!r}")
    return tuple(word)


def format_monomial(mono) -> str:
    if not mono:
        return "1"
    parts = []
    for idx, grp in itertools.groupby(mono):
        n = len(list(grp))
        parts.append(f"x{idx}" if n == 1 else f"x{idx}^{n}")
    return " ".join(parts)


def parse_poly(text: str, p: int, d: int, D: int) -> ShiftPoly:
    """Sum of signed monomials with optional integer coefficients."""
    acc = {}
    text = text.strip()
    if text in ("0", ""):
        return ShiftPoly.zero(p, d, D)
    for piece in re.split(r"(?=[+-])", text.replace(" + ", "+").replace(" - ", "-")):
        piece = piece.strip()
        if not piece:
            continue
        sign = 1
        if piece[0] in "+-":
            sign = -1 if piece[0] == "-" else 1
            piece = piece[1:].strip()
        m = re.match(r"^(\d+)\s*\*?\s*", piece)
        coeff = 1
        if m:
            coeff = int(m.group(1))
            piece = piece[m.end():].strip()
        mono = parse_monomial(piece) if piece else ()
        if not mono:
            raise ValueError("the algebra is non-unital; constants are not "
                             "elements")
        acc[mono] = acc.get(mono, 0) + sign * coeff
    return ShiftPoly.make(p, d, D, acc)


def format_poly(poly: ShiftPoly) -> str:
    if poly.is_zero():
        return "0"
    parts = []
    for m, c in poly.terms:
        parts.append(format_monomial(m) if c == 1
                     else f"{c} {format_monomial(m)}")
    return " + ".join(parts)


# -- matrices of polynomials ---------------------------------------------


def _pzero(p, d, D):
    return ShiftPoly.zero(p, d, D)


def pmat_mul(a, b, p, d, D):
    n, k = len(a), len(b[0])
    mid = len(b)
    out = [[_pzero(p, d, D) for _ in range(k)] for _ in range(n)]
    for i in range(n):
        for j in range(k):
            acc = _pzero(p, d, D)
            for t in range(mid):
                acc = acc + a[i][t] * b[t][j]
            out[i][j] = acc
    return out


def pmat_eq(a, b):
    return all(x == y for row_a, row_b in zip(a, b)
               for x, y in zip(row_a, row_b))


def pmat_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


# -- compact-solution search ---------------------------------------------


def _linear_solve_exists(columns, target, n_coords, p):
    """Is target in the F_p-span of the columns (each a coord dict)?"""
    if not target:
        return True
    if not columns:
        return False
    A = np.zeros((n_coords, len(columns) + 1), dtype=np.int64)
    for j, col in enumerate(columns):
        for coord, c in col.items():
            A[coord, j] = c % p
    for coord, c in target.items():
        A[coord, -1] = c % p
    _, pivots = rref(A, p)
    return len(columns) not in pivots


def _coords(polys, index):
    """Coordinate dict of a matrix of polynomials in the monomial basis."""
    out = {}
    n = len(polys)
    k = len(polys[0])
    for i in range(n):
        for j in range(k):
            for m, c in polys[i][j].terms:
                out[index[(i, j, m)]] = c
    return out


def search_compact_solutions(d, D, p=2, size=1, side="right",
                             entry_degree=None, max_candidates=1 << 16):
    """Exhaustive search for nonzero solutions of z = s z^2 (or z = z^2 s).

    z ranges over size x size matrices whose entries are polynomials
    supported on monomials of degree at most entry_degree (default
    floor(D/2), so that z^2 never overflows); for each z the equation is
    linear in s, so solvability is decided exactly by rank over F_p, with
    the support of s restricted to monomials whose products stay within
    the degree bound.  Returns a report with the solutions found (expected
    none beyond z = 0) and the covered range.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    if entry_degree is None:
        entry_degree = D // 2
    pool_monos = all_monomials(d, entry_degree)
    # entry candidates: 0 and c*m for a single monomial m (bounded support)
    entries = [_pzero(p, d, D)]
    for m in pool_monos:
        for c in range(1, p):
            entries.append(ShiftPoly.monomial(p, d, D, m, c))
    cells = size * size
    total = len(entries) ** cells
    scanned = min(total, max_candidates)

    s_monos = all_monomials(d, D)
    solutions = []
    skipped_overflow = 0
    for flat in itertools.islice(
            itertools.product(range(len(entries)), repeat=cells), scanned):
        z = [[entries[flat[i * size + j]] for j in range(size)]
             for i in range(size)]
        if pmat_is_zero(z):
            solutions.append(("zero", z))
            continue
        try:
            z2 = pmat_mul(z, z, p, d, D)
        except DegreeOverflow:
            skipped_overflow += 1
            continue
        # unknowns: one coefficient of s per (cell, monomial); the map
        # s -> s z^2 (or z^2 s) is linear, so build its columns
        index = {}
        for i in range(size):
            for j in range(size):
                for m in all_monomials(d, D):
                    index[(i, j, m)] = len(index)
        columns = []
        for si in range(size):
            for sj in range(size):
                for m in s_monos:
                    basis = [[_pzero(p, d, D) for _ in range(size)]
                             for _ in range(size)]
                    basis[si][sj] = ShiftPoly.monomial(p, d, D, m)
                    try:
                        img = (pmat_mul(basis, z2, p, d, D) if side == "right"
                               else pmat_mul(z2, basis, p, d, D))
                    except DegreeOverflow:
                        continue  # this s-monomial cannot appear
                    col = _coords(img, index)
                    if col:
                        columns.append(col)
        target = _coords(z, index)
        if _linear_solve_exists(columns, target, len(index), p):
            solutions.append(("nonzero", z))
    return {
        "side": side,
        "size": size,
        "entry_degree": entry_degree,
        "candidates_total": total,
        "candidates_scanned": scanned,
        "overflow_skipped": skipped_overflow,
        "complete": scanned == total,
        "nonzero_solutions": [z for kind, z in solutions if kind == "nonzero"],
        "zero_is_solution": any(kind == "zero" for kind, _ in solutions),
    }


# -- the sequence (x0, x1, ...) ------------------------------------------


def sequence_in_S(d: int, p: int = 2) -> dict:
    """Verify that (x0, x1, ..., x_{d-1}) with witnesses y_{i+1} = x_{i+1}
    satisfies the sequence-semigroup membership equations, by direct
    polynomial arithmetic: x_{i+1} (x_{i+1} x_i) = x_{i+1} x_i = x_i."""
    D = 3
    xs = [ShiftPoly.monomial(p, d, D, (i,)) for i in range(d)]
    checks = []
    for i in range(d - 1):
        lhs = xs[i + 1] * xs[i + 1] * xs[i]
        checks.append(lhs == xs[i])
    return {"stages": d, "witness_equations": checks, "valid": all(checks)}
