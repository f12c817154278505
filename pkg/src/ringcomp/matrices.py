"""Rectangular matrices over a finite ring and Murray-von Neumann equivalence.

A Mat is a finite representative of an element of the infinite matrix ring
(embedded top-left); it is stored untrimmed, and trim is always an explicit
call.  Diagonal sum is the monoid operation everything upstream quotients.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass

import numpy as np

from . import gfp, kernels
from .common import FALSE, TRUE, UNKNOWN, Verdict
from .rings import FiniteRing, RingError


@dataclass(frozen=True)
class Mat:
    """A rows x cols matrix of element ids over a finite ring."""

    ring: FiniteRing
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix shape must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        if any(e < 0 or e >= self.ring.size for e in self.entries):
            raise ValueError("entry out of ring range")

    # -- conversions -----------------------------------------------------

    @property
    def arr(self):
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    @staticmethod
    def from_arr(ring, a):
        a = np.asarray(a, dtype=np.int64)
        return Mat(ring, a.shape[0], a.shape[1], tuple(int(v) for v in a.ravel()))

    def key(self):
        """Canonical ordering key: shape first, then lexicographic entries."""
        return (self.rows, self.cols, self.entries)

    def __repr__(self):
        rows = [list(self.entries[i * self.cols:(i + 1) * self.cols])
                for i in range(self.rows)]
        return f"Mat({self.ring.name}, {rows})"

    # -- arithmetic ------------------------------------------------------

    def __matmul__(self, other):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = kernels.matmul(self.ring.add, self.ring.mul, self.arr, other.arr)
        return Mat.from_arr(self.ring, out)

    def __add__(self, other):
        if self.ring != other.ring or (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape or ring mismatch in sum")
        return Mat.from_arr(self.ring, self.ring.add[self.arr, other.arr])

    def __sub__(self, other):
        neg = Mat.from_arr(other.ring, other.ring.neg[other.arr])
        return self + neg

    def is_zero(self):
        return all(e == 0 for e in self.entries)

    def is_idempotent(self):
        return self.rows == self.cols and (self @ self) == self

    # -- trimming and diagonal sum ---------------------------------------

    def trim(self):
        """Drop trailing all-zero rows and columns (keeping a 1x1 minimum).

        Only the bottom/right border is trimmed so the top-left embedding
        into the infinite matrix ring is preserved.
        """
        a = self.arr
        r, c = self.rows, self.cols
        while r > 1 and not a[r - 1, :].any():
            r -= 1
        while c > 1 and not a[:, c - 1].any():
            c -= 1
        return Mat.from_arr(self.ring, a[:r, :c])

    def diag_sum(self, other):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        out = np.zeros((self.rows + other.rows, self.cols + other.cols),
                       dtype=np.int64)
        out[:self.rows, :self.cols] = self.arr
        out[self.rows:, self.cols:] = other.arr
        return Mat.from_arr(self.ring, out)

    # -- field flattening ------------------------------------------------

    def flatten(self):
        """Image as an integer matrix over F_p, when the ring supports it."""
        info = self.ring.flatten_info()
        if info is None:
            raise ValueError("ring has no prime-field flattening")
        p, blk = info
        if blk == 1:
            return self.arr, p
        big = np.zeros((self.rows * blk, self.cols * blk), dtype=np.int64)
        for i in range(self.rows):
            for j in range(self.cols):
                big[i * blk:(i + 1) * blk, j * blk:(j + 1) * blk] = \
                    self.ring.elem_block(self.entries[i * self.cols + j])
        return big, p

    @staticmethod
    def unflatten(ring, big):
        """Inverse of flatten for the same ring."""
        info = ring.flatten_info()
        p, blk = info
        big = np.asarray(big, dtype=np.int64) % p
        if blk == 1:
            return Mat.from_arr(ring, big)
        rows, cols = big.shape[0] // blk, big.shape[1] // blk
        out = np.empty((rows, cols), dtype=np.int64)
        for i in range(rows):
            for j in range(cols):
                out[i, j] = ring.block_elem(
                    big[i * blk:(i + 1) * blk, j * blk:(j + 1) * blk])
        return Mat(ring, rows, cols, tuple(int(v) for v in out.ravel()))

    def split(self):
        """Componentwise parts over a product ring."""
        r1, r2 = self.ring.params
        a = self.arr
        return (Mat.from_arr(r1, a // r2.size), Mat.from_arr(r2, a % r2.size))

    @staticmethod
    def join(ring, m1, m2):
        """Inverse of split for a product ring."""
        r1, r2 = ring.params
        return Mat.from_arr(ring, m1.arr * r2.size + m2.arr)


def diag_sum(x: Mat, y: Mat) -> Mat:
    return x.diag_sum(y)


def zero(ring, rows, cols=None) -> Mat:
    cols = rows if cols is None else cols
    return Mat(ring, rows, cols, (0,) * (rows * cols))


def identity(ring, n) -> Mat:
    if ring.one is None:
        raise ValueError("identity matrix needs a unital ring")
    a = np.zeros((n, n), dtype=np.int64)
    np.fill_diagonal(a, ring.one)
    return Mat.from_arr(ring, a)


def diag(ring, entries) -> Mat:
    a = np.zeros((len(entries), len(entries)), dtype=np.int64)
    np.fill_diagonal(a, np.asarray(entries, dtype=np.int64))
    return Mat.from_arr(ring, a)


@dataclass(frozen=True)
class Idem:
    """A square matrix certified idempotent at construction."""

    base: Mat

    def __post_init__(self):
        if not self.base.is_idempotent():
            raise ValueError("matrix is not idempotent")


# -- literals ------------------------------------------------------------


def parse_matrix(ring, text: str) -> Mat:
    """Parse a bracketed-rows matrix literal like ``[[1,0],[0,1]]``."""
    try:
        rows = ast.literal_eval(text.strip())
    except (ValueError, SyntaxError) as exc:
        raise ValueError(f"bad matrix literal: {exc}") from exc
    if isinstance(rows, int):
        rows = [[rows]]
    if not isinstance(rows, (list, tuple)) or not rows:
        raise ValueError("matrix literal must be a nonempty list of rows")
    if all(isinstance(r, int) for r in rows):
        rows = [list(rows)]
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix literal")
    return Mat(ring, len(rows), width, tuple(int(v) for r in rows for v in r))


def format_matrix(m: Mat) -> str:
    return "[" + ",".join(
        "[" + ",".join(str(e) for e in m.entries[i * m.cols:(i + 1) * m.cols]) + "]"
        for i in range(m.rows)) + "]"


# -- enumeration ---------------------------------------------------------


def all_mats(ring, rows, cols, allowed=None):
    """All rows x cols matrices in deterministic odometer order."""
    allowed = ring.allowed if allowed is None else np.asarray(allowed)
    cells = rows * cols
    na = len(allowed)
    digits = [0] * cells
    while True:
        yield Mat(ring, rows, cols, tuple(int(allowed[d]) for d in digits))
        pos = cells - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] < na:
                break
            digits[pos] = 0
            pos -= 1
        if pos < 0:
            return


def all_idems(ring, n, allowed=None):
    """All idempotent n x n matrices, via the batch kernel."""
    allowed = ring.allowed if allowed is None else np.asarray(allowed, dtype=np.int64)
    raw = kernels.enumerate_idempotents(ring.add, ring.mul, n, allowed)
    return [Idem(Mat.from_arr(ring, raw[i])) for i in range(raw.shape[0])]


# -- Murray-von Neumann equivalence --------------------------------------


def mvn_equivalent(e: Idem, f: Idem, budget=kernels.DEFAULT_BUDGET) -> Verdict:
    """Decide e = xy, f = yx with witnesses x = exf, y = fye.

    Fast path over prime fields and matrix rings over prime fields: rank
    equality, with witnesses built from rank factorizations and re-verified
    exactly over the ring tables.  Product rings recurse componentwise.
    Everything else runs the exhaustive normalized search (three-valued).
    """
    em, fm = e.base, f.base
    ring = em.ring
    if ring != fm.ring:
        raise ValueError("ring mismatch")

    if ring.flatten_info() is not None:
        E, p = em.flatten()
        F, _ = fm.flatten()
        if gfp.rank(E, p) != gfp.rank(F, p):
            return Verdict(FALSE, note="rank differs over the prime field")
        Pe, Qe, _ = gfp.rank_factor(E, p)
        Pf, Qf, _ = gfp.rank_factor(F, p)
        x = Mat.unflatten(ring, gfp.matmul_mod(Pe, Qf, p))
        y = Mat.unflatten(ring, gfp.matmul_mod(Pf, Qe, p))
        if (x @ y) == em and (y @ x) == fm:
            return Verdict(TRUE, witness=(x, y), note="field fast path")
        raise AssertionError("fast-path MvN witnesses failed re-verification")

    if ring.kind == "product":
        e1, e2 = em.split()
        f1, f2 = fm.split()
        v1 = mvn_equivalent(Idem(e1), Idem(f1), budget)
        if not v1.is_true:
            return v1
        v2 = mvn_equivalent(Idem(e2), Idem(f2), budget)
        if not v2.is_true:
            return v2
        x = Mat.join(ring, v1.witness[0], v2.witness[0])
        y = Mat.join(ring, v1.witness[1], v2.witness[1])
        if (x @ y) == em and (y @ x) == fm:
            return Verdict(TRUE, witness=(x, y), note="componentwise")
        raise AssertionError("componentwise MvN witnesses failed re-verification")

    status, x, y = kernels.search_mvn(ring.add, ring.mul, em.arr, fm.arr,
                                      ring.allowed, budget)
    if status == 1:
        xm, ym = Mat.from_arr(ring, x), Mat.from_arr(ring, y)
        if not ((xm @ ym) == em and (ym @ xm) == fm):
            raise AssertionError("search witnesses failed re-verification")
        return Verdict(TRUE, witness=(xm, ym), note="exhaustive search")
    if status == 0:
        return Verdict(FALSE, note="exhaustive search")
    return Verdict(UNKNOWN, note="budget exceeded")
