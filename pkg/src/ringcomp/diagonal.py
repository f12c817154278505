"""Elementary-matrix diagonalization over the chain rings Z/p^k.

Every square matrix over Z/p^k becomes diagonal under row and column
elementary operations: pick a pivot of minimal p-valuation (a unit entry is
exactly the valuation-0 fast case), absorb its row and column — possible
because the pivot divides every remaining entry — and recurse on the
complement.  The certificate stores the elementary-operation lists and
re-verifies U A V = D by multiplication.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .matrices import Mat, identity
from .rings import FiniteRing, RingError


def chain_ring_data(ring: FiniteRing):
    """(p, k) with |ring| = p^k when the ring is Z/p^k, else None."""
    if ring.kind not in ("zmod", "gf"):
        return None
    n = ring.size
    p = None
    for d in range(2, n + 1):
        if n % d == 0:
            p = d
            break
    k = 0
    m = n
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        return None
    return p, k


def valuation(e: int, p: int, k: int) -> int:
    """p-adic valuation in Z/p^k, with val(0) = k."""
    if e % p**k == 0:
        return k
    v = 0
    while e % p == 0:
        e //= p
        v += 1
    return v


@dataclass
class DiagCertificate:
    """U A V = D with U, V products of the recorded elementary operations."""

    ring: FiniteRing
    A: Mat
    D: Mat
    U: Mat
    V: Mat
    u_ops: list = field(default_factory=list)
    v_ops: list = field(default_factory=list)

    def verify(self) -> bool:
        if (self.U @ self.A @ self.V) != self.D:
            return False
        n = self.A.rows
        u_inv = _ops_to_matrix(self.ring, n, _invert_ops(self.u_ops), row_side=True)
        v_inv = _ops_to_matrix(self.ring, n, _invert_ops(self.v_ops), row_side=False)
        eye = identity(self.ring, n)
        return (self.U @ u_inv) == eye and (v_inv @ self.V) == eye

    def inverse_factors(self):
        """(U^-1, V^-1), rebuilt from the inverted elementary-operation lists."""
        n = self.A.rows
        u_inv = _ops_to_matrix(self.ring, n, _invert_ops(self.u_ops),
                               row_side=True)
        v_inv = _ops_to_matrix(self.ring, n, _invert_ops(self.v_ops),
                               row_side=False)
        return u_inv, v_inv


def _invert_ops(ops):
    """Inverse operation list: reversed order, negated transvection scalars."""
    out = []
    for op in reversed(ops):
        if op[0] in ("swap_rows", "swap_cols"):
            out.append(op)
        else:
            kind, i, j, s = op
            out.append((kind, i, j, -s))
    return out


def _apply_row_op(ring, a, op):
    n = ring.size
    if op[0] == "swap_rows":
        _, i, j = op
        a[[i, j]] = a[[j, i]]
    else:
        _, i, j, s = op  # row_i += s * row_j
        a[i] = (a[i] + (s % n) * a[j]) % n
    return a


def _apply_col_op(ring, a, op):
    n = ring.size
    if op[0] == "swap_cols":
        _, i, j = op
        a[:, [i, j]] = a[:, [j, i]]
    else:
        _, i, j, s = op  # col_i += col_j * s
        a[:, i] = (a[:, i] + a[:, j] * (s % n)) % n
    return a


def _ops_to_matrix(ring, size, ops, row_side):
    a = np.zeros((size, size), dtype=np.int64)
    np.fill_diagonal(a, ring.one)
    for op in ops:
        a = _apply_row_op(ring, a, op) if row_side else _apply_col_op(ring, a, op)
    return Mat.from_arr(ring, a)


def diagonalize(A: Mat, seed=None) -> DiagCertificate:
    """Diagonalize a square matrix over Z/p^k by elementary operations.

    Pivots are entries of minimal p-valuation; ties break at the lowest
    (row, col) position, or by a seeded random choice among the tied
    positions when a seed is given (the diagonal's valuation multiset is
    invariant either way).
    """
    ring = A.ring
    data = chain_ring_data(ring)
    if data is None:
        raise RingError("diagonalize requires the chain ring Z/p^k")
    p, k = data
    if A.rows != A.cols:
        raise ValueError("diagonalize requires a square matrix")
    n_mod = ring.size
    size = A.rows
    rng = random.Random(seed) if seed is not None else None

    a = A.arr % n_mod
    u_ops: list = []
    v_ops: list = []

    for step in range(size):
        sub = a[step:, step:]
        vals = np.vectorize(lambda e: valuation(int(e), p, k))(sub)
        best = int(vals.min())
        if best >= k:
            break  # remaining block is zero
        ties = [(int(i) + step, int(j) + step)
                for i, j in zip(*np.where(vals == best))]
        pi, pj = ties[0] if rng is None else rng.choice(ties)
        if pi != step:
            op = ("swap_rows", step, pi)
            u_ops.append(op)
            a = _apply_row_op(ring, a, op)
        if pj != step:
            op = ("swap_cols", step, pj)
            v_ops.append(op)
            a = _apply_col_op(ring, a, op)
        d = int(a[step, step])
        v = valuation(d, p, k)
        unit = d // p**v
        unit_inv = pow(unit, -1, p ** (k - v))
        for i in range(step + 1, size):
            e = int(a[i, step])
            if e == 0:
                continue
            q = ((e // p**v) * unit_inv) % p ** (k - v)
            op = ("add_row", i, step, (-q) % n_mod)
            u_ops.append(op)
            a = _apply_row_op(ring, a, op)
        for j in range(step + 1, size):
            e = int(a[step, j])
            if e == 0:
                continue
            q = ((e // p**v) * unit_inv) % p ** (k - v)
            op = ("add_col", j, step, (-q) % n_mod)
            v_ops.append(op)
            a = _apply_col_op(ring, a, op)

    D = Mat.from_arr(ring, a)
    U = _ops_to_matrix(ring, size, u_ops, row_side=True)
    V = _ops_to_matrix(ring, size, v_ops, row_side=False)
    cert = DiagCertificate(ring, A, D, U, V, u_ops, v_ops)
    if not cert.verify():
        raise AssertionError("diagonalization certificate failed verification")
    return cert


def valuation_multiset(A: Mat, seed=None):
    """Sorted p-valuations of the diagonal after diagonalization (zeros as k)."""
    ring = A.ring
    p, k = chain_ring_data(ring)
    if A.rows == A.cols and _is_diagonal(A):
        diag = [int(A.arr[i, i]) for i in range(A.rows)]
    else:
        side = max(A.rows, A.cols)
        padded = np.zeros((side, side), dtype=np.int64)
        padded[:A.rows, :A.cols] = A.arr
        cert = diagonalize(Mat.from_arr(ring, padded), seed=seed)
        diag = [int(cert.D.arr[i, i]) for i in range(side)]
    return tuple(sorted(valuation(e, p, k) for e in diag))


def _is_diagonal(A: Mat) -> bool:
    a = A.arr
    return not (a - np.diag(np.diag(a))).any()


def psi_rank(A: Mat, seed=None):
    """(r, s): number of unit and of nonzero non-unit diagonal entries."""
    ring = A.ring
    p, k = chain_ring_data(ring)
    vals = valuation_multiset(A, seed=seed)
    r = sum(1 for v in vals if v == 0)
    s = sum(1 for v in vals if 0 < v < k)
    return r, s
