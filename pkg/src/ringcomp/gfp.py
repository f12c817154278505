"""Exact linear algebra over prime fields F_p on plain int arrays.

Used by the field fast paths: rank factorizations provide constructive
witnesses (one-sided inverses) that the callers re-verify by exact
multiplication over the ring tables.
"""

from __future__ import annotations

import numpy as np


def rref(mat, p):
    """Reduced row echelon form mod p; returns (R, pivot column list)."""
    a = np.asarray(mat, dtype=np.int64) % p
    m, n = a.shape
    pivots = []
    row = 0
    for col in range(n):
        piv = -1
        for r in range(row, m):
            if a[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        a[row] = (a[row] * pow(int(a[row, col]), -1, p)) % p
        for r in range(m):
            if r != row and a[r, col] != 0:
                a[r] = (a[r] - a[r, col] * a[row]) % p
        pivots.append(col)
        row += 1
        if row == m:
            break
    return a, pivots


def rank(mat, p):
    return len(rref(mat, p)[1])


def rank_factor(mat, p):
    """Factor mat = P @ Q mod p with P (m x r) and Q (r x n) of full rank r.

    P is mat restricted to its pivot columns, Q the nonzero rows of the
    reduced row echelon form; Q restricted to the pivot columns is I_r.
    """
    a = np.asarray(mat, dtype=np.int64) % p
    R, pivots = rref(a, p)
    r = len(pivots)
    P = a[:, pivots].copy()
    Q = R[:r].copy()
    return P, Q, pivots


def right_inverse_from_pivots(pivots, n):
    """Selector S (n x r) with Q @ S = I_r for Q from rank_factor."""
    r = len(pivots)
    S = np.zeros((n, r), dtype=np.int64)
    for i, c in enumerate(pivots):
        S[c, i] = 1
    return S


def left_inverse(P, p):
    """L (r x m) with L @ P = I_r, for P of full column rank r mod p."""
    m, r = P.shape
    aug = np.concatenate([P % p, np.eye(m, dtype=np.int64)], axis=1)
    R, pivots = rref(aug, p)
    if pivots[:r] != list(range(r)):
        raise ValueError("matrix does not have full column rank")
    return R[:r, r:].copy()


def matmul_mod(a, b, p):
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p
