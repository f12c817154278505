"""Pure-numpy fallback for the search kernels.

Same contracts, enumeration order, and budget accounting as the numba
implementation in ``_kernels_jit``; candidate enumeration is vectorized in
chunks instead of compiled loops.  Selected by setting RINGCOMP_NO_NUMBA=1.
"""

import numpy as np

_CHUNK_CELLS = 1 << 20  # soft cap on candidates held in memory per batch

_EMPTY = np.zeros((0, 0), dtype=np.int64)


def matmul(add, mul, a, b):
    """Matrix product over the ring tables; a is (m,k), b is (k,n)."""
    k = a.shape[1]
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for t in range(k):
        out = add[out, mul[a[:, t][:, None], b[t, :][None, :]]]
    return out


def _batch_matmul(add, mul, a, b):
    """Product of a batch of matrices (N,m,k) with one matrix (k,n)."""
    k = b.shape[0]
    out = np.zeros((a.shape[0], a.shape[1], b.shape[1]), dtype=np.int64)
    for t in range(k):
        out = add[out, mul[a[:, :, t][:, :, None], b[t, :][None, None, :]]]
    return out


def _batch_rmatmul(add, mul, a, b):
    """Product of one matrix (m,k) with a batch (N,k,n)."""
    k = a.shape[1]
    out = np.zeros((b.shape[0], a.shape[0], b.shape[2]), dtype=np.int64)
    for t in range(k):
        out = add[out, mul[a[:, t][None, :, None], b[:, t, :][:, None, :]]]
    return out


def rank_mod_p(mat, p):
    """Rank of an integer matrix over the prime field F_p."""
    a = np.asarray(mat, dtype=np.int64) % p
    m, n = a.shape
    rank = 0
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
        inv = pow(int(a[row, col]), -1, p)
        a[row] = (a[row] * inv) % p
        mask = a[:, col] != 0
        mask[row] = False
        a[mask] = (a[mask] - np.outer(a[mask, col], a[row])) % p
        row += 1
        rank += 1
        if row == m:
            break
    return rank


def _candidates(allowed, cells, start, count):
    """Odometer states start..start+count-1 mapped through allowed.

    Matches the jit odometer: cell 0 is the most significant digit.
    """
    na = len(allowed)
    idx = np.arange(start, start + count, dtype=np.int64)
    digits = np.empty((count, cells), dtype=np.int64)
    for c in range(cells):
        power = na ** (cells - 1 - c)
        digits[:, c] = (idx // power) % na
    return allowed[digits]


def _column_set(add, mul, b, allowed):
    """Deduplicated {b v : v over allowed}, in first-occurrence order."""
    p, q = b.shape
    na = len(allowed)
    V = _candidates(allowed, q, 0, na**q)
    W = np.zeros((len(V), p), dtype=np.int64)
    for t in range(q):
        W = add[W, mul[b[:, t][None, :], V[:, t][:, None]]]
    _, first = np.unique(W, axis=0, return_index=True)
    order = np.sort(first)
    return W[order], V[order]


def search_rbt(add, mul, a, b, allowed, budget):
    """Find r, t with a = r b t; entries of r and t drawn from allowed."""
    m, n = a.shape
    q = b.shape[1]
    allowed = np.asarray(allowed, dtype=np.int64)
    na = len(allowed)
    W, Vs = _column_set(add, mul, b, allowed)
    n_w = len(W)

    cells = m * b.shape[0]
    total = na**cells
    # mirror the jit budget: each left factor costs n_w evaluations
    max_r = min(total, budget // n_w)
    chunk = max(1, _CHUNK_CELLS // max(1, n_w * m))
    done = 0
    while done < max_r:
        cnt = min(chunk, max_r - done)
        R = _candidates(allowed, cells, done, cnt).reshape(cnt, m, b.shape[0])
        # prod[c, wi, i] = (R[c] @ W[wi])[i]
        prod = np.zeros((cnt, n_w, m), dtype=np.int64)
        for t in range(b.shape[0]):
            prod = add[prod, mul[R[:, :, t][:, None, :], W[:, t][None, :, None]]]
        comp = (prod[:, :, :, None] == a[None, None, :, :]).all(axis=2)
        ok = comp.any(axis=1).all(axis=1)
        hits = np.flatnonzero(ok)
        if len(hits):
            c = int(hits[0])
            chosen = comp[c].argmax(axis=0)  # first matching column-set index
            t_out = Vs[chosen].T.copy()
            return 1, R[c].copy(), t_out
        done += cnt
    if max_r < total:
        return -1, _EMPTY, _EMPTY
    return 0, _EMPTY, _EMPTY


def search_axa(add, mul, a, allowed, budget):
    """Find x with a = a x a (von Neumann regularity witness)."""
    m, n = a.shape
    allowed = np.asarray(allowed, dtype=np.int64)
    total = len(allowed) ** (n * m)
    max_x = min(total, budget)
    chunk = max(1, _CHUNK_CELLS // max(1, n * m))
    done = 0
    while done < max_x:
        cnt = min(chunk, max_x - done)
        X = _candidates(allowed, n * m, done, cnt).reshape(cnt, n, m)
        axa = _batch_matmul(add, mul, _batch_rmatmul(add, mul, a, X), a)
        ok = (axa == a[None, :, :]).all(axis=(1, 2))
        hits = np.flatnonzero(ok)
        if len(hits):
            return 1, X[int(hits[0])].copy()
        done += cnt
    if max_x < total:
        return -1, _EMPTY
    return 0, _EMPTY


def _fixed_points(add, mul, left, right, rows, cols, allowed):
    """Candidates z with z = left z right, in enumeration order."""
    na = len(allowed)
    total = na ** (rows * cols)
    chunk = max(1, _CHUNK_CELLS // max(1, rows * cols))
    keep = []
    done = 0
    while done < total:
        cnt = min(chunk, total - done)
        Z = _candidates(allowed, rows * cols, done, cnt).reshape(cnt, rows, cols)
        proj = _batch_matmul(add, mul, _batch_rmatmul(add, mul, left, Z), right)
        ok = (proj == Z).all(axis=(1, 2))
        if ok.any():
            keep.append(Z[ok])
        done += cnt
    if keep:
        return np.concatenate(keep, axis=0)
    return np.zeros((0, rows, cols), dtype=np.int64)


def search_mvn(add, mul, e, f, allowed, budget):
    """Find x, y with e = x y, f = y x, normalized x = e x f, y = f y e."""
    m = e.shape[0]
    n = f.shape[0]
    allowed = np.asarray(allowed, dtype=np.int64)
    Ys = _fixed_points(add, mul, f, e, n, m, allowed)
    Xs = _fixed_points(add, mul, e, f, m, n, allowed)
    n_y = len(Ys)
    evals = 0
    for x in Xs:
        if evals + n_y > budget:
            # scan only the pairs the budget still covers, as the jit does
            limit = budget - evals
        else:
            limit = n_y
        xy = _batch_rmatmul(add, mul, x, Ys[:limit])
        ok = (xy == e[None, :, :]).all(axis=(1, 2))
        for yi in np.flatnonzero(ok):
            yx = matmul(add, mul, Ys[yi], x)
            if (yx == f).all():
                return 1, x.copy(), Ys[yi].copy()
        evals += limit
        if limit < n_y:
            return -1, _EMPTY, _EMPTY
    return 0, _EMPTY, _EMPTY


def search_bac(add, mul, a, allowed, budget):
    """Find b (m x m), c (n x n) with a = b a c for a of shape (m, n)."""
    m, n = a.shape
    allowed = np.asarray(allowed, dtype=np.int64)
    na = len(allowed)
    total = na ** (n * n)
    total_b = na ** (m * m)
    Cs = _candidates(allowed, n * n, 0, total).reshape(total, n, n)
    evals = 0
    for bi in range(total_b):
        bmat = _candidates(allowed, m * m, bi, 1).reshape(m, m)
        ba = matmul(add, mul, bmat, a)
        limit = total if evals + total <= budget else budget - evals
        bac = _batch_rmatmul(add, mul, ba, Cs[:limit])
        ok = (bac == a[None, :, :]).all(axis=(1, 2))
        hits = np.flatnonzero(ok)
        if len(hits):
            return 1, bmat.copy(), Cs[int(hits[0])].copy()
        evals += limit
        if limit < total:
            return -1, _EMPTY, _EMPTY
    return 0, _EMPTY, _EMPTY


def enumerate_idempotents(add, mul, size, allowed):
    """All idempotent size x size matrices with entries in allowed."""
    allowed = np.asarray(allowed, dtype=np.int64)
    total = len(allowed) ** (size * size)
    chunk = max(1, _CHUNK_CELLS // max(1, size * size))
    keep = []
    done = 0
    while done < total:
        cnt = min(chunk, total - done)
        M = _candidates(allowed, size * size, done, cnt).reshape(cnt, size, size)
        sq = np.zeros_like(M)
        for t in range(size):
            sq = add[sq, mul[M[:, :, t][:, :, None], M[:, t, :][:, None, :]]]
        ok = (sq == M).all(axis=(1, 2))
        if ok.any():
            keep.append(M[ok])
        done += cnt
    if keep:
        return np.concatenate(keep, axis=0)
    return np.zeros((0, size, size), dtype=np.int64)
