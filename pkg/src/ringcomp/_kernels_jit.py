"""Numba-compiled search kernels over finite-ring operation tables.

Every function here works on plain int64 numpy arrays: ``add`` and ``mul``
are the |R| x |R| operation tables of a finite ring whose zero element has
id 0, matrices are 2-D arrays of element ids, and ``allowed`` is the sorted
1-D array of element ids a search may place in witness entries (the whole
ring normally, an ideal's members for non-unital searches).

Enumeration order is the base-|allowed| odometer with the last cell fastest,
so verdicts and first witnesses are deterministic.  Search functions return
a status int: 1 = witness found, 0 = exhausted without witness, -1 = budget
exceeded (caller must report "unknown", never "false").
"""

import numpy as np
from numba import njit


@njit(cache=True)
def matmul(add, mul, a, b):
    """Matrix product over the ring tables; a is (m,k), b is (k,n)."""
    m, k = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), dtype=np.int64)
    for i in range(m):
        for j in range(n):
            acc = 0
            for t in range(k):
                acc = add[acc, mul[a[i, t], b[t, j]]]
            out[i, j] = acc
    return out


@njit(cache=True)
def rank_mod_p(mat, p):
    """Rank of an integer matrix over the prime field F_p."""
    m, n = mat.shape
    a = np.empty((m, n), dtype=np.int64)
    for i in range(m):
        for j in range(n):
            a[i, j] = mat[i, j] % p
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
            for j in range(n):
                tmp = a[row, j]
                a[row, j] = a[piv, j]
                a[piv, j] = tmp
        inv = 1
        for cand in range(1, p):
            if (a[row, col] * cand) % p == 1:
                inv = cand
                break
        for j in range(n):
            a[row, j] = (a[row, j] * inv) % p
        for r in range(m):
            if r != row and a[r, col] != 0:
                f = a[r, col]
                for j in range(n):
                    a[r, j] = (a[r, j] - f * a[row, j]) % p
        row += 1
        rank += 1
        if row == m:
            break
    return rank


@njit(cache=True)
def _next(digits, base):
    """Advance an odometer; returns False on wraparound (enumeration done)."""
    for i in range(digits.shape[0] - 1, -1, -1):
        digits[i] += 1
        if digits[i] < base:
            return True
        digits[i] = 0
    return False


@njit(cache=True)
def search_rbt(add, mul, a, b, allowed, budget):
    """Find r, t with a = r b t; entries of r and t drawn from allowed.

    Enumerates the column set {b v} once (deduplicated, insertion order),
    then scans left factors r; for each r every target column of a must be
    matched by some r (b v).  Budget counts r-times-column-set product
    evaluations.
    """
    m, n = a.shape
    p, q = b.shape
    na = allowed.shape[0]
    empty = np.zeros((0, 0), dtype=np.int64)

    nv = 1
    for _ in range(q):
        nv *= na
    W = np.empty((nv, p), dtype=np.int64)
    Vs = np.empty((nv, q), dtype=np.int64)
    n_w = 0
    digits = np.zeros(q, dtype=np.int64)
    while True:
        # w = b @ v for the current odometer state
        is_new = True
        w = np.zeros(p, dtype=np.int64)
        for i in range(p):
            acc = 0
            for t in range(q):
                acc = add[acc, mul[b[i, t], allowed[digits[t]]]]
            w[i] = acc
        for wi in range(n_w):
            same = True
            for i in range(p):
                if W[wi, i] != w[i]:
                    same = False
                    break
            if same:
                is_new = False
                break
        if is_new:
            for i in range(p):
                W[n_w, i] = w[i]
            for t in range(q):
                Vs[n_w, t] = allowed[digits[t]]
            n_w += 1
        if not _next(digits, na):
            break

    r = np.zeros((m, p), dtype=np.int64)
    prod = np.empty((n_w, m), dtype=np.int64)
    chosen = np.empty(n, dtype=np.int64)
    rdig = np.zeros(m * p, dtype=np.int64)
    evals = 0
    while True:
        evals += n_w
        if evals > budget:
            return -1, empty, empty
        for i in range(m):
            for t in range(p):
                r[i, t] = allowed[rdig[i * p + t]]
        for wi in range(n_w):
            for i in range(m):
                acc = 0
                for t in range(p):
                    acc = add[acc, mul[r[i, t], W[wi, t]]]
                prod[wi, i] = acc
        ok = True
        for j in range(n):
            found = -1
            for wi in range(n_w):
                match = True
                for i in range(m):
                    if prod[wi, i] != a[i, j]:
                        match = False
                        break
                if match:
                    found = wi
                    break
            if found < 0:
                ok = False
                break
            chosen[j] = found
        if ok:
            t_out = np.empty((q, n), dtype=np.int64)
            for j in range(n):
                for t in range(q):
                    t_out[t, j] = Vs[chosen[j], t]
            return 1, r.copy(), t_out
        if not _next(rdig, na):
            break
    return 0, empty, empty


@njit(cache=True)
def search_axa(add, mul, a, allowed, budget):
    """Find x with a = a x a (von Neumann regularity witness)."""
    m, n = a.shape
    na = allowed.shape[0]
    empty = np.zeros((0, 0), dtype=np.int64)
    x = np.zeros((n, m), dtype=np.int64)
    xdig = np.zeros(n * m, dtype=np.int64)
    evals = 0
    while True:
        evals += 1
        if evals > budget:
            return -1, empty
        for i in range(n):
            for j in range(m):
                x[i, j] = allowed[xdig[i * m + j]]
        axa = matmul(add, mul, matmul(add, mul, a, x), a)
        same = True
        for i in range(m):
            for j in range(n):
                if axa[i, j] != a[i, j]:
                    same = False
                    break
            if not same:
                break
        if same:
            return 1, x.copy()
        if not _next(xdig, na):
            break
    return 0, empty


@njit(cache=True)
def search_mvn(add, mul, e, f, allowed, budget):
    """Find x, y with e = x y and f = y x, normalized x = e x f, y = f y e.

    Only fixed points of the normalization are enumerated; any witness pair
    can be normalized into this set, so the restriction stays exhaustive.
    Budget counts (x, y) pairs tried.
    """
    m = e.shape[0]
    n = f.shape[0]
    na = allowed.shape[0]
    empty = np.zeros((0, 0), dtype=np.int64)

    ny_total = 1
    for _ in range(n * m):
        ny_total *= na
    Ys = np.empty((ny_total, n, m), dtype=np.int64)
    n_y = 0
    ydig = np.zeros(n * m, dtype=np.int64)
    y = np.zeros((n, m), dtype=np.int64)
    while True:
        for i in range(n):
            for j in range(m):
                y[i, j] = allowed[ydig[i * m + j]]
        fye = matmul(add, mul, matmul(add, mul, f, y), e)
        fixed = True
        for i in range(n):
            for j in range(m):
                if fye[i, j] != y[i, j]:
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            for i in range(n):
                for j in range(m):
                    Ys[n_y, i, j] = y[i, j]
            n_y += 1
        if not _next(ydig, na):
            break

    xdig = np.zeros(m * n, dtype=np.int64)
    x = np.zeros((m, n), dtype=np.int64)
    evals = 0
    while True:
        for i in range(m):
            for j in range(n):
                x[i, j] = allowed[xdig[i * n + j]]
        exf = matmul(add, mul, matmul(add, mul, e, x), f)
        fixed = True
        for i in range(m):
            for j in range(n):
                if exf[i, j] != x[i, j]:
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            for yi in range(n_y):
                evals += 1
                if evals > budget:
                    return -1, empty, empty
                xy = matmul(add, mul, x, Ys[yi])
                good = True
                for i in range(m):
                    for j in range(m):
                        if xy[i, j] != e[i, j]:
                            good = False
                            break
                    if not good:
                        break
                if good:
                    yx = matmul(add, mul, Ys[yi], x)
                    for i in range(n):
                        for j in range(n):
                            if yx[i, j] != f[i, j]:
                                good = False
                                break
                        if not good:
                            break
                if good:
                    return 1, x.copy(), Ys[yi].copy()
        if not _next(xdig, na):
            break
    return 0, empty, empty


@njit(cache=True)
def search_bac(add, mul, a, allowed, budget):
    """Find b (m x m), c (n x n) with a = b a c for a of shape (m, n)."""
    m, n = a.shape
    na = allowed.shape[0]
    empty = np.zeros((0, 0), dtype=np.int64)
    b = np.zeros((m, m), dtype=np.int64)
    c = np.zeros((n, n), dtype=np.int64)
    bdig = np.zeros(m * m, dtype=np.int64)
    evals = 0
    while True:
        for i in range(m):
            for j in range(m):
                b[i, j] = allowed[bdig[i * m + j]]
        ba = matmul(add, mul, b, a)
        cdig = np.zeros(n * n, dtype=np.int64)
        while True:
            evals += 1
            if evals > budget:
                return -1, empty, empty
            for i in range(n):
                for j in range(n):
                    c[i, j] = allowed[cdig[i * n + j]]
            bac = matmul(add, mul, ba, c)
            same = True
            for i in range(m):
                for j in range(n):
                    if bac[i, j] != a[i, j]:
                        same = False
                        break
                if not same:
                    break
            if same:
                return 1, b.copy(), c.copy()
            if not _next(cdig, na):
                break
        if not _next(bdig, na):
            break
    return 0, empty, empty


@njit(cache=True)
def enumerate_idempotents(add, mul, size, allowed):
    """All idempotent size x size matrices with entries in allowed."""
    na = allowed.shape[0]
    total = 1
    for _ in range(size * size):
        total *= na
    out = np.empty((total, size, size), dtype=np.int64)
    count = 0
    dig = np.zeros(size * size, dtype=np.int64)
    m = np.zeros((size, size), dtype=np.int64)
    while True:
        for i in range(size):
            for j in range(size):
                m[i, j] = allowed[dig[i * size + j]]
        mm = matmul(add, mul, m, m)
        same = True
        for i in range(size):
            for j in range(size):
                if mm[i, j] != m[i, j]:
                    same = False
                    break
            if not same:
                break
        if same:
            for i in range(size):
                for j in range(size):
                    out[count, i, j] = m[i, j]
            count += 1
        if not _next(dig, na):
            break
    return out[:count]
