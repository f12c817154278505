"""The sequence semigroup S(R) and its projective-module bridge.

Elements are finite truncations of sequences (x_1, x_2, ...) of matrices
with x_i of shape n_{i+1} x n_i and stored witnesses y_{i+1} satisfying
y_{i+1} x_{i+1} x_i = x_i.  The module implements validation, the order,
stagewise sums, the diagonal supremum construction, compactness via the
z = s z^2 criterion, both directions of the bridge to column-finite
idempotent matrices (explicit column formula and corner extraction), the
splitting identity behind projectivity, and transport along ring
homomorphisms.  Every constructed object re-validates before being
returned; witnesses are stored, never re-derived silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from . import _kernels_np as knp
from .common import FALSE, TRUE, UNKNOWN, Verdict
from .matrices import Idem, Mat, diag_sum, identity, zero
from .rings import FiniteRing, RingHom
from .subequiv import precsim1

STABILIZED = "stabilized"
OPEN = "open"


# -- search helpers ------------------------------------------------------

_CHUNK = 1 << 12


def _allowed_ids(ring, allowed):
    if allowed is not None:
        return np.asarray(allowed, dtype=np.int64)
    return ring.allowed


def _search_left(ring, b: Mat, a: Mat, budget, allowed=None):
    """First y (in enumeration order) with y @ b == a, or None.

    Returns (status, y) with status 1 found / 0 exhausted / -1 budget.
    """
    ids = _allowed_ids(ring, allowed)
    rows, mid = a.rows, b.rows
    cells = rows * mid
    total = len(ids) ** cells
    barr = b.arr
    scan = min(total, budget)
    done = 0
    while done < scan:
        cnt = min(_CHUNK, scan - done)
        Y = knp._candidates(ids, cells, done, cnt).reshape(cnt, rows, mid)
        prod = knp._batch_matmul(ring.add, ring.mul, Y, barr)
        hits = np.flatnonzero((prod == a.arr[None]).all(axis=(1, 2)))
        if len(hits):
            return 1, Mat.from_arr(ring, Y[int(hits[0])])
        done += cnt
    return (-1 if scan < total else 0), None


def _search_pair(ring, x: Mat, budget, allowed=None):
    """First (s1, s2) with s2 @ x @ s1 @ x == x for square x, or None.

    The budget counts (s1, s2) pairs; status as in _search_left.
    """
    ids = _allowed_ids(ring, allowed)
    s = x.rows
    cells = s * s
    total = len(ids) ** cells
    xarr = x.arr
    pairs = 0
    done1 = 0
    while done1 < total:
        cnt1 = min(_CHUNK, total - done1)
        S1 = knp._candidates(ids, cells, done1, cnt1).reshape(cnt1, s, s)
        U = knp._batch_matmul(
            ring.add, ring.mul,
            knp._batch_rmatmul(ring.add, ring.mul, xarr, S1), xarr)
        for k in range(cnt1):
            u = U[k]
            limit = min(total, budget - pairs)
            if limit <= 0:
                return -1, None, None
            done2 = 0
            while done2 < limit:
                cnt2 = min(_CHUNK, limit - done2)
                S2 = knp._candidates(ids, cells, done2, cnt2) \
                    .reshape(cnt2, s, s)
                prod = knp._batch_matmul(ring.add, ring.mul, S2, u)
                hits = np.flatnonzero((prod == xarr[None]).all(axis=(1, 2)))
                if len(hits):
                    return (1, Mat.from_arr(ring, S1[k]),
                            Mat.from_arr(ring, S2[int(hits[0])]))
                done2 += cnt2
            pairs += limit
            if limit < total:
                return -1, None, None
        done1 += cnt1
    return 0, None, None


def _pad_square(m: Mat) -> Mat:
    """Zero-pad to the max(rows, cols) square, as an element of M_inf."""
    s = max(m.rows, m.cols)
    a = np.zeros((s, s), dtype=np.int64)
    a[:m.rows, :m.cols] = m.arr
    return Mat.from_arr(m.ring, a)


# -- sequence elements ---------------------------------------------------


@dataclass(frozen=True)
class SeqElem:
    """A finite truncation of an element of S(R).

    stages holds x_1..x_N with x_i of shape n_{i+1} x n_i; witnesses holds
    y_2..y_N with y_{i+1} of shape n_{i+1} x n_{i+2}.  tail "stabilized"
    asserts constant continuation by the square padding of x_N (legality
    is part of validation); tail "open" stores the truncation only.
    """

    ring: FiniteRing
    stages: tuple
    witnesses: tuple
    tail: str = STABILIZED

    def __post_init__(self):
        if self.tail not in (STABILIZED, OPEN):
            raise ValueError(f"unknown tail mode {self.tail!r}")
        if len(self.witnesses) != max(0, len(self.stages) - 1):
            raise ValueError("need exactly one witness per consecutive pair")

    @property
    def n_stages(self):
        return len(self.stages)

    def is_zero(self):
        return all(s.is_zero() for s in self.stages)


def validate_seq(s: SeqElem, budget=kernels.DEFAULT_BUDGET,
                 allowed=None) -> Verdict:
    """Check shape chaining, all witness equations, and tail legality."""
    problems = []
    xs = s.stages
    for i in range(len(xs) - 1):
        if xs[i + 1].cols != xs[i].rows:
            problems.append(f"stage {i + 2} has {xs[i + 1].cols} columns, "
                            f"expected {xs[i].rows}")
    for i, y in enumerate(s.witnesses):
        if (y.rows, y.cols) != (xs[i].rows, xs[i + 1].rows):
            problems.append(f"witness {i + 2} has shape {(y.rows, y.cols)}, "
                            f"expected {(xs[i].rows, xs[i + 1].rows)}")
    if problems:
        return Verdict(FALSE, note="; ".join(problems))
    for i, y in enumerate(s.witnesses):
        if (y @ xs[i + 1]) @ xs[i] != xs[i]:
            problems.append(f"witness equation fails at stage {i + 1}")
    if s.tail == STABILIZED:
        z = _pad_square(xs[-1])
        status, y = _search_left(s.ring, z @ z, z, budget, allowed)
        if status == -1:
            return Verdict(UNKNOWN, note="tail witness search hit the budget")
        if status == 0:
            problems.append("no witness for the constant continuation "
                            "(y z z = z has no solution)")
    if problems:
        return Verdict(FALSE, note="; ".join(problems))
    return Verdict(TRUE)


def constant_seq(e: Mat, n_stages=2, tail=STABILIZED) -> SeqElem:
    """The constant sequence of an idempotent (witnesses are e itself)."""
    if e.rows != e.cols or e @ e != e:
        raise ValueError("constant sequences require a square idempotent")
    return SeqElem(e.ring, (e,) * n_stages, (e,) * (n_stages - 1), tail)


def zero_seq(ring, n_stages=2) -> SeqElem:
    z = zero(ring, 1, 1)
    return SeqElem(ring, (z,) * n_stages, (z,) * (n_stages - 1), STABILIZED)


def _extend(s: SeqElem, length: int,
            budget=kernels.DEFAULT_BUDGET, allowed=None) -> SeqElem:
    """Extension to `length` stages by the stabilized constant tail.

    The last stage is zero-padded to its square form z, earlier witnesses
    gain zero columns as needed, and the appended steps use a witness y
    with y z z = z.  The class in S(R) is unchanged: padding by zero rows
    and columns is the identification of a matrix with its image in M_inf.
    """
    if length <= s.n_stages:
        return s
    if s.tail != STABILIZED:
        raise ValueError("cannot extend an open-tail truncation")
    xs = list(s.stages)
    ys = list(s.witnesses)
    last = xs[-1]
    z = _pad_square(last)
    status, yz = _search_left(s.ring, z @ z, z, budget, allowed)
    if status != 1:
        raise ValueError("stabilized tail has no continuation witness")
    if z.rows != last.rows:
        # pad the last stage's rows (and the witness pointing at it)
        pad = np.zeros((z.rows, last.cols), dtype=np.int64)
        pad[:last.rows] = last.arr
        xs[-1] = Mat.from_arr(s.ring, pad)
        if ys:
            y = ys[-1]
            wide = np.zeros((y.rows, z.rows), dtype=np.int64)
            wide[:, :y.cols] = y.arr
            ys[-1] = Mat.from_arr(s.ring, wide)
    while len(xs) < length:
        xs.append(z)
        ys.append(yz)
    out = SeqElem(s.ring, tuple(xs), tuple(ys), STABILIZED)
    v = validate_seq(out, budget, allowed)
    if not v.is_true:
        raise AssertionError(f"tail extension failed to validate: {v.note}")
    return out


# -- order, sum, supremum ------------------------------------------------


def seq_leq(a: SeqElem, b: SeqElem, budget=kernels.DEFAULT_BUDGET,
            allowed=None) -> Verdict:
    """a <= b: every stage of a is subequivalent to some stage of b.

    Stabilized tails add nothing beyond the stored stages (they repeat the
    last one); open tails make the verdict stage-relative, which is noted.
    """
    notes = []
    if OPEN in (a.tail, b.tail):
        notes.append("stage-relative: an input has an open tail")
    witness = []
    sawunknown = False
    for n, x in enumerate(a.stages):
        found = None
        for m in range(b.n_stages - 1, -1, -1):
            v = precsim1(x, b.stages[m], budget, allowed=allowed)
            if v.is_true:
                found = (n, m, v.witness)
                break
            if v.is_unknown:
                sawunknown = True
        if found is None:
            if sawunknown:
                return Verdict(UNKNOWN, note="; ".join(
                    notes + [f"stage {n + 1} undecided within budget"]))
            return Verdict(FALSE, note="; ".join(
                notes + [f"stage {n + 1} exceeds every stage of b"]))
        witness.append(found)
    return Verdict(TRUE, witness=witness, note="; ".join(notes))


def seq_sum(a: SeqElem, b: SeqElem, budget=kernels.DEFAULT_BUDGET,
            allowed=None) -> SeqElem:
    """Stagewise diagonal sum; the shorter input is padded by its tail."""
    if a.ring != b.ring:
        raise ValueError("summands live over different rings")
    n = max(a.n_stages, b.n_stages)
    a = _extend(a, n, budget, allowed)
    b = _extend(b, n, budget, allowed)
    xs = tuple(diag_sum(x, y) for x, y in zip(a.stages, b.stages))
    ys = tuple(diag_sum(x, y) for x, y in zip(a.witnesses, b.witnesses))
    tail = STABILIZED if STABILIZED == a.tail == b.tail else OPEN
    out = SeqElem(a.ring, xs, ys, tail)
    v = validate_seq(out, budget, allowed)
    if not v.is_true:
        raise AssertionError(f"sum failed to validate: {v.note}")
    return out


def seq_sup(chain, budget=kernels.DEFAULT_BUDGET, allowed=None) -> SeqElem:
    """Supremum of an increasing chain by the diagonal construction.

    With members x^(1) <= ... <= x^(N), the diagonal stage u_n is
    x_n^(n) b_n, where a_{n+1}, b_{n+1} witness the stagewise relation
    x_{n+1}^(n) = a_{n+1} x_{n+1}^(n+1) b_{n+1}; the new witnesses are
    y_{n+1}^(n) a_{n+1}, so u_n = (y_{n+1}^(n) a_{n+1}) u_{n+1} u_n.
    Missing stagewise witnesses abort.  The result re-validates.
    """
    if not chain:
        raise ValueError("empty chain")
    if len(chain) == 1 or all(c == chain[0] for c in chain):
        return chain[-1]
    n_chain = len(chain)
    # one extra diagonal stage so the last member's tail is dominated;
    # beyond the chain the sequence continues with its last member
    n_diag = n_chain + 1
    members = [_extend(c, n_diag + 1, budget, allowed) for c in chain]

    def member(k):                          # chain member k, 1-indexed
        return members[min(k, n_chain) - 1]

    a_wit = [None]  # a_{n+1}, b_{n+1} for n = 1..n_diag-1
    b_wit = [None]
    for n in range(1, n_diag):
        lo = member(n).stages[n]            # x_{n+1}^(n)
        hi = member(n + 1).stages[n]        # x_{n+1}^(n+1)
        v = precsim1(lo, hi, budget, allowed=allowed)
        if not v.is_true:
            raise ValueError(
                f"no stagewise witness between members {n} and {n + 1}")
        a_wit.append(v.witness.r)
        b_wit.append(v.witness.t)

    stages = []
    wits = []
    for n in range(1, n_diag + 1):
        xnn = member(n).stages[n - 1]       # x_n^(n)
        if n == 1:
            stages.append(xnn)
        else:
            stages.append(xnn @ b_wit[n - 1])
        if n < n_diag:
            ynn = member(n).witnesses[n - 1]        # y_{n+1}^(n)
            wits.append(ynn @ a_wit[n])
    out = SeqElem(chain[0].ring, tuple(stages), tuple(wits), OPEN)
    v = validate_seq(out, budget, allowed)
    if not v.is_true:
        raise AssertionError(f"supremum failed to validate: {v.note}")
    return out


# -- compact elements ----------------------------------------------------


@dataclass
class CompactWitness:
    z: Mat
    s: Mat
    note: str = ""


def is_compact_seq(seq: SeqElem, search_bound=2,
                   budget=kernels.DEFAULT_BUDGET, allowed=None) -> Verdict:
    """Three-valued compactness test with a (z, s) certificate on success.

    An element is compact iff it equals some [(z)] with z = s z^2.  The
    test follows the constructive recipe: find a dominant stage x0 (every
    stage subequivalent to it), factor x0 = s2 x0 s1 x0, and set
    z = x0 s1, s = s2.  Constant idempotents short-circuit to z = s = e.
    If the recipe fails, an exhaustive search over z of size up to
    search_bound runs; "false" verdicts are relative to that bound.
    """
    ring = seq.ring
    if seq.is_zero():
        z = zero(ring, 1, 1)
        return Verdict(TRUE, witness=CompactWitness(z, z, "zero sequence"))
    first = seq.stages[0]
    if all(s == first for s in seq.stages) and first.rows == first.cols \
            and first @ first == first:
        return Verdict(TRUE, witness=CompactWitness(first, first,
                                                 "constant idempotent"))

    # a dominant stage: every stage subequivalent to it
    unknown = False
    x0 = None
    for m in range(seq.n_stages - 1, -1, -1):
        cand = seq.stages[m]
        ok = True
        for x in seq.stages:
            v = precsim1(x, cand, budget, allowed=allowed)
            if v.is_unknown:
                unknown = True
            if not v.is_true:
                ok = False
                break
        if ok:
            x0 = _pad_square(cand)
            break
    if x0 is not None:
        status, s1, s2 = _search_pair(ring, x0, budget, allowed)
        if status == 1:
            z = x0 @ s1
            assert s2 @ (z @ z) == z  # z = s z^2 by construction
            return Verdict(TRUE, witness=CompactWitness(z, s2, "recipe z=x0*s1"))
        if status == -1:
            unknown = True

    # exhaustive fallback: z = s z^2 with [(z)] equivalent to the input
    from .matrices import all_mats

    for size in range(1, search_bound + 1):
        for z in all_mats(ring, size, size):
            status, s = _search_left(ring, z @ z, z, budget, allowed)
            if status == -1:
                unknown = True
                continue
            if status == 0:
                continue
            # s itself witnesses the constant sequence: s z z = z
            cz = SeqElem(ring, (z, z), (s,), STABILIZED)
            v1 = seq_leq(seq, cz, budget, allowed)
            v2 = seq_leq(cz, seq, budget, allowed)
            if v1.is_true and v2.is_true:
                return Verdict(TRUE, witness=CompactWitness(
                    z, s, f"exhaustive at size {size}"))
            if v1.is_unknown or v2.is_unknown:
                unknown = True
    if unknown:
        return Verdict(UNKNOWN, note="searches hit the budget")
    return Verdict(FALSE, note=f"no witness up to size {search_bound} "
                           "(bound-relative)")


# -- bridge to column-finite idempotents ---------------------------------


@dataclass
class ColIdem:
    """A column-finite idempotent truncation, as corner matrices.

    corners holds Z_0..Z_{m-1} with Z_i of shape k_{i+1} x k_i and
    Z_{i+1} Z_i = [Z_i; 0]; sizes holds k_0 < k_1 < ...  For the
    stabilized finite case an explicit square idempotent may be stored
    instead of corner data.
    """

    ring: FiniteRing
    corners: tuple = ()
    sizes: tuple = ()
    explicit: Optional[Idem] = None
    matrix: Optional[Mat] = None       # assembled truncation of E, if any

    def __post_init__(self):
        if self.explicit is None and not self.corners:
            raise ValueError("need corner matrices or an explicit idempotent")
        for i, zi in enumerate(self.corners):
            if (zi.rows, zi.cols) != (self.sizes[i + 1], self.sizes[i]):
                raise ValueError(f"corner {i} has the wrong shape")
        for i in range(len(self.corners) - 1):
            hi, lo = self.corners[i + 1], self.corners[i]
            prod = hi @ _grow_rows(lo, hi.cols)
            if prod != _grow_rows(lo, hi.rows):
                raise ValueError(f"corner relation fails at index {i}")


def _grow_rows(m: Mat, rows: int) -> Mat:
    a = np.zeros((rows, m.cols), dtype=np.int64)
    a[:m.rows] = m.arr
    return Mat.from_arr(m.ring, a)


def idem_to_seq(E: ColIdem, budget=kernels.DEFAULT_BUDGET,
                allowed=None) -> SeqElem:
    """Stage sequence of a column-finite idempotent truncation.

    The corners themselves are the stages; the corner relation makes
    y_{i+1} = [identity | 0] a witness: [I|0] Z_{i+1} Z_i = [I|0][Z_i;0]
    = Z_i.  An explicit square idempotent yields its constant sequence.
    """
    ring = E.ring
    if E.explicit is not None:
        return constant_seq(E.explicit.base)
    stages = E.corners
    wits = []
    for i in range(len(stages) - 1):
        k1, k2 = stages[i].rows, stages[i + 1].rows
        y = np.zeros((k1, k2), dtype=np.int64)
        for d in range(k1):
            y[d, d] = ring.one
        wits.append(Mat.from_arr(ring, y))
    # corner data is a truncation; the open tail keeps that explicit
    out = SeqElem(ring, tuple(stages), tuple(wits), OPEN)
    v = validate_seq(out, budget, allowed)
    if not v.is_true:
        raise AssertionError(f"corner sequence failed to validate: {v.note}")
    return out


def _column_blocks(s: SeqElem, i: int, y1: Mat):
    """Blocks c_1..c_{i+1} of block-column i of the idempotent E.

    With suffix products S_j = y_j y_{j+1} ... y_i x_i (taking y_1 from
    the parameter and S_{i+1} = x_i), the blocks are c_1 = S_1 and
    c_j = S_j - x_{j-1} S_{j-1} for 2 <= j <= i+1.
    """
    xs = s.stages
    ys = (y1,) + s.witnesses          # ys[j-1] is y_j
    xi = xs[i - 1]
    suffix = [None] * (i + 2)         # suffix[j] = S_j
    suffix[i + 1] = xi
    acc = xi
    for j in range(i, 0, -1):
        acc = ys[j - 1] @ acc
        suffix[j] = acc
    blocks = [suffix[1]]
    for j in range(2, i + 2):
        blocks.append(suffix[j] - xs[j - 2] @ suffix[j - 1])
    return blocks


def seq_to_idem(s: SeqElem, y1: Optional[Mat] = None,
                budget=kernels.DEFAULT_BUDGET, allowed=None) -> ColIdem:
    """The column-finite idempotent E realizing a valid sequence.

    Block-column i of E is (y_1...y_i x_i; ...; y_j...y_i x_i -
    x_{j-1} y_{j-1}...y_i x_i; ...; x_i - x_i y_i x_i; 0).  The leading
    witness y_1 is a free parameter (zero by default).  E^2 = E is
    verified exactly on every fully determined column; failure is a hard
    error.  Corners Z_i are extracted and their relation re-checked.
    """
    v = validate_seq(s, budget, allowed)
    if not v.is_true:
        raise ValueError(f"input does not validate: {v.note}")
    if s.tail == STABILIZED:
        s = _extend(s, s.n_stages + 1, budget, allowed)
    ring = s.ring
    xs = s.stages
    m = len(xs)
    n_sizes = [x.cols for x in xs] + [xs[-1].rows]   # n_1..n_{m+1}
    K = np.concatenate([[0], np.cumsum(n_sizes)])    # K[j] = n_1+..+n_j
    if y1 is None:
        y1 = zero(ring, n_sizes[0], n_sizes[1])
    elif (y1.rows, y1.cols) != (n_sizes[0], n_sizes[1]):
        raise ValueError("y1 has the wrong shape")

    side = int(K[m + 1])
    E = np.zeros((side, side), dtype=np.int64)
    for i in range(1, m + 1):
        blocks = _column_blocks(s, i, y1)
        col0 = int(K[i - 1])
        for j, blk in enumerate(blocks, start=1):
            E[int(K[j - 1]):int(K[j]), col0:col0 + n_sizes[i - 1]] = blk.arr

    # columns beyond K[m] are zero placeholders: squaring the widened
    # matrix still computes E^2 exactly on every fully determined column
    wide = Mat.from_arr(ring, E)
    sq = (wide @ wide).arr
    checked = int(K[m - 1]) if s.tail == OPEN else int(K[m])
    if (sq[:, :checked] != E[:, :checked]).any():
        raise AssertionError("E^2 = E fails on the stored truncation — "
                             "witness data is inconsistent")

    corners = []
    sizes = [int(K[j]) for j in range(1, m + 2)]     # k_i = n_1+..+n_{i+1}
    for i in range(m):
        corners.append(Mat.from_arr(
            ring, E[:int(K[i + 2]), :int(K[i + 1])]))
    trunc = Mat.from_arr(ring, E[:, :int(K[m])])
    return ColIdem(ring, tuple(corners), tuple(sizes), matrix=trunc)


def splitting_check(s: SeqElem, y1: Optional[Mat] = None,
                    budget=kernels.DEFAULT_BUDGET, allowed=None):
    """Verify the splitting identity pi o iota = id on stage generators.

    Pushing block-column i of E forward to stage i+1 must reproduce x_i:
    sum_{j=1}^{i} (x_i x_{i-1} ... x_j) c_j + c_{i+1} = x_i, where c_j
    are the column blocks.  Returns a per-stage report.
    """
    v = validate_seq(s, budget, allowed)
    if not v.is_true:
        raise ValueError(f"input does not validate: {v.note}")
    ring = s.ring
    xs = s.stages
    if y1 is None:
        y1 = zero(ring, xs[0].cols, xs[0].rows)
    per_stage = []
    for i in range(1, len(xs) + 1):
        blocks = _column_blocks(s, i, y1)
        xi = xs[i - 1]
        total = blocks[i]                   # c_{i+1}
        prefix = xi                         # x_i ... x_j as j descends
        for j in range(i, 0, -1):
            total = total + prefix @ blocks[j - 1]
            if j > 1:
                prefix = prefix @ xs[j - 2]
        per_stage.append(total == xi)
    return {"stages": per_stage, "identity": all(per_stage)}


# -- functoriality -------------------------------------------------------


def map_mat(f: RingHom, m: Mat) -> Mat:
    if m.ring != f.source:
        raise ValueError("matrix is not over the hom's source ring")
    return Mat.from_arr(f.target, f.map[m.arr])


def induce_morphism(f: RingHom, x, budget=kernels.DEFAULT_BUDGET):
    """Entrywise image of a sequence, matrix, or idempotent under a hom.

    Validity of sequences transports because homs preserve the witness
    equations: f(y) f(x') f(x) = f(x).  The image re-validates.
    """
    if isinstance(x, SeqElem):
        out = SeqElem(f.target,
                      tuple(map_mat(f, m) for m in x.stages),
                      tuple(map_mat(f, m) for m in x.witnesses),
                      x.tail)
        v = validate_seq(out, budget)
        if not v.is_true:
            raise AssertionError(f"image failed to validate: {v.note}")
        return out
    if isinstance(x, Idem):
        return Idem(map_mat(f, x.base))
    if isinstance(x, Mat):
        return map_mat(f, x)
    raise TypeError(f"cannot transport {type(x).__name__}")
