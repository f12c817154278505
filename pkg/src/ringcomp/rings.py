"""Concrete finite rings: construction, validation, ideals, homomorphisms.

Elements are dense integer ids 0..size-1 with zero = 0; the ring is given by
its full addition and multiplication tables, so every structural predicate
is exhaustively checkable.  Non-unital rings are modeled as two-sided ideals
inside a unital ambient ring.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import kernels


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


class RingError(ValueError):
    """Malformed ring specification or failed ring-axiom validation."""


class FiniteRing:
    """A finite (possibly non-unital) ring given by operation tables."""

    def __init__(self, size, add, mul, one=None, kind="table", params=(),
                 name=None, validate=True):
        self.size = int(size)
        self.add = np.ascontiguousarray(add, dtype=np.int64)
        self.mul = np.ascontiguousarray(mul, dtype=np.int64)
        self.one = None if one is None else int(one)
        self.kind = kind
        self.params = params
        self.name = name or kind
        if self.add.shape != (size, size) or self.mul.shape != (size, size):
            raise RingError("operation tables must be size x size")
        if validate:
            self._validate()
        # negation table: neg[a] is the unique b with a + b = 0
        self.neg = np.argmin(self.add != 0, axis=1).astype(np.int64)
        self.is_unital = self.one is not None
        self.is_commutative = bool(np.array_equal(self.mul, self.mul.T))
        self.char = self._char()
        self._units = None

    # -- validation ------------------------------------------------------

    def _validate(self):
        add, mul, n = self.add, self.mul, self.size
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise RingError("table entries out of range")
        ids = np.arange(n)
        if not np.array_equal(add[0], ids) or not np.array_equal(add[:, 0], ids):
            raise RingError("0 is not an additive identity")
        if not np.array_equal(add, add.T):
            raise RingError("addition is not commutative")
        if not (add == 0).any(axis=1).all():
            raise RingError("some element has no additive inverse")
        lhs = add[add[:, :, None], ids[None, None, :]]
        rhs = add[ids[:, None, None], add[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise RingError("addition is not associative")
        lhs = mul[mul[:, :, None], ids[None, None, :]]
        rhs = mul[ids[:, None, None], mul[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise RingError("multiplication is not associative")
        # a(b+c) = ab+ac and (a+b)c = ac+bc
        lhs = mul[ids[:, None, None], add[None, :, :]]
        rhs = add[mul[:, :, None], mul[:, None, :]]
        if not np.array_equal(lhs, rhs):
            raise RingError("left distributivity fails")
        a = ids[:, None, None]
        b = ids[None, :, None]
        c = ids[None, None, :]
        if not np.array_equal(mul[add[a, b], c], add[mul[a, c], mul[b, c]]):
            raise RingError("right distributivity fails")
        if self.one is not None:
            if not (np.array_equal(mul[self.one], ids)
                    and np.array_equal(mul[:, self.one], ids)):
                raise RingError("declared one is not a two-sided identity")

    def _char(self):
        def order(e):
            k, acc = 1, e
            while acc != 0:
                acc = int(self.add[acc, e])
                k += 1
            return k

        if self.one is not None:
            return order(self.one)
        return math.lcm(*(order(e) for e in range(self.size))) if self.size > 1 else 1

    # -- basic queries ---------------------------------------------------

    def elements(self):
        return range(self.size)

    def units(self):
        """Elements with a two-sided multiplicative inverse."""
        if self._units is None:
            if self.one is None:
                self._units = []
            else:
                us = []
                for a in range(self.size):
                    row = self.mul[a]
                    invs = np.flatnonzero(row == self.one)
                    if any(self.mul[v, a] == self.one for v in invs):
                        us.append(a)
                self._units = us
        return self._units

    def inverse(self, a):
        for v in range(self.size):
            if self.mul[a, v] == self.one and self.mul[v, a] == self.one:
                return v
        raise RingError(f"element {a} is not a unit")

    @property
    def allowed(self):
        """All element ids, as the entry universe for witness searches."""
        return np.arange(self.size, dtype=np.int64)

    # -- structure-aware helpers (used for fast paths) -------------------

    def field_prime(self) -> Optional[int]:
        """p when this ring is the prime field F_p, else None."""
        if self.kind == "gf":
            return self.params[0]
        if self.kind == "zmod" and _is_prime(self.params[0]):
            return self.params[0]
        return None

    def flatten_info(self):
        """(p, block) when matrices over this ring embed in matrices over F_p.

        Supported for prime fields (block 1) and full matrix rings over a
        prime field (block k); returns None otherwise.
        """
        p = self.field_prime()
        if p is not None:
            return p, 1
        if self.kind == "matrix":
            inner, k = self.params
            q = inner.field_prime()
            if q is not None:
                return q, k
        return None

    def elem_block(self, e):
        """Decode a matrix-ring element id to its k x k inner-id block."""
        inner, k = self.params
        base = inner.size
        out = np.empty((k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                out[i, j] = (e // base ** (i * k + j)) % base
        return out

    def block_elem(self, blk):
        """Encode a k x k inner-id block back to a matrix-ring element id."""
        inner, k = self.params
        base = inner.size
        e = 0
        for i in range(k):
            for j in range(k):
                e += int(blk[i, j]) * base ** (i * k + j)
        return e

    def pair_split(self, e):
        """Decode a product-ring element id to its component ids."""
        r1, r2 = self.params
        return e // r2.size, e % r2.size

    def pair_join(self, e1, e2):
        r1, r2 = self.params
        return int(e1) * r2.size + int(e2)

    # -- display / identity ----------------------------------------------

    def spec_string(self) -> str:
        if self.kind == "zmod":
            return f"zmod({self.params[0]})"
        if self.kind == "gf":
            return f"gf({self.params[0]})"
        if self.kind == "matrix":
            return f"matrix_ring({self.params[0].spec_string()},{self.params[1]})"
        if self.kind == "triangular":
            return f"upper_triangular({self.params[0].spec_string()},{self.params[1]})"
        if self.kind == "product":
            return f"product({self.params[0].spec_string()},{self.params[1].spec_string()})"
        return f"table(size={self.size})"

    def __repr__(self):
        return f"FiniteRing({self.spec_string()})"

    def __eq__(self, other):
        return (isinstance(other, FiniteRing)
                and self.size == other.size
                and self.one == other.one
                and np.array_equal(self.add, other.add)
                and np.array_equal(self.mul, other.mul))

    def __hash__(self):
        return hash((self.size, self.one, self.add.tobytes(), self.mul.tobytes()))


# -- constructors --------------------------------------------------------


def zmod(n: int) -> FiniteRing:
    """The ring of integers modulo n (n >= 2)."""
    if n < 2:
        raise RingError("zmod requires n >= 2")
    ids = np.arange(n)
    add = (ids[:, None] + ids[None, :]) % n
    mul = (ids[:, None] * ids[None, :]) % n
    return FiniteRing(n, add, mul, one=1, kind="zmod", params=(n,),
                      name=f"zmod({n})", validate=False)


def gf(p: int) -> FiniteRing:
    """The prime field F_p (p prime; extension fields are out of scope)."""
    if not _is_prime(p):
        raise RingError(f"gf requires a prime, got {p}")
    r = zmod(p)
    return FiniteRing(p, r.add, r.mul, one=1, kind="gf", params=(p,),
                      name=f"gf({p})", validate=False)


def _encode_blocks(blocks, base, cells):
    """Vectorized little-endian digit encoding of (..., cells) digit arrays."""
    powers = base ** np.arange(cells, dtype=np.int64)
    return (blocks.reshape(blocks.shape[:-2] + (cells,)) * powers).sum(axis=-1)


def matrix_ring(inner: FiniteRing, k: int) -> FiniteRing:
    """The full ring of k x k matrices over a finite ring."""
    if k < 1:
        raise RingError("matrix_ring requires k >= 1")
    base = inner.size
    size = base ** (k * k)
    if size > 4096:
        raise RingError("matrix_ring too large for dense tables")
    ids = np.arange(size, dtype=np.int64)
    digits = (ids[:, None] // base ** np.arange(k * k, dtype=np.int64)[None, :]) % base
    E = digits.reshape(size, k, k)
    add_blocks = inner.add[E[:, None], E[None, :]]
    add = _encode_blocks(add_blocks, base, k * k)
    mul_blocks = np.zeros((size, size, k, k), dtype=np.int64)
    for t in range(k):
        term = inner.mul[E[:, None, :, t][:, :, :, None], E[None, :, t, :][:, :, None, :]]
        mul_blocks = inner.add[mul_blocks, term]
    mul = _encode_blocks(mul_blocks, base, k * k)
    one = None
    if inner.one is not None:
        eye = np.full((k, k), 0, dtype=np.int64)
        np.fill_diagonal(eye, inner.one)
        one = int(_encode_blocks(eye[None], base, k * k)[0])
    return FiniteRing(size, add, mul, one=one, kind="matrix", params=(inner, k),
                      name=f"M_{k}({inner.name})", validate=False)


def upper_triangular(inner: FiniteRing, k: int) -> FiniteRing:
    """The ring of upper-triangular k x k matrices over a finite ring."""
    if k < 1:
        raise RingError("upper_triangular requires k >= 1")
    cells = [(i, j) for i in range(k) for j in range(i, k)]
    base = inner.size
    size = base ** len(cells)
    if size > 4096:
        raise RingError("upper_triangular too large for dense tables")
    ids = np.arange(size, dtype=np.int64)
    digits = (ids[:, None] // base ** np.arange(len(cells), dtype=np.int64)[None, :]) % base
    E = np.zeros((size, k, k), dtype=np.int64)
    for c, (i, j) in enumerate(cells):
        E[:, i, j] = digits[:, c]
    add_blocks = inner.add[E[:, None], E[None, :]]
    mul_blocks = np.zeros((size, size, k, k), dtype=np.int64)
    for t in range(k):
        term = inner.mul[E[:, None, :, t][:, :, :, None], E[None, :, t, :][:, :, None, :]]
        mul_blocks = inner.add[mul_blocks, term]

    def encode(blocks):
        cols = np.stack([blocks[..., i, j] for (i, j) in cells], axis=-1)
        powers = base ** np.arange(len(cells), dtype=np.int64)
        return (cols * powers).sum(axis=-1)

    add = encode(add_blocks)
    mul = encode(mul_blocks)
    one = None
    if inner.one is not None:
        eye = np.zeros((k, k), dtype=np.int64)
        np.fill_diagonal(eye, inner.one)
        one = int(encode(eye[None])[0])
    ring = FiniteRing(size, add, mul, one=one, kind="triangular",
                      params=(inner, k), name=f"T_{k}({inner.name})", validate=False)
    ring._tri_cells = cells
    return ring


def product(r1: FiniteRing, r2: FiniteRing) -> FiniteRing:
    """The direct product ring R1 x R2 with componentwise operations."""
    n1, n2 = r1.size, r2.size
    size = n1 * n2
    ids = np.arange(size)
    a1, a2 = ids // n2, ids % n2
    add = r1.add[a1[:, None], a1[None, :]] * n2 + r2.add[a2[:, None], a2[None, :]]
    mul = r1.mul[a1[:, None], a1[None, :]] * n2 + r2.mul[a2[:, None], a2[None, :]]
    one = None
    if r1.one is not None and r2.one is not None:
        one = r1.one * n2 + r2.one
    return FiniteRing(size, add, mul, one=one, kind="product", params=(r1, r2),
                      name=f"{r1.name}x{r2.name}", validate=False)


def from_tables(add, mul, one=None, name="table") -> FiniteRing:
    """Build a ring from explicit tables; validates all axioms exhaustively."""
    add = np.asarray(add, dtype=np.int64)
    return FiniteRing(add.shape[0], add, mul, one=one, kind="table",
                      name=name, validate=True)


# -- ideals --------------------------------------------------------------


@dataclass
class IdealRing:
    """A two-sided ideal of a unital finite ring, viewed as a non-unital ring.

    Elements keep their ambient ids; ``allowed`` restricts witness searches
    to the ideal.
    """

    ambient: FiniteRing
    members: tuple

    def __post_init__(self):
        mem = set(self.members)
        if 0 not in mem:
            raise RingError("ideal must contain 0")
        amb = self.ambient
        for a in mem:
            if int(amb.neg[a]) not in mem:
                raise RingError("ideal not closed under negation")
            for b in mem:
                if int(amb.add[a, b]) not in mem:
                    raise RingError("ideal not closed under addition")
            for r in range(amb.size):
                if int(amb.mul[r, a]) not in mem or int(amb.mul[a, r]) not in mem:
                    raise RingError("ideal not closed under ambient multiplication")

    @property
    def size(self):
        return len(self.members)

    @property
    def allowed(self):
        return np.array(sorted(self.members), dtype=np.int64)

    @property
    def add(self):
        return self.ambient.add

    @property
    def mul(self):
        return self.ambient.mul

    @property
    def one(self):
        return self.ambient.one if self.ambient.one in set(self.members) else None

    @property
    def is_unital(self):
        return self.one is not None

    def view_ring(self) -> FiniteRing:
        """Standalone FiniteRing with the ideal's elements reindexed densely."""
        mem = sorted(self.members)
        index = {e: i for i, e in enumerate(mem)}
        n = len(mem)
        add = np.empty((n, n), dtype=np.int64)
        mul = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(mem):
            for j, b in enumerate(mem):
                add[i, j] = index[int(self.ambient.add[a, b])]
                mul[i, j] = index[int(self.ambient.mul[a, b])]
        one = index.get(self.ambient.one) if self.is_unital else None
        return FiniteRing(n, add, mul, one=one, kind="table",
                          name=f"ideal({self.ambient.name})", validate=False)


def ideal_closure(ambient: FiniteRing, generators) -> IdealRing:
    """Smallest two-sided ideal of a unital ring containing the generators."""
    if ambient.one is None:
        raise RingError("ideal_closure requires a unital ambient ring")
    cur = {0} | {int(g) for g in generators}
    while True:
        nxt = set(cur)
        for a in list(cur):
            nxt.add(int(ambient.neg[a]))
            for b in cur:
                nxt.add(int(ambient.add[a, b]))
            for r in range(ambient.size):
                nxt.add(int(ambient.mul[r, a]))
                nxt.add(int(ambient.mul[a, r]))
        if nxt == cur:
            break
        cur = nxt
    return IdealRing(ambient, tuple(sorted(cur)))


# -- weak s-unitality ----------------------------------------------------


def check_weakly_s_unital(ring, n_max, budget=kernels.DEFAULT_BUDGET,
                          allow_sampling=False, samples=200, seed=0):
    """Per matrix size n <= n_max: does every a in M_n admit a = b a c?

    Unital rings short-circuit through b = c = identity.  Non-unital rings
    (ideals) are checked exhaustively when the enumeration fits the budget,
    by sampling (flagged) when permitted, and raise otherwise.
    """
    from .matrices import Mat, identity as mat_identity

    reports = []
    if getattr(ring, "one", None) is not None:
        for n in range(1, n_max + 1):
            reports.append({"n": n, "verdict": "true", "mode": "unital-shortcut",
                            "counterexample": None})
        return reports

    if isinstance(ring, IdealRing):
        allowed = ring.allowed
        add, mul = ring.ambient.add, ring.ambient.mul
        base_ring = ring.ambient
    else:
        allowed = ring.allowed
        add, mul = ring.add, ring.mul
        base_ring = ring

    rng = np.random.default_rng(seed)
    na = len(allowed)
    for n in range(1, n_max + 1):
        total_a = na ** (n * n)
        cost = total_a * na ** (2 * n * n)
        mode = "exhaustive"
        if cost > budget:
            if not allow_sampling:
                raise RingError(
                    f"weak s-unitality at n={n} exceeds budget and sampling is off")
            mode = "sampled"
        verdict = "true"
        counterexample = None
        if mode == "exhaustive":
            a_list = range(total_a)
        else:
            a_list = rng.integers(0, total_a, size=samples)
        for code in a_list:
            digs = np.empty(n * n, dtype=np.int64)
            c = int(code)
            for pos in range(n * n - 1, -1, -1):
                digs[pos] = c % na
                c //= na
            a = allowed[digs].reshape(n, n)
            status, _, _ = kernels.search_bac(add, mul, a, allowed, budget)
            if status == 0:
                verdict = "false"
                counterexample = Mat(base_ring, n, n, tuple(int(v) for v in a.ravel()))
                break
            if status == -1:
                verdict = "unknown"
                break
        reports.append({"n": n, "verdict": verdict, "mode": mode,
                        "counterexample": counterexample})
    return reports


# -- homomorphisms -------------------------------------------------------


@dataclass
class RingHom:
    """A ring homomorphism given by its total map on element ids."""

    source: FiniteRing
    target: FiniteRing
    map: np.ndarray
    unital: bool = True

    def __post_init__(self):
        self.map = np.asarray(self.map, dtype=np.int64)
        s, t = self.source, self.target
        f = self.map
        if f.shape != (s.size,):
            raise RingError("hom map must cover all source elements")
        if f[0] != 0:
            raise RingError("hom must send 0 to 0")
        a = np.arange(s.size)
        if not np.array_equal(f[s.add], t.add[f[a][:, None], f[a][None, :]]):
            raise RingError("hom is not additive")
        if not np.array_equal(f[s.mul], t.mul[f[a][:, None], f[a][None, :]]):
            raise RingError("hom is not multiplicative")
        if self.unital and s.one is not None and t.one is not None:
            if f[s.one] != t.one:
                raise RingError("declared-unital hom does not send 1 to 1")

    def __call__(self, e):
        return int(self.map[e])


def hom_zmod_reduction(n: int, m: int) -> RingHom:
    """The reduction homomorphism Z/n -> Z/m (m must divide n)."""
    if n % m != 0:
        raise RingError("reduction needs m | n")
    return RingHom(zmod(n), zmod(m), np.arange(n) % m)


def hom_corner_embedding(inner: FiniteRing, k: int, target=None) -> RingHom:
    """The non-unital embedding a -> a e_11 of a ring into its k x k matrices."""
    tgt = target if target is not None else matrix_ring(inner, k)
    mp = np.empty(inner.size, dtype=np.int64)
    for a in range(inner.size):
        blk = np.zeros((k, k), dtype=np.int64)
        blk[0, 0] = a
        mp[a] = tgt.block_elem(blk)
    return RingHom(inner, tgt, mp, unital=False)


def compose_homs(g: RingHom, f: RingHom) -> RingHom:
    """g after f."""
    if f.target != g.source:
        raise RingError("homs not composable")
    return RingHom(f.source, g.target, g.map[f.map], unital=f.unital and g.unital)


def identity_hom(r: FiniteRing) -> RingHom:
    return RingHom(r, r, np.arange(r.size))


# -- ring specification text --------------------------------------------

_SPEC_TOKEN = re.compile(r"\s*([a-z_]+|\d+|[(),])")


def parse_ring_spec(text: str):
    """Parse an inline ring spec like ``matrix_ring(gf(2),2)``."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _SPEC_TOKEN.match(text, pos)
        if not m:
            raise RingError(f"bad ring spec near {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()

    def parse(i):
        tok = tokens[i]
        if tok == "zmod" or tok == "gf":
            if tokens[i + 1] != "(" or tokens[i + 3] != ")":
                raise RingError("expected single integer argument")
            n = int(tokens[i + 2])
            return (zmod(n) if tok == "zmod" else gf(n)), i + 4
        if tok in ("matrix_ring", "upper_triangular"):
            inner, j = parse(i + 2)
            if tokens[j] != "," or tokens[j + 2] != ")":
                raise RingError(f"bad arguments to {tok}")
            k = int(tokens[j + 1])
            fn = matrix_ring if tok == "matrix_ring" else upper_triangular
            return fn(inner, k), j + 3
        if tok == "product":
            r1, j = parse(i + 2)
            if tokens[j] != ",":
                raise RingError("product needs two arguments")
            r2, j2 = parse(j + 1)
            if tokens[j2] != ")":
                raise RingError("unclosed product spec")
            return product(r1, r2), j2 + 1
        raise RingError(f"unknown ring kind {tok!r}")

    ring, end = parse(0)
    if end != len(tokens):
        raise RingError("trailing tokens in ring spec")
    return ring


def ring_to_spec_text(ring: FiniteRing) -> str:
    """Key/value spec-file form of a ring; round-trips losslessly."""
    if ring.kind == "table":
        lines = [f"kind = table", f"size = {ring.size}"]
        lines.append("add = " + " ; ".join(
            " ".join(str(int(v)) for v in row) for row in ring.add))
        lines.append("mul = " + " ; ".join(
            " ".join(str(int(v)) for v in row) for row in ring.mul))
        if ring.one is not None:
            lines.append(f"one = {ring.one}")
        return "\n".join(lines) + "\n"
    return f"kind = spec\nspec = {ring.spec_string()}\n"


def ring_from_spec_text(text: str) -> FiniteRing:
    """Parse the key/value spec-file form produced by ring_to_spec_text."""
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise RingError(f"bad spec line {line!r}")
        key, _, val = line.partition("=")
        fields[key.strip()] = val.strip()
    kind = fields.get("kind")
    if kind == "spec":
        return parse_ring_spec(fields["spec"])
    if kind == "table":
        def table(s):
            return [[int(v) for v in row.split()] for row in s.split(";")]

        one = int(fields["one"]) if "one" in fields else None
        return from_tables(table(fields["add"]), table(fields["mul"]), one=one)
    raise RingError(f"unknown spec-file kind {kind!r}")
