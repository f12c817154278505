"""Truncated models of the class monoids W(R) and V(R).

Matrices up to a size bound are partitioned into mutual-subequivalence
classes, ordered by the witnessed relation, and given the partial addition
induced by diagonal sum; every table entry carries an exact or
truncation-relative certificate.  V(R) does the same for idempotents under
Murray-von Neumann equivalence and embeds into W(R).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import diagonal, gfp, kernels
from .common import Verdict
from .matrices import Idem, Mat, all_idems, all_mats, diag_sum, mvn_equivalent, zero
from .rings import FiniteRing, RingError


class BudgetError(RuntimeError):
    """A search verdict came back unknown where an exact one is required."""


# -- structure-aware class keys ------------------------------------------


def class_key_fn(ring: FiniteRing):
    """A function mapping a Mat to a complete class invariant, or None.

    Prime fields and matrix rings over them: rank.  Chain rings Z/p^k:
    valuation multiset of the diagonal form (zeros dropped).  Products:
    componentwise keys.  The keys are constructive — each comes with an
    explicit mutual-subequivalence normal form — and the builders still
    re-verify the induced order with precsim1 witnesses on representatives.
    """
    if ring.flatten_info() is not None:
        def key(m):
            a, p = m.flatten()
            return gfp.rank(a, p)

        return key
    data = diagonal.chain_ring_data(ring)
    if data is not None:
        p, k = data

        def key(m):
            vals = diagonal.valuation_multiset(m)
            return tuple(sorted(v for v in vals if v < k))

        return key
    if ring.kind == "product":
        k1 = class_key_fn(ring.params[0])
        k2 = class_key_fn(ring.params[1])
        if k1 is not None and k2 is not None:
            def key(m):
                m1, m2 = m.split()
                return (k1(m1), k2(m2))

            return key
    return None


@dataclass
class TruncatedPoM:
    """A truncation of W(R): classes, order, partial addition, certificates."""

    ring: FiniteRing
    k_max: int
    reps: list                      # canonical Mat per class
    leq: np.ndarray                 # boolean order table on classes
    add: dict                       # (i, j) -> class index, or None
    add_cert: dict                  # (i, j) -> "exact" | "truncation_relative"
    zero_class: int
    class_sizes: list = field(default_factory=list)

    def n_classes(self):
        return len(self.reps)

    def classify(self, m: Mat, budget=kernels.DEFAULT_BUDGET) -> Optional[int]:
        """Class index of a matrix, or None if it matches no stored class."""
        key = class_key_fn(self.ring)
        mt = m.trim()
        if key is not None:
            k = key(mt)
            for i, rep in enumerate(self.reps):
                if key(rep) == k:
                    return i
            return None
        from .subequiv import precsim1

        for i, rep in enumerate(self.reps):
            v1 = precsim1(mt, rep, budget)
            if v1.is_unknown:
                raise BudgetError("classification hit the search budget")
            if not v1.is_true:
                continue
            v2 = precsim1(rep, mt, budget)
            if v2.is_unknown:
                raise BudgetError("classification hit the search budget")
            if v2.is_true:
                return i
        return None

    def hasse_edges(self):
        """Covering pairs (i, j) with class i strictly below class j."""
        n = self.n_classes()
        strict = self.leq & ~np.eye(n, dtype=bool)
        edges = []
        for i in range(n):
            for j in range(n):
                if not strict[i, j]:
                    continue
                if any(strict[i, m] and strict[m, j] for m in range(n)):
                    continue
                edges.append((i, j))
        return edges


def _enumerate_class_reps(ring, k_max, budget):
    """(reps, sizes): canonical representative and member count per class.

    Enumeration order (rows, cols, lexicographic entries, all ascending)
    makes the first member of each class its canonical representative.
    """
    key = class_key_fn(ring)
    from .subequiv import precsim1

    reps = []
    sizes = []
    keys = {}
    for rows in range(1, k_max + 1):
        for cols in range(1, k_max + 1):
            for m in all_mats(ring, rows, cols):
                if key is not None:
                    k = key(m)
                    if k in keys:
                        sizes[keys[k]] += 1
                    else:
                        keys[k] = len(reps)
                        reps.append(m.trim())
                        sizes.append(1)
                else:
                    mt = m.trim()
                    placed = False
                    for i, rep in enumerate(reps):
                        v1 = precsim1(mt, rep, budget)
                        if v1.is_unknown:
                            raise BudgetError("partition hit the search budget")
                        if not v1.is_true:
                            continue
                        v2 = precsim1(rep, mt, budget)
                        if v2.is_unknown:
                            raise BudgetError("partition hit the search budget")
                        if v2.is_true:
                            sizes[i] += 1
                            placed = True
                            break
                    if not placed:
                        reps.append(mt)
                        sizes.append(1)
    return reps, sizes


def build_W(ring: FiniteRing, k_max: int,
            budget=kernels.DEFAULT_BUDGET) -> TruncatedPoM:
    """Truncated W(R) from all matrices of shape at most k_max x k_max."""
    reps, sizes = _enumerate_class_reps(ring, k_max, budget)
    from .subequiv import precsim1

    n = len(reps)
    leq = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            v = precsim1(reps[i], reps[j], budget)
            if v.is_unknown:
                raise BudgetError("order table hit the search budget")
            leq[i, j] = v.is_true
    for i in range(n):
        if not leq[i, i]:
            raise AssertionError("class not reflexive — ring not weakly s-unital?")
        for j in range(n):
            if i != j and leq[i, j] and leq[j, i]:
                raise AssertionError("distinct classes mutually comparable")

    zero_class = next(i for i, r in enumerate(reps) if r.is_zero())

    pom = TruncatedPoM(ring, k_max, reps, leq, {}, {}, zero_class, sizes)
    for i in range(n):
        for j in range(n):
            if i == zero_class or j == zero_class:
                # adding the zero class is exact at every size
                pom.add[(i, j)] = j if i == zero_class else i
                pom.add_cert[(i, j)] = "exact"
                continue
            s = diag_sum(reps[i], reps[j]).trim()
            if max(s.rows, s.cols) <= k_max:
                idx = pom.classify(s, budget)
                if idx is None:
                    raise AssertionError("sum fell outside the enumerated classes")
                pom.add[(i, j)] = idx
                pom.add_cert[(i, j)] = "exact"
            else:
                pom.add[(i, j)] = None
                pom.add_cert[(i, j)] = "truncation_relative"
    return pom


# -- V(R) ----------------------------------------------------------------


@dataclass
class VMonoid:
    """A truncation of V(R): idempotent classes with partial addition."""

    ring: FiniteRing
    k_max: int
    reps: list                      # canonical Idem per class
    add: dict                       # (i, j) -> class index or None
    add_cert: dict
    iota: list                      # W class index per V class
    w: TruncatedPoM

    def n_classes(self):
        return len(self.reps)

    def leq_algebraic(self, i, j):
        """i <= j in the algebraic order: some certified k has i + k = j."""
        return any(self.add.get((i, k)) == j for k in range(self.n_classes()))

    def leq(self, i, j, budget=kernels.DEFAULT_BUDGET):
        """Subidempotent order: some e' ~ rep_i sits under rep_j.

        e' ranges over the idempotents of rep_j's ambient size with
        e'f = fe' = e'; unlike leq_algebraic this never needs to leave
        the truncation, so it is exact on every stored pair.
        """
        f = self.reps[j].base
        for e_cand in all_idems(self.ring, f.rows):
            ec = e_cand.base
            if f @ ec != ec or ec @ f != ec:
                continue
            v = mvn_equivalent(self.reps[i], e_cand, budget)
            if v.is_unknown:
                raise BudgetError("subidempotent order hit the search budget")
            if v.is_true:
                return True
        return False

    def classify_idem(self, e: Idem, budget=kernels.DEFAULT_BUDGET):
        for i, rep in enumerate(self.reps):
            v = mvn_equivalent(e, rep, budget)
            if v.is_unknown:
                raise BudgetError("MvN classification hit the search budget")
            if v.is_true:
                return i
        return None


def build_V(ring: FiniteRing, k_max: int,
            budget=kernels.DEFAULT_BUDGET) -> VMonoid:
    """Truncated V(R): idempotents up to k_max, classified by MvN equivalence."""
    w = build_W(ring, k_max, budget)
    reps: list = []
    for size in range(1, k_max + 1):
        for e in all_idems(ring, size):
            idx = None
            for i, rep in enumerate(reps):
                v = mvn_equivalent(e, rep, budget)
                if v.is_unknown:
                    raise BudgetError("MvN partition hit the search budget")
                if v.is_true:
                    idx = i
                    break
            if idx is None:
                reps.append(e)

    vm = VMonoid(ring, k_max, reps, {}, {}, [], w)
    zero_v = next(i for i, e in enumerate(reps) if e.base.is_zero())
    for i, e in enumerate(reps):
        for j, f in enumerate(reps):
            if i == zero_v or j == zero_v:
                vm.add[(i, j)] = j if i == zero_v else i
                vm.add_cert[(i, j)] = "exact"
                continue
            s = diag_sum(e.base, f.base)
            if max(s.rows, s.cols) <= k_max:
                idx = vm.classify_idem(Idem(s), budget)
                if idx is None:
                    raise AssertionError("idempotent sum missed all classes")
                vm.add[(i, j)] = idx
                vm.add_cert[(i, j)] = "exact"
            else:
                vm.add[(i, j)] = None
                vm.add_cert[(i, j)] = "truncation_relative"
    for e in reps:
        widx = w.classify(e.base, budget)
        if widx is None:
            raise AssertionError("idempotent class missing from W truncation")
        vm.iota.append(widx)
    return vm


# -- saturation evidence -------------------------------------------------


def _pad(m: Mat, extra: int) -> Mat:
    a = np.zeros((m.rows + extra, m.cols + extra), dtype=np.int64)
    a[:m.rows, :m.cols] = m.arr
    return Mat.from_arr(m.ring, a)


def saturation_report(ring: FiniteRing, k_max: int,
                      budget=kernels.DEFAULT_BUDGET):
    """Stability of the truncated order under enlarging the ambient size.

    For each k < k_max, every ordered pair of class representatives of size
    at most k is re-tested after zero-padding both matrices by one row and
    column (witness matrices then range over the larger size); pairs whose
    comparability changes are flagged.
    """
    from .subequiv import precsim1

    w = build_W(ring, k_max, budget)
    report = []
    for k in range(1, k_max):
        small = [r for r in w.reps if r.rows <= k and r.cols <= k]
        changed = []
        for a in small:
            for b in small:
                v1 = precsim1(a, b, budget)
                v2 = precsim1(_pad(a, 1), _pad(b, 1), budget)
                if v1.is_unknown or v2.is_unknown:
                    raise BudgetError("saturation probe hit the search budget")
                if v1.status != v2.status:
                    changed.append((a, b, v1.status, v2.status))
        report.append({"k": k, "pairs_checked": len(small) ** 2,
                       "changed": changed, "stable": not changed})
    return report
