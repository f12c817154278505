"""Agreement between the compiled and the pure-numpy search kernels."""

import numpy as np
import pytest

from ringcomp import _kernels_np as knp
from ringcomp import kernels

try:
    from ringcomp import _kernels_jit as kjit
    HAVE_JIT = True
except Exception:  # numba unavailable on this interpreter
    HAVE_JIT = False

pytestmark = pytest.mark.skipif(not HAVE_JIT,
                                reason="compiled backend unavailable")


def _pairs(ring, rng, count, shape):
    for _ in range(count):
        a = rng.integers(0, ring.size, size=shape)
        b = rng.integers(0, ring.size, size=shape)
        yield a.astype(np.int64), b.astype(np.int64)


class TestSearchRbt:
    def test_status_agrees_on_sampled_2x2(self, z4):
        rng = np.random.default_rng(41)
        for a, b in _pairs(z4, rng, 40, (2, 2)):
            s1, r1, t1 = kjit.search_rbt(z4.add, z4.mul, a, b,
                                         z4.allowed, 1 << 20)
            s2, r2, t2 = knp.search_rbt(z4.add, z4.mul, a, b,
                                        z4.allowed, 1 << 20)
            assert s1 == s2
            if s1 == 1:
                for r, t in ((r1, t1), (r2, t2)):
                    prod = knp.matmul(z4.add, z4.mul,
                                      knp.matmul(z4.add, z4.mul, r, b), t)
                    assert (prod == a).all()

    def test_budget_capped_status_agrees(self, z4):
        rng = np.random.default_rng(43)
        for a, b in _pairs(z4, rng, 10, (2, 2)):
            s1, _, _ = kjit.search_rbt(z4.add, z4.mul, a, b, z4.allowed, 7)
            s2, _, _ = knp.search_rbt(z4.add, z4.mul, a, b, z4.allowed, 7)
            assert s1 == s2


class TestOtherSearches:
    def test_axa_agrees(self, f3):
        rng = np.random.default_rng(47)
        for a, _ in _pairs(f3, rng, 30, (2, 2)):
            s1, x1 = kjit.search_axa(f3.add, f3.mul, a, f3.allowed, 1 << 20)
            s2, x2 = knp.search_axa(f3.add, f3.mul, a, f3.allowed, 1 << 20)
            assert s1 == s2
            if s1 == 1:
                assert (x1 == x2).all()  # same enumeration order

    def test_mvn_agrees(self, f2):
        idems = knp.enumerate_idempotents(f2.add, f2.mul, 2, f2.allowed)
        for e in idems:
            for f in idems:
                s1, _, _ = kjit.search_mvn(f2.add, f2.mul, e, f,
                                           f2.allowed, 1 << 20)
                s2, _, _ = knp.search_mvn(f2.add, f2.mul, e, f,
                                          f2.allowed, 1 << 20)
                assert s1 == s2

    def test_bac_agrees(self, z4):
        rng = np.random.default_rng(53)
        for a, _ in _pairs(z4, rng, 10, (2, 2)):
            s1, _, _ = kjit.search_bac(z4.add, z4.mul, a, z4.allowed, 1 << 18)
            s2, _, _ = knp.search_bac(z4.add, z4.mul, a, z4.allowed, 1 << 18)
            assert s1 == s2


class TestEnumeration:
    def test_idempotent_sets_identical(self, f2, z4):
        for ring, size in ((f2, 2), (z4, 1), (z4, 2)):
            a = kjit.enumerate_idempotents(ring.add, ring.mul, size,
                                           ring.allowed)
            b = knp.enumerate_idempotents(ring.add, ring.mul, size,
                                          ring.allowed)
            assert (np.asarray(a) == np.asarray(b)).all()

    def test_rank_mod_p_agrees(self, f3):
        rng = np.random.default_rng(59)
        for a, _ in _pairs(f3, rng, 50, (3, 3)):
            assert kjit.rank_mod_p(a, 3) == knp.rank_mod_p(a, 3)


def test_dispatcher_exposes_a_backend():
    assert kernels.BACKEND in ("numba", "numpy")
    assert kernels.search_rbt in (knp.search_rbt,
                                  kjit.search_rbt if HAVE_JIT else None)
