"""Benchmark the compiled search kernels against the pure-numpy fallback.

Runs the same budgeted searches through both backends and reports wall
time plus a result cross-check.  The compiled path is selected by default;
the fallback is what you get with RINGCOMP_NO_NUMBA=1.  Run as

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from ringcomp import _kernels_np as np_impl

try:
    from ringcomp import _kernels_jit as jit_impl
except ImportError:
    jit_impl = None

from ringcomp.rings import gf, matrix_ring, zmod


def _cases():
    """(name, kernel-name, args) triples exercising the hot paths."""
    out = []
    z4 = zmod(4)
    f3 = gf(3)
    m2 = matrix_ring(gf(2), 2)
    rng = np.random.default_rng(7)

    for ring, tag in ((z4, "zmod4"), (f3, "gf3"), (m2, "M2F2")):
        allowed = np.arange(ring.size, dtype=np.int64)
        a = rng.integers(0, ring.size, size=(2, 2)).astype(np.int64)
        b = rng.integers(0, ring.size, size=(2, 2)).astype(np.int64)
        budget = 1 << 22  # enough to exhaust these 2x2 spaces
        out.append((f"search_rbt/{tag}/2x2", "search_rbt",
                    (ring.add, ring.mul, a, b, allowed, budget)))
        out.append((f"search_axa/{tag}/2x2", "search_axa",
                    (ring.add, ring.mul, a, allowed, budget)))
        if ring is not m2:  # the 16-element ring makes b-a-c exhaustive huge
            out.append((f"search_bac/{tag}/2x2", "search_bac",
                        (ring.add, ring.mul, a, allowed, budget)))
    # a 3x3 case with a hard budget cap: both backends must stop at the
    # same point with the same inconclusive status
    a3 = rng.integers(0, 4, size=(3, 3)).astype(np.int64)
    b3 = rng.integers(0, 4, size=(3, 3)).astype(np.int64)
    allowed4 = np.arange(4, dtype=np.int64)
    out.append(("search_rbt/zmod4/3x3/capped", "search_rbt",
                (z4.add, z4.mul, a3, b3, allowed4, 1 << 20)))
    out.append(("enumerate_idempotents/zmod4/2x2", "enumerate_idempotents",
                (z4.add, z4.mul, 2, allowed4)))
    out.append(("enumerate_idempotents/gf3/3x3", "enumerate_idempotents",
                (f3.add, f3.mul, 3, np.arange(3, dtype=np.int64))))
    return out


def _run(impl, kernel, args, repeat):
    fn = getattr(impl, kernel)
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def _status(result):
    if isinstance(result, tuple) and result and np.isscalar(result[0]):
        return int(result[0])
    return len(result)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    opts = ap.parse_args(argv)

    if jit_impl is not None:
        # trigger compilation outside the timed region
        warm = _cases()[0]
        _run(jit_impl, warm[1], warm[2], 1)

    print(f"{'case':40s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for name, kernel, args in _cases():
        t_np, r_np = _run(np_impl, kernel, args, opts.repeat)
        if jit_impl is None:
            print(f"{name:40s} {t_np * 1e3:9.2f}ms {'n/a':>10s} {'':>8s}")
            continue
        t_jit, r_jit = _run(jit_impl, kernel, args, opts.repeat)
        if _status(r_np) != _status(r_jit):
            raise AssertionError(f"backend mismatch on {name}: "
                                 f"{_status(r_np)} vs {_status(r_jit)}")
        print(f"{name:40s} {t_np * 1e3:9.2f}ms {t_jit * 1e3:9.2f}ms "
              f"{t_np / t_jit:7.1f}x")
    print("results agree across backends")


if __name__ == "__main__":
    main()
