"""Kernel dispatch: numba-compiled searches by default, numpy fallback.

Set the environment variable RINGCOMP_NO_NUMBA=1 before import to force the
pure-numpy path (useful where numba is unavailable or for benchmarking the
two implementations against each other).
"""

import os

_flag = os.environ.get("RINGCOMP_NO_NUMBA", "").strip().lower()
_want_numba = _flag not in ("1", "true", "yes")

if _want_numba:
    try:
        from . import _kernels_jit as _impl

        BACKEND = "numba"
    except ImportError:  # numba missing: degrade rather than fail
        from . import _kernels_np as _impl

        BACKEND = "numpy"
else:
    from . import _kernels_np as _impl

    BACKEND = "numpy"

matmul = _impl.matmul
rank_mod_p = _impl.rank_mod_p
search_rbt = _impl.search_rbt
search_axa = _impl.search_axa
search_mvn = _impl.search_mvn
search_bac = _impl.search_bac
enumerate_idempotents = _impl.enumerate_idempotents

#: default cap on candidate evaluations in any single budgeted search
DEFAULT_BUDGET = 1 << 24
