"""Kernel backend selection.

The numba backend is used when available; set INTERP_LAB_NO_NUMBA=1 to force
the pure-numpy fallback. Both backends expose the same functions and the
branch-and-bound / naive equivalence holds bit-for-bit within either backend.
"""

import os

_disabled = os.environ.get("INTERP_LAB_NO_NUMBA", "").lower() in ("1", "true", "yes")

if not _disabled:
    try:
        from ._numba import (
            BACKEND,
            cross_holder_sup,
            edt_1d_sq,
            pairwise_holder_sup,
            split_holder_sups,
        )
    except ImportError:
        _disabled = True

if _disabled:
    from ._numpy import (  # noqa: F811
        BACKEND,
        cross_holder_sup,
        edt_1d_sq,
        pairwise_holder_sup,
        split_holder_sups,
    )

__all__ = [
    "BACKEND",
    "cross_holder_sup",
    "edt_1d_sq",
    "pairwise_holder_sup",
    "split_holder_sups",
]
