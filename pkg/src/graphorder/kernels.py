"""Backend selection for the inner loops.

The compiled extension is used when it imports; setting
``GRAPHORDER_PURE_PYTHON=1`` forces the numpy fallback.
"""

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("GRAPHORDER_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"


def available_backends():
    out = {"python": _kernels_py}
    try:
        from . import _kernels as compiled
    except ImportError:
        return out
    out["cython"] = compiled
    return out


def adjacent_equal_counts(seqs):
    """Count neighbouring equal entries in every row of an integer matrix."""
    return _impl.adjacent_equal_counts(np.ascontiguousarray(seqs, dtype=np.int64))


def h2_batch(perms, u, v):
    """H2 objective of every row of ``perms`` for the edge list (u, v)."""
    return _impl.h2_batch(
        np.ascontiguousarray(perms, dtype=np.int64),
        np.ascontiguousarray(u, dtype=np.int64),
        np.ascontiguousarray(v, dtype=np.int64),
    )


def null_flip_histogram(n, k):
    """Exact count, over all ``k**n`` label sequences, of each equal-pair total."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    if n > 64:
        raise ValueError("exhaustive enumeration supports n <= 64")
    return _impl.null_flip_histogram(int(n), int(k))


def lloyd(x, centers, max_iter, tol):
    """Run Lloyd iterations; ``centers`` is updated in place."""
    return _impl.lloyd(x, centers, int(max_iter), float(tol))
