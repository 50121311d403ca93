"""Pick the compiled kernel when it is importable, else the pure-Python one.

Set ``TILEGRAPH_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from . import _pykernel

try:
    if os.environ.get("TILEGRAPH_PURE_PYTHON"):
        raise ImportError("forced pure-Python kernel")
    from . import _ckernel
except ImportError:
    _ckernel = None

BACKEND = "cython" if _ckernel is not None else "python"


def available_backends() -> tuple[str, ...]:
    return ("cython", "python") if _ckernel is not None else ("python",)

# Entries larger than this make an early overflow likely; skip the int64 try.
_SAFE = 2**40


def _fits(rows) -> bool:
    return all(-_SAFE < x < _SAFE for row in rows for x in row)


def _to_array(rows, ncols):
    if not rows:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.ascontiguousarray(np.array(rows, dtype=np.int64).reshape(len(rows), ncols))


def diagonalize(A, row_targets=None, col_targets=None, inv_targets=None, backend=None):
    """Diagonalise ``A`` (list of lists, replaced in place) mirroring targets.

    Targets are lists of lists and are updated in place too.  The compiled
    kernel is tried first on int64 copies; on overflow the exact bigint
    kernel reruns from the untouched originals.
    """
    backend = backend or BACKEND
    if backend not in ("cython", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    mats = [A, row_targets, col_targets, inv_targets]
    m = len(A)
    n = len(A[0]) if m else 0
    if backend == "cython" and _ckernel is not None and m and n and all(_fits(x) for x in mats if x is not None):
        arrays = [None if x is None else _to_array(x, len(x[0]) if x else 0) for x in mats]
        if all(a is None or a.shape[1] > 0 for a in arrays[1:]):
            try:
                diag = _ckernel.diagonalize(arrays[0], arrays[1], arrays[2], arrays[3])
            except OverflowError:
                pass
            else:
                for dst, arr in zip(mats, arrays):
                    if dst is not None:
                        dst[:] = arr.tolist()
                return diag
    return _pykernel.diagonalize(A, row_targets, col_targets, inv_targets)
