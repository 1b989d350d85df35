"""Closure kernel selection.

The compiled backend is used when its extension module built successfully
and MVTENSOR_PURE is not set; it bails out with OverflowError on value
ranges it cannot handle exactly (numerator or denominator >= 2**31), in
which case the call is transparently retried on the pure backend so results
are always exact.
"""

import os

from . import pure

_fast = None
if not os.environ.get("MVTENSOR_PURE"):
    try:
        from . import _fast  # type: ignore[no-redef]
    except ImportError:
        _fast = None

BACKEND = _fast.BACKEND if _fast is not None else pure.BACKEND


def close_generators(gens, n_points, with_prod, scalars, cap):
    if _fast is not None:
        try:
            return _fast.close_generators(gens, n_points, with_prod, scalars, cap)
        except OverflowError:
            pass
    return pure.close_generators(gens, n_points, with_prod, scalars, cap)


def backends():
    """Available backends, fastest first."""
    out = []
    if _fast is not None:
        out.append(_fast)
    out.append(pure)
    return out
