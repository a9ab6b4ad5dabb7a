"""Backend selection for the periodic filter-bank kernels.

The compiled extension is used when it was built; otherwise the numpy
fallback is loaded. Setting ``WAVEFUSE_PURE_PYTHON=1`` forces the
fallback. ``BACKEND`` names the active implementation.
"""

import os

import numpy as np

BACKEND = "python"

if os.environ.get("WAVEFUSE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from wavefuse import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = None

if BACKEND == "python":
    from wavefuse import _pykernels as _impl

__all__ = [
    "BACKEND",
    "analyze_axis",
    "synthesize_axis",
    "atrous_axis",
    "atrous_adjoint_axis",
    "lift_forward_axis",
    "lift_inverse_axis",
]


def _along(func, arr, axis, *args):
    if axis in (1, -1):
        return func(arr, *args)
    out = func(np.ascontiguousarray(arr.T), *args)
    if isinstance(out, tuple):
        return tuple(o.T for o in out)
    return out.T


def analyze_axis(x, h, axis):
    return _along(_impl.analyze, x, axis, h)


def synthesize_axis(c, d, axis):
    return _along(_impl.synthesize, c, axis, d)


def atrous_axis(x, h, dilation, axis):
    return _along(_impl.atrous, x, axis, h, dilation)


def atrous_adjoint_axis(y, h, dilation, axis):
    return _along(_impl.atrous_adjoint, y, axis, h, dilation)


def lift_forward_axis(x, axis):
    return _along(_impl.lift53_forward, x, axis)


def lift_inverse_axis(low, high, axis):
    if axis in (1, -1):
        return _impl.lift53_inverse(low, high)
    return _impl.lift53_inverse(
        np.ascontiguousarray(low.T), np.ascontiguousarray(high.T)
    ).T
