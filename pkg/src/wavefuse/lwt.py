"""Integer lifting wavelet transform (LeGall 5/3), exactly reversible.

One lifting step on a periodic integer signal ``x``::

    high[k] = x[2k+1] - floor((x[2k] + x[2k+2]) / 2)          # predict
    low[k]  = x[2k]   + floor((high[k-1] + high[k] + 2) / 4)  # update

The inverse replays the steps backwards with the signs flipped, so it
reproduces integer input bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from wavefuse.core import Image, crop, pad_to_multiple
from wavefuse.dwt import Pyramid, as_samples, check_decimated_chain, check_levels, origin_of
from wavefuse.kernels import lift_forward_axis, lift_inverse_axis


@dataclass(frozen=True)
class LiftingScheme:
    name: str
    predict_taps: tuple
    update_taps: tuple
    rounding: str


LEGALL53 = LiftingScheme(
    name="legall53",
    predict_taps=(Fraction(-1, 2), Fraction(-1, 2)),
    update_taps=(Fraction(1, 4), Fraction(1, 4)),
    rounding="floor",
)

SCHEMES = {"legall53": LEGALL53}


def _check_scheme(scheme):
    if scheme is not LEGALL53 and getattr(scheme, "name", scheme) != "legall53":
        raise ValueError(f"unsupported lifting scheme {scheme!r}")


def _as_int(x, what="signal") -> np.ndarray:
    arr = np.asarray(x)
    if arr.dtype.kind in "iu":
        return arr.astype(np.int64)
    arr = np.asarray(arr, dtype=np.float64)
    rounded = np.rint(arr)
    if not np.array_equal(rounded, arr):
        raise ValueError(f"{what} must be integer-valued")
    return rounded.astype(np.int64)


def lift_forward_1d(signal, scheme: LiftingScheme = LEGALL53):
    """Split/predict/update on an even-length integer signal -> ``(low, high)``."""
    _check_scheme(scheme)
    x = _as_int(signal)
    if x.ndim != 1 or x.size < 2 or x.size % 2:
        raise ValueError(f"signal length must be even and >= 2, got {x.size}")
    low, high = lift_forward_axis(x[None, :], 1)
    return low[0], high[0]


def lift_inverse_1d(low, high, scheme: LiftingScheme = LEGALL53):
    _check_scheme(scheme)
    lo = _as_int(low, "low band")
    hi = _as_int(high, "high band")
    if lo.shape != hi.shape or lo.ndim != 1:
        raise ValueError(f"low/high length mismatch: {lo.shape} vs {hi.shape}")
    return lift_inverse_axis(lo[None, :], hi[None, :], 1)[0]


def lwt2_forward(img, scheme: LiftingScheme = LEGALL53, levels: int = 4) -> Pyramid:
    """Separable integer lifting, rows then columns, recursing on LL."""
    _check_scheme(scheme)
    x = _as_int(as_samples(img), "image")
    check_levels(x.shape, levels)
    padded = pad_to_multiple(x, 2**levels)
    approx = padded
    details = []
    for _ in range(levels):
        lo, hi = lift_forward_axis(approx, 1)
        ll, lh = lift_forward_axis(lo, 0)
        hl, hh = lift_forward_axis(hi, 0)
        details.append((lh, hl, hh))
        approx = ll
    return Pyramid(
        approx,
        details,
        kind="lifted",
        bank_name=scheme.name,
        origin_size=origin_of(img),
        padded_size=(padded.shape[1], padded.shape[0]),
    )


def lwt2_inverse(p: Pyramid) -> Image:
    if p.kind != "lifted":
        raise ValueError(f"expected a lifted pyramid, got kind={p.kind!r}")
    check_decimated_chain(p.approx, p.details)
    x = _as_int(p.approx, "approximation band")
    for lh, hl, hh in reversed(p.details):
        lo = lift_inverse_axis(x, _as_int(lh, "detail band"), 0)
        hi = lift_inverse_axis(_as_int(hl, "detail band"), _as_int(hh, "detail band"), 0)
        x = lift_inverse_axis(lo, hi, 1)
    return Image(crop(x, p.origin_size))
