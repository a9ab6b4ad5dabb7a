"""Stationary (undecimated) 2-D wavelet transform via the à-trous algorithm.

Level ``j`` filters are the level-1 filters with ``2**(j-1) - 1`` zeros
inserted between taps; nothing is decimated, so every band has the
input's size and the transform commutes with circular shifts.

The inverse averages over all decimation phases. For an orthonormal
bank ``H0^T H0 + H1^T H1 = 2 I`` at every dilation, so each level is
undone by the adjoint filters scaled by 1/2 per axis.
"""

from __future__ import annotations

import numpy as np

from wavefuse.core import Image, crop
from wavefuse.dwt import (
    Pyramid,
    as_samples,
    band_energies,
    check_levels,
    circular_shift,
    origin_of,
    relative_change,
)
from wavefuse.filterbank import FilterBank, builtin_bank
from wavefuse.kernels import atrous_adjoint_axis, atrous_axis


def swt2_forward(img, bank: FilterBank, levels: int = 4) -> Pyramid:
    """Undecimated 2-D transform; all bands keep the input shape."""
    if not bank.orthonormal:
        raise ValueError("the stationary transform needs an orthonormal bank")
    x = as_samples(img)
    check_levels(x.shape, levels)
    approx = x
    details = []
    for j in range(levels):
        dil = 2**j
        lo = atrous_axis(approx, bank.h0, dil, 1)
        hi = atrous_axis(approx, bank.h1, dil, 1)
        details.append(
            (
                atrous_axis(lo, bank.h1, dil, 0),
                atrous_axis(hi, bank.h0, dil, 0),
                atrous_axis(hi, bank.h1, dil, 0),
            )
        )
        approx = atrous_axis(lo, bank.h0, dil, 0)
    return Pyramid(approx, details, kind="undecimated", bank_name=bank.name, origin_size=origin_of(img))


def swt2_inverse(p: Pyramid, bank: FilterBank | None = None) -> Image:
    if p.kind != "undecimated":
        raise ValueError(f"expected an undecimated pyramid, got kind={p.kind!r}")
    shape = np.shape(p.approx)
    if p.levels < 1:
        raise ValueError("malformed pyramid: no detail levels")
    for j, trio in enumerate(p.details, start=1):
        for band in trio:
            if np.shape(band) != shape:
                raise ValueError(f"malformed pyramid: level {j} band shape {np.shape(band)} != {shape}")
    if bank is None:
        bank = builtin_bank(p.bank_name)
    x = np.asarray(p.approx, dtype=np.float64)
    for j in reversed(range(p.levels)):
        dil = 2**j
        lh, hl, hh = p.details[j]
        lo = atrous_adjoint_axis(x, bank.h0, dil, 0) + atrous_adjoint_axis(lh, bank.h1, dil, 0)
        hi = atrous_adjoint_axis(hl, bank.h0, dil, 0) + atrous_adjoint_axis(hh, bank.h1, dil, 0)
        x = 0.25 * (atrous_adjoint_axis(lo, bank.h0, dil, 1) + atrous_adjoint_axis(hi, bank.h1, dil, 1))
    return Image(crop(x, p.origin_size))


def shift_variance_demo(img, bank: FilterBank, levels: int = 1, shift=(1, 0)):
    """SWT counterpart of :func:`wavefuse.dwt.shift_variance_demo`."""
    x = as_samples(img)
    if min(x.shape) < 8:
        raise ValueError("shift_variance_demo needs an image of at least 8x8")
    e0 = band_energies(swt2_forward(x, bank, levels))
    e1 = band_energies(swt2_forward(circular_shift(x, shift), bank, levels))
    return e0, e1


def shift_invariance_score(img, bank: FilterBank, shift, levels: int = 4) -> np.ndarray:
    """Relative detail-band energy change under a circular shift, shape ``(levels, 3)``."""
    e0, e1 = shift_variance_demo(img, bank, levels, shift)
    return relative_change(e0[:-1], e1[:-1]).reshape(levels, 3)
