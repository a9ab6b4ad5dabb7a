"""Decimated 1-D and separable 2-D wavelet transform (Mallat's fast algorithm).

Band naming: each level filters the rows first and the columns second.
``LH`` is low-pass along rows then high-pass along columns, so it
responds to horizontal edges (vertical frequency); ``HL`` responds to
vertical edges and ``HH`` to diagonals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import math

import numpy as np

from wavefuse.core import Image, crop, pad_to_multiple
from wavefuse.filterbank import FilterBank
from wavefuse.kernels import analyze_axis, synthesize_axis

BAND_NAMES = ("LH", "HL", "HH")


@dataclass(frozen=True)
class Pyramid:
    """Multi-level decomposition.

    ``details[0]`` is the finest level; each entry is ``(LH, HL, HH)``.
    ``approx`` is the coarsest low-pass band.
    """

    approx: np.ndarray
    details: tuple
    kind: str
    bank_name: str
    origin_size: tuple[int, int]
    padded_size: tuple[int, int] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "details", tuple(tuple(d) for d in self.details))
        if self.padded_size is None:
            object.__setattr__(self, "padded_size", tuple(self.origin_size))

    @property
    def levels(self) -> int:
        return len(self.details)

    def bands(self):
        """Yield ``(level, name, array)`` for every band, approximation last."""
        for j, trio in enumerate(self.details, start=1):
            for name, band in zip(BAND_NAMES, trio):
                yield j, name, band
        yield self.levels, "LL", self.approx

    def coefficient_count(self) -> int:
        return sum(b.size for _, _, b in self.bands())


def as_samples(img) -> np.ndarray:
    if isinstance(img, Image):
        return np.asarray(img.samples)
    return np.asarray(img, dtype=np.float64)


def origin_of(img) -> tuple[int, int]:
    if isinstance(img, Image):
        return img.origin_size
    h, w = np.shape(img)
    return (w, h)


def check_levels(shape, levels: int) -> None:
    """Reject depths where a band would need more than one halving per sample."""
    if int(levels) != levels or levels < 1:
        raise ValueError(f"levels must be a positive integer, got {levels!r}")
    if 2**levels > min(shape):
        raise ValueError(
            f"{levels} levels is too deep for a {shape[1]}x{shape[0]} image "
            f"(needs min dimension >= {2**levels})"
        )


# -- 1-D -------------------------------------------------------------------


def analyze_1d(signal, bank: FilterBank):
    """One analysis step on an even-length periodic signal -> ``(approx, detail)``."""
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1 or x.size < 2 or x.size % 2:
        raise ValueError(f"signal length must be even and >= 2, got {x.size}")
    row = x[None, :]
    return analyze_axis(row, bank.h0, 1)[0], analyze_axis(row, bank.h1, 1)[0]


def synthesize_1d(approx, detail, bank: FilterBank):
    """Inverse of :func:`analyze_1d`."""
    a = np.asarray(approx, dtype=np.float64)
    d = np.asarray(detail, dtype=np.float64)
    if a.shape != d.shape or a.ndim != 1:
        raise ValueError(f"approx/detail length mismatch: {a.shape} vs {d.shape}")
    return synthesize_axis(a[None, :], bank.dual0, 1)[0] + synthesize_axis(d[None, :], bank.dual1, 1)[0]


# -- separable 2-D ---------------------------------------------------------


def analyze_level(x, row_bank: FilterBank, col_bank: FilterBank):
    """One separable level -> ``(LL, LH, HL, HH)``."""
    lo = analyze_axis(x, row_bank.h0, 1)
    hi = analyze_axis(x, row_bank.h1, 1)
    return (
        analyze_axis(lo, col_bank.h0, 0),
        analyze_axis(lo, col_bank.h1, 0),
        analyze_axis(hi, col_bank.h0, 0),
        analyze_axis(hi, col_bank.h1, 0),
    )


def synthesize_level(ll, lh, hl, hh, row_bank: FilterBank, col_bank: FilterBank):
    lo = synthesize_axis(ll, col_bank.dual0, 0) + synthesize_axis(lh, col_bank.dual1, 0)
    hi = synthesize_axis(hl, col_bank.dual0, 0) + synthesize_axis(hh, col_bank.dual1, 0)
    return synthesize_axis(lo, row_bank.dual0, 1) + synthesize_axis(hi, row_bank.dual1, 1)


def forward_multilevel(x, row_banks, col_banks):
    """Run the separable analysis with per-level banks; returns ``(approx, details)``."""
    details = []
    approx = x
    for rb, cb in zip(row_banks, col_banks):
        approx, lh, hl, hh = analyze_level(approx, rb, cb)
        details.append((lh, hl, hh))
    return approx, details


def inverse_multilevel(approx, details, row_banks, col_banks):
    x = approx
    for (lh, hl, hh), rb, cb in reversed(list(zip(details, row_banks, col_banks))):
        x = synthesize_level(x, lh, hl, hh, rb, cb)
    return x


def check_decimated_chain(approx, details) -> None:
    levels = len(details)
    if levels < 1:
        raise ValueError("malformed pyramid: no detail levels")
    ah, aw = np.shape(approx)
    for j, trio in enumerate(details, start=1):
        want = (ah * 2 ** (levels - j), aw * 2 ** (levels - j))
        for name, band in zip(BAND_NAMES, trio):
            if np.shape(band) != want:
                raise ValueError(
                    f"malformed pyramid: level {j} {name} has shape {np.shape(band)}, expected {want}"
                )


def dwt2_forward(img, bank: FilterBank, levels: int = 4) -> Pyramid:
    """Decimated 2-D DWT. Inputs are periodically padded to a multiple of ``2**levels``."""
    x = as_samples(img)
    check_levels(x.shape, levels)
    padded = pad_to_multiple(x, 2**levels)
    approx, details = forward_multilevel(padded, [bank] * levels, [bank] * levels)
    return Pyramid(
        approx,
        details,
        kind="decimated",
        bank_name=bank.name,
        origin_size=origin_of(img),
        padded_size=(padded.shape[1], padded.shape[0]),
    )


def dwt2_inverse(p: Pyramid, bank: FilterBank | None = None) -> Image:
    """Reconstruct and crop to ``p.origin_size``.

    ``bank`` defaults to the builtin bank named in the pyramid.
    """
    if p.kind != "decimated":
        raise ValueError(f"expected a decimated pyramid, got kind={p.kind!r}")
    check_decimated_chain(p.approx, p.details)
    if bank is None:
        from wavefuse.filterbank import builtin_bank

        bank = builtin_bank(p.bank_name)
    x = inverse_multilevel(p.approx, p.details, [bank] * p.levels, [bank] * p.levels)
    return Image(crop(x, p.origin_size))


# -- shift behaviour -------------------------------------------------------


def band_energies(p: Pyramid) -> np.ndarray:
    """Energy of every band in :meth:`Pyramid.bands` order.

    Sums are exactly rounded, so permuting a band's samples (e.g. a circular
    shift) leaves its energy bit-identical.
    """
    return np.array([math.fsum(np.ravel(np.abs(b) ** 2)) for _, _, b in p.bands()])


def relative_change(before, after) -> np.ndarray:
    """``|after - before| / before`` elementwise, with 0/0 taken as 0."""
    before = np.asarray(before, dtype=np.float64)
    after = np.asarray(after, dtype=np.float64)
    diff = np.abs(after - before)
    out = np.zeros_like(diff)
    nz = before > 0
    out[nz] = diff[nz] / before[nz]
    out[~nz & (diff > 0)] = np.inf
    return out


def circular_shift(img, shift) -> np.ndarray:
    """Shift samples by ``(dx, dy)`` with wrap-around."""
    dx, dy = shift
    return np.roll(as_samples(img), (dy, dx), axis=(0, 1))


def shift_variance_demo(img, bank: FilterBank, levels: int = 1, shift=(1, 0)):
    """Band energies of ``img`` and of its circular shift by ``shift``."""
    x = as_samples(img)
    if min(x.shape) < 8:
        raise ValueError("shift_variance_demo needs an image of at least 8x8")
    e0 = band_energies(dwt2_forward(x, bank, levels))
    e1 = band_energies(dwt2_forward(circular_shift(x, shift), bank, levels))
    return e0, e1


def shift_invariance_score(img, bank: FilterBank, shift, levels: int = 4) -> np.ndarray:
    """Relative energy change of every detail band under a circular shift.

    Shape ``(levels, 3)``, columns ordered LH, HL, HH.
    """
    e0, e1 = shift_variance_demo(img, bank, levels, shift)
    return relative_change(e0[:-1], e1[:-1]).reshape(levels, 3)
