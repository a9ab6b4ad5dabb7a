"""Two-channel perfect-reconstruction filter banks.

Conventions used throughout the package (periodic signals of length W):

* analysis: ``approx[k] = sum_m h0[m] * x[(2k - m) mod W]`` (same for
  ``h1``), i.e. convolution with the filter anchored at its first tap,
  kept at even positions;
* synthesis is the adjoint of analysis run with the *dual* analysis
  filters ``g0[::-1]`` and ``g1[::-1]``. For an orthonormal bank the
  synthesis filters are the time reverse of the analysis filters, so
  synthesis is the exact adjoint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class FilterBank:
    """Analysis (``h0``, ``h1``) and synthesis (``g0``, ``g1``) taps."""

    name: str
    h0: np.ndarray
    h1: np.ndarray
    g0: np.ndarray
    g1: np.ndarray
    orthonormal: bool = True

    def __post_init__(self):
        for attr in ("h0", "h1", "g0", "g1"):
            arr = np.array(getattr(self, attr), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, attr, arr)

    @property
    def dual0(self) -> np.ndarray:
        """Low-pass taps used by the synthesis kernel (time-reversed ``g0``)."""
        return self.g0[::-1]

    @property
    def dual1(self) -> np.ndarray:
        return self.g1[::-1]

    @classmethod
    def orthonormal_from_lowpass(cls, name: str, lowpass) -> "FilterBank":
        """Build an orthonormal bank from its low-pass analysis filter.

        The high-pass filter is the alternating flip
        ``h1[n] = (-1)**n * h0[L-1-n]``; synthesis filters are time reverses.
        """
        h0 = np.asarray(lowpass, dtype=np.float64)
        n = np.arange(len(h0))
        h1 = (-1.0) ** n * h0[::-1]
        return cls(name, h0, h1, h0[::-1], h1[::-1], orthonormal=True)

    @classmethod
    def biorthogonal(cls, name: str, h0, h1, dual0, dual1) -> "FilterBank":
        """Build a bank from analysis filters and their duals (already aligned)."""
        dual0 = np.asarray(dual0, dtype=np.float64)
        dual1 = np.asarray(dual1, dtype=np.float64)
        return cls(name, h0, h1, dual0[::-1], dual1[::-1], orthonormal=False)

    def delayed(self, samples: int, name: str | None = None) -> "FilterBank":
        """Same bank with every filter delayed by ``samples`` (zero padding in front)."""
        pad = np.zeros(samples)
        return FilterBank(
            name or f"{self.name}+{samples}",
            np.concatenate([pad, self.h0]),
            np.concatenate([pad, self.h1]),
            np.concatenate([self.g0, pad]),
            np.concatenate([self.g1, pad]),
            self.orthonormal,
        )


def _haar():
    return FilterBank.orthonormal_from_lowpass("haar", [1 / SQRT2, 1 / SQRT2])


def _db4():
    s3 = np.sqrt(3.0)
    taps = np.array([1 + s3, 3 + s3, 3 - s3, 1 - s3]) / (4 * SQRT2)
    return FilterBank.orthonormal_from_lowpass("db4", taps)


_BUILTIN = {"haar": _haar, "db4": _db4}

BANK_NAMES = tuple(_BUILTIN)


def builtin_bank(name: str) -> FilterBank:
    """Return the orthonormal ``"haar"`` or 4-tap Daubechies ``"db4"`` bank."""
    try:
        return _BUILTIN[name]()
    except KeyError:
        raise ValueError(f"unknown filter bank {name!r}; choose from {', '.join(BANK_NAMES)}") from None


def upsample_taps(f, factor: int) -> np.ndarray:
    """Insert ``factor - 1`` zeros between taps (the à-trous dilation).

    >>> upsample_taps([1.0, 2.0], 2).tolist()
    [1.0, 0.0, 2.0]
    """
    if factor < 1 or factor & (factor - 1):
        raise ValueError(f"upsampling factor must be a power of two, got {factor}")
    f = np.asarray(f, dtype=np.float64)
    out = np.zeros((len(f) - 1) * factor + 1)
    out[::factor] = f
    return out
