"""Coefficient-domain fusion of two registered images.

``fused = inverse(rule(forward(img1), forward(img2)))``: detail
coefficients are chosen by larger magnitude (the first input wins ties)
and the approximation band is averaged unless ``approx_rule`` says
otherwise.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from wavefuse.core import Image
from wavefuse.dtcwt import ComplexPyramid, dtcwt2_forward, dtcwt2_inverse, dualtree_filters
from wavefuse.dwt import Pyramid, as_samples, dwt2_forward, dwt2_inverse
from wavefuse.filterbank import builtin_bank
from wavefuse.lwt import LEGALL53, lwt2_forward, lwt2_inverse
from wavefuse.swt import swt2_forward, swt2_inverse

METHODS = ("dwt", "swt", "ilwt", "dtcwt", "qshift")
METHOD_LABELS = {
    "dwt": "DWT",
    "swt": "SWT",
    "ilwt": "ILWT",
    "dtcwt": "DT-CWT",
    "qshift": "Q-shift DT-CWT",
}
_ALIASES = {"qshift_dtcwt": "qshift", "lwt": "ilwt"}
RULES = ("max_magnitude", "average")


class DimensionMismatchError(ValueError):
    """The two source images differ in size."""


class NumericalFailure(ArithmeticError):
    """A transform produced non-finite coefficients."""


@dataclass(frozen=True)
class FusionRule:
    detail_rule: str = "max_magnitude"
    approx_rule: str = "average"

    def __post_init__(self):
        if self.detail_rule != "max_magnitude":
            raise ValueError(f"unsupported detail rule {self.detail_rule!r}")
        if self.approx_rule not in RULES:
            raise ValueError(f"unsupported approximation rule {self.approx_rule!r}")


@dataclass(frozen=True)
class Method:
    """One fusion transform: ``variant`` plus its parameters.

    ``bank`` only matters for ``dwt`` and ``swt``.
    """

    variant: str
    levels: int = 4
    bank: str = "db4"

    def __post_init__(self):
        variant = _ALIASES.get(self.variant, self.variant)
        if variant not in METHODS:
            raise ValueError(f"unknown method {self.variant!r}; choose from {', '.join(METHODS)}")
        object.__setattr__(self, "variant", variant)

    @property
    def label(self) -> str:
        return METHOD_LABELS[self.variant]


def fuse_bands(a, b, rule: str = "max_magnitude"):
    """Combine two coefficient arrays.

    ``max_magnitude`` keeps whichever value has the larger absolute value
    (complex values are kept whole); on a tie ``a`` wins. ``average``
    takes the mean, using floor division for integer arrays.

    >>> fuse_bands(np.array([3, -5]), np.array([-4, 2])).tolist()
    [-4, -5]
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"band shapes differ: {a.shape} vs {b.shape}")
    if rule == "max_magnitude":
        return np.where(np.abs(b) > np.abs(a), b, a)
    if rule == "average":
        if a.dtype.kind in "iu" and b.dtype.kind in "iu":
            return (a.astype(np.int64) + b.astype(np.int64)) >> 1
        return (a + b) / 2
    raise ValueError(f"unknown rule {rule!r}")


def decompose(img, method: Method):
    x = as_samples(img)
    v = method.variant
    if v == "dwt":
        return dwt2_forward(x, builtin_bank(method.bank), method.levels)
    if v == "swt":
        return swt2_forward(x, builtin_bank(method.bank), method.levels)
    if v == "ilwt":
        return lwt2_forward(x, LEGALL53, method.levels)
    return dtcwt2_forward(x, dualtree_filters("original" if v == "dtcwt" else "qshift"), method.levels)


def reconstruct(p, method: Method) -> Image:
    v = method.variant
    if v == "dwt":
        return dwt2_inverse(p, builtin_bank(method.bank))
    if v == "swt":
        return swt2_inverse(p, builtin_bank(method.bank))
    if v == "ilwt":
        return lwt2_inverse(p)
    return dtcwt2_inverse(p, dualtree_filters("original" if v == "dtcwt" else "qshift"))


def fuse_pyramids(p1, p2, rule: FusionRule = FusionRule()):
    """Band-by-band combination of two pyramids of the same structure."""
    if isinstance(p1, ComplexPyramid):
        approx = {t: fuse_bands(p1.approx[t], p2.approx[t], rule.approx_rule) for t in p1.approx}
        oriented = [
            tuple(fuse_bands(a, b, rule.detail_rule) for a, b in zip(l1, l2))
            for l1, l2 in zip(p1.oriented, p2.oriented)
        ]
        return dataclasses.replace(p1, approx=approx, oriented=oriented)
    if not isinstance(p1, Pyramid):
        raise TypeError(f"cannot fuse {type(p1).__name__}")
    if p1.levels != p2.levels:
        raise ValueError("pyramids have different depths")
    details = [
        tuple(fuse_bands(a, b, rule.detail_rule) for a, b in zip(t1, t2))
        for t1, t2 in zip(p1.details, p2.details)
    ]
    return dataclasses.replace(p1, approx=fuse_bands(p1.approx, p2.approx, rule.approx_rule), details=details)


def _all_finite(p) -> bool:
    if isinstance(p, ComplexPyramid):
        arrays = list(p.approx.values()) + [b for level in p.oriented for b in level]
    else:
        arrays = [p.approx] + [b for trio in p.details for b in trio]
    return all(np.all(np.isfinite(a)) for a in arrays)


def fuse_images(img1, img2, method: Method, rule: FusionRule = FusionRule()) -> Image:
    """Fuse two registered, same-size images; output clamped to [0, 255]."""
    x1 = as_samples(img1)
    x2 = as_samples(img2)
    if x1.shape != x2.shape:
        raise DimensionMismatchError(
            f"source images differ in size: {x1.shape[1]}x{x1.shape[0]} vs {x2.shape[1]}x{x2.shape[0]}"
        )
    p1 = decompose(x1, method)
    p2 = decompose(x2, method)
    if not (_all_finite(p1) and _all_finite(p2)):
        raise NumericalFailure(f"{method.variant}: non-finite coefficient in decomposition")
    out = reconstruct(fuse_pyramids(p1, p2, rule), method).samples
    if not np.all(np.isfinite(out)):
        raise NumericalFailure(f"{method.variant}: non-finite sample in fused image")
    return Image(np.clip(out, 0.0, 255.0))
