"""Two-dimensional dual-tree complex wavelet transform.

Four separable decimated DWTs are run, one for every combination of
tree ``a``/``b`` on rows and on columns. At every level the three real
detail bands of the four trees are combined into six complex bands::

    (+theta) = ((aa - bb) + i (ab + ba)) / sqrt(2)
    (-theta) = ((aa + bb) + i (ab - ba)) / sqrt(2)

where ``ab`` means tree ``a`` along rows and tree ``b`` along columns.
LH bands give the +-15 degree pair, HH +-45 and HL +-75. The pairing
is orthogonal, so the inverse unpairs, inverts each tree and averages.

Two filter sets are provided:

``qshift``
    13/19-tap near-symmetric biorthogonal filters at level 1 (tree ``b``
    delayed by one sample) and the 14-tap quarter-shift orthonormal
    filters beyond; tree ``b`` uses the time reverse of tree ``a``.
``original``
    the same level-1 filters, then odd-length filters in tree ``a`` and
    even-length 12/16-tap filters in tree ``b`` (a half-sample-delayed
    least-squares match to the odd pair).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from wavefuse.core import Image, crop, pad_to_multiple
from wavefuse.dwt import (
    as_samples,
    check_levels,
    circular_shift,
    forward_multilevel,
    inverse_multilevel,
    origin_of,
    relative_change,
)
from wavefuse.filterbank import SQRT2, FilterBank

ORIENTATIONS = (15, 45, 75, -15, -45, -75)
TREES = ("aa", "ab", "ba", "bb")
VARIANTS = ("qshift", "original")

# Kingsbury's near-symmetric (13, 19)-tap pair; first half up to the centre tap.
_NEAR_SYM_B_H0 = [
    -0.0017578125, 0.0, 0.022265625, -0.046875, -0.0482421875, 0.296875, 0.55546875,
]
_NEAR_SYM_B_G0 = [
    7.062639508928571e-05, 0.0, -0.0013419015066964285, -0.0018833705357142855,
    0.007156808035714285, 0.023856026785714284, -0.05564313616071428,
    -0.05168805803571428, 0.29975760323660716, 0.5594308035714286,
]

# Kingsbury's 14-tap quarter-shift low-pass filter (tree a, analysis),
# nudged by < 2e-7 so orthonormality and the zero at z = -1 hold to
# double precision (the published digits leave a 1e-6 DC leak in h1).
_QSHIFT_B_H0 = [
    0.003253131453937847, -0.003883200384190764, 0.03466023000825229,
    -0.03887268833066861, -0.11720401465701728, 0.27529548310269075,
    0.7561455337234387, 0.568810532359082, 0.01186597400431466,
    -0.10671169218758103, 0.02382538268820878, 0.01702522337003519,
    -0.005439456034587537, -0.004556876742820043,
]

# Even-length symmetric 12/16-tap pair for tree b of the original variant;
# first halves. Designed so the pair is exactly half-band.
_EVEN_12_H0 = [
    -0.009149850689023723, 0.022600852586604412, 0.004940919568656242,
    -0.11912647670250653, 0.1278217578679181, 0.6810294737014432,
]
_EVEN_16_G0 = [
    -0.0007875490395531492, -0.0019453082189191736, 0.0042904160471303075,
    0.019800693764337136, 9.61778363806521e-05, -0.13072253041027662,
    0.12883011523846527, 0.6865363111051506,
]


def _symmetric(half, odd):
    half = np.asarray(half, dtype=np.float64)
    tail = half[-2::-1] if odd else half[::-1]
    return np.concatenate([half, tail])


def _modulate(f):
    return f * (-1.0) ** np.arange(len(f))


def _pad(f, n):
    return np.concatenate([np.zeros(n), f])


def _near_sym_b() -> FilterBank:
    h0 = _symmetric(_NEAR_SYM_B_H0, odd=True) * SQRT2
    g0 = _symmetric(_NEAR_SYM_B_G0, odd=True) * SQRT2
    h1 = -_modulate(g0)
    g1 = _modulate(h0)
    # low-pass channels centred on tap 9, high-pass on tap 10
    return FilterBank.biorthogonal("near_sym_b", _pad(h0, 3), _pad(h1, 1), g0[::-1], _pad(g1[::-1], 4))


def _qshift_b():
    h0 = np.asarray(_QSHIFT_B_H0)
    n = np.arange(len(h0))
    h1 = (-1.0) ** n * h0[::-1]
    tree_a = FilterBank("qshift_b_a", h0, h1, h0[::-1], h1[::-1])
    tree_b = FilterBank("qshift_b_b", h0[::-1], h1[::-1], h0, h1)
    return tree_a, tree_b


def _even_12_16() -> FilterBank:
    h0 = _symmetric(_EVEN_12_H0, odd=False)
    g0 = _symmetric(_EVEN_16_G0, odd=False)
    h1 = -_modulate(g0)
    # low-pass lags tree a by half a sample; the antisymmetric high-pass
    # keeps tree a's delay so its 90 degree phase offset is not smeared
    return FilterBank.biorthogonal(
        "even_12_16", _pad(h0, 5), _pad(h1, 3), _pad(g0[::-1], 3), _pad(_modulate(h0)[::-1], 5)
    )


@dataclass(frozen=True)
class DualTreeFilterSet:
    variant: str
    level1_a: FilterBank
    level1_b: FilterBank
    higher_a: FilterBank
    higher_b: FilterBank

    def tree_banks(self, tree: str, levels: int):
        first = self.level1_a if tree == "a" else self.level1_b
        rest = self.higher_a if tree == "a" else self.higher_b
        return [first] + [rest] * (levels - 1)


def dualtree_filters(variant: str = "qshift") -> DualTreeFilterSet:
    """Filter set for ``"qshift"`` or ``"original"``."""
    level1 = _near_sym_b()
    level1_b = level1.delayed(1, "near_sym_b+1")
    if variant == "qshift":
        qa, qb = _qshift_b()
        return DualTreeFilterSet("qshift", level1, level1_b, qa, qb)
    if variant == "original":
        return DualTreeFilterSet("original", level1, level1_b, level1.delayed(1, "near_sym_b+1"), _even_12_16())
    raise ValueError(f"unknown dual-tree variant {variant!r}; choose from {', '.join(VARIANTS)}")


@dataclass(frozen=True)
class ComplexPyramid:
    """Dual-tree decomposition.

    ``approx`` maps each tree combination (``"aa"``, ``"ab"``, ``"ba"``,
    ``"bb"``) to its coarsest low-pass band. ``oriented[j]`` holds the six
    complex bands of level ``j + 1`` in :data:`ORIENTATIONS` order.
    """

    approx: dict
    oriented: tuple
    variant: str
    origin_size: tuple[int, int]
    padded_size: tuple[int, int] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "oriented", tuple(tuple(o) for o in self.oriented))
        if self.padded_size is None:
            object.__setattr__(self, "padded_size", tuple(self.origin_size))

    @property
    def levels(self) -> int:
        return len(self.oriented)

    def real_coefficient_count(self) -> int:
        """Number of real values stored (a complex value counts twice)."""
        n = sum(np.size(a) for a in self.approx.values())
        for level in self.oriented:
            n += sum(2 * np.size(b) for b in level)
        return n


def _pair(aa, ab, ba, bb):
    s = 1 / SQRT2
    return (aa - bb) * s + 1j * (ab + ba) * s, (aa + bb) * s + 1j * (ab - ba) * s


def _unpair(plus, minus):
    s = 1 / SQRT2
    aa = (plus.real + minus.real) * s
    bb = (minus.real - plus.real) * s
    ab = (plus.imag + minus.imag) * s
    ba = (plus.imag - minus.imag) * s
    return aa, ab, ba, bb


def dtcwt2_forward(img, filters: DualTreeFilterSet | None = None, levels: int = 4) -> ComplexPyramid:
    if filters is None:
        filters = dualtree_filters("qshift")
    x = as_samples(img)
    check_levels(x.shape, levels)
    padded = pad_to_multiple(x, 2**levels)
    approx = {}
    real_details = {}
    for tree in TREES:
        rows = filters.tree_banks(tree[0], levels)
        cols = filters.tree_banks(tree[1], levels)
        approx[tree], real_details[tree] = forward_multilevel(padded, rows, cols)
    oriented = []
    for j in range(levels):
        plus, minus = [], []
        for band in range(3):  # LH, HL, HH
            p, m = _pair(*(real_details[t][j][band] for t in TREES))
            plus.append(p)
            minus.append(m)
        # LH -> 15, HH -> 45, HL -> 75
        oriented.append((plus[0], plus[2], plus[1], minus[0], minus[2], minus[1]))
    return ComplexPyramid(
        approx,
        oriented,
        variant=filters.variant,
        origin_size=origin_of(img),
        padded_size=(padded.shape[1], padded.shape[0]),
    )


def _check_complex_pyramid(p: ComplexPyramid) -> None:
    if set(p.approx) != set(TREES):
        raise ValueError(f"malformed pyramid: approximation trees {sorted(p.approx)}")
    shape = np.shape(p.approx["aa"])
    if any(np.shape(a) != shape for a in p.approx.values()):
        raise ValueError("malformed pyramid: approximation bands differ in shape")
    if p.levels < 1:
        raise ValueError("malformed pyramid: no detail levels")
    for j, level in enumerate(p.oriented, start=1):
        if len(level) != 6:
            raise ValueError(f"malformed pyramid: level {j} has {len(level)} oriented bands")
        want = (shape[0] * 2 ** (p.levels - j), shape[1] * 2 ** (p.levels - j))
        if any(np.shape(b) != want for b in level):
            raise ValueError(f"malformed pyramid: level {j} band shape, expected {want}")


def dtcwt2_inverse(p: ComplexPyramid, filters: DualTreeFilterSet | None = None) -> Image:
    """Invert each real tree and average the four reconstructions."""
    _check_complex_pyramid(p)
    if filters is None:
        filters = dualtree_filters(p.variant)
    levels = p.levels
    trees = {t: [] for t in TREES}
    for level in p.oriented:
        p15, p45, p75, m15, m45, m75 = (np.asarray(b, dtype=np.complex128) for b in level)
        lh = _unpair(p15, m15)
        hl = _unpair(p75, m75)
        hh = _unpair(p45, m45)
        for i, t in enumerate(TREES):
            trees[t].append((lh[i], hl[i], hh[i]))
    total = 0.0
    for t in TREES:
        rows = filters.tree_banks(t[0], levels)
        cols = filters.tree_banks(t[1], levels)
        total = total + inverse_multilevel(np.asarray(p.approx[t], dtype=np.float64), trees[t], rows, cols)
    return Image(crop(total / 4.0, p.origin_size))


def oriented_energies(p: ComplexPyramid) -> np.ndarray:
    """Magnitude energy per oriented band, shape ``(levels, 6)``."""
    return np.array([[math.fsum(np.ravel(np.abs(b) ** 2)) for b in level] for level in p.oriented])


def shift_invariance_score(img, filters: DualTreeFilterSet | None, shift, levels: int = 4) -> np.ndarray:
    """Relative change of each oriented band's magnitude energy under a circular shift."""
    dx, dy = shift
    if abs(dx) > 4 or abs(dy) > 4:
        raise ValueError(f"shift components must be within +-4, got {shift}")
    x = as_samples(img)
    e0 = oriented_energies(dtcwt2_forward(x, filters, levels))
    e1 = oriented_energies(dtcwt2_forward(circular_shift(x, shift), filters, levels))
    return relative_change(e0, e1)
