"""Fusion quality metrics: entropy, RMSE, PSNR, global quality index, SD.

All metrics take :class:`~wavefuse.core.Image` objects or 2-D arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from wavefuse.core import quantize_for_output
from wavefuse.dwt import as_samples

PEAK = 255.0
POLICIES = ("mean_of_both", "vs_source1", "vs_source2")


class UndefinedMetricError(ValueError):
    """The metric's denominator vanishes for these inputs."""


def _pair(ref, fused):
    r = as_samples(ref)
    f = as_samples(fused)
    if r.shape != f.shape:
        raise ValueError(f"image sizes differ: {r.shape[1]}x{r.shape[0]} vs {f.shape[1]}x{f.shape[0]}")
    return r, f


def entropy(img) -> float:
    """Shannon entropy in bits of the 256-bin grey-level histogram.

    Samples are rounded half away from zero and clamped to [0, 255]
    before binning, the same quantization used when saving.
    """
    q = quantize_for_output(as_samples(img))
    counts = np.bincount(q.ravel(), minlength=256)
    p = counts[counts > 0] / q.size
    return float(-np.sum(p * np.log2(p))) + 0.0


def rmse(ref, fused) -> float:
    r, f = _pair(ref, fused)
    return float(np.sqrt(np.mean((r - f) ** 2)))


def psnr_from_rmse(value: float) -> float:
    """``10 log10(255^2 / RMSE^2)``; ``inf`` when RMSE is zero."""
    if value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK**2 / value**2)


def psnr(ref, fused) -> float:
    return psnr_from_rmse(rmse(ref, fused))


def iqi(x, y) -> float:
    """Global image quality index ``4 s_xy mx my / ((mx^2 + my^2)(s_x^2 + s_y^2))``.

    Computed once over the whole image (no sliding window). Raises
    :class:`UndefinedMetricError` when the denominator is zero, e.g. for two
    constant images.
    """
    a, b = _pair(x, y)
    mx, my = a.mean(), b.mean()
    # a constant image must have exactly zero spread, not mean-rounding noise
    da = a - mx if np.ptp(a) else np.zeros_like(a)
    db = b - my if np.ptp(b) else np.zeros_like(b)
    vx = np.mean(da**2)
    vy = np.mean(db**2)
    cxy = np.mean(da * db)
    den = (mx**2 + my**2) * (vx + vy)
    if den == 0:
        raise UndefinedMetricError("quality index undefined: zero variance or zero mean in both images")
    return float(np.clip(4 * cxy * mx * my / den, -1.0, 1.0))


def mean_sd(img):
    """``(MEAN, SD)`` with MEAN taken over absolute values and SD in population form."""
    f = as_samples(img)
    mean = float(np.mean(np.abs(f)))
    sd = float(np.sqrt(np.mean((f - mean) ** 2)))
    return mean, sd


@dataclass(frozen=True)
class MetricsReport:
    method_name: str
    entropy_bits: float
    psnr_db: float
    rmse: float
    iqi: float
    sd: float
    reference_policy: str = "mean_of_both"
    raw: dict = field(default_factory=dict, compare=False)

    def row(self):
        """Values in table order: EN, PSNR, RMSE, IQI, SD."""
        return (self.entropy_bits, self.psnr_db, self.rmse, self.iqi, self.sd)


def report(fused, src1, src2, policy: str = "mean_of_both", method_name: str = "") -> MetricsReport:
    """Assemble one row of metrics for ``fused``.

    Entropy and SD describe the fused image alone. RMSE and IQI are
    computed against the source(s) picked by ``policy``; under
    ``mean_of_both`` the two values are averaged. PSNR is always derived
    from the reported RMSE so the two columns stay consistent; the
    per-source values are kept in ``raw``.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown reference policy {policy!r}")
    _pair(src1, fused)
    _pair(src2, fused)
    raw = {}
    for key, src in (("source1", src1), ("source2", src2)):
        r = rmse(src, fused)
        raw[key] = {"rmse": r, "psnr": psnr_from_rmse(r), "iqi": iqi(src, fused)}
    if policy == "vs_source1":
        picked = [raw["source1"]]
    elif policy == "vs_source2":
        picked = [raw["source2"]]
    else:
        picked = [raw["source1"], raw["source2"]]
    r = float(np.mean([p["rmse"] for p in picked]))
    q = float(np.mean([p["iqi"] for p in picked]))
    return MetricsReport(
        method_name=method_name,
        entropy_bits=entropy(fused),
        psnr_db=psnr_from_rmse(r),
        rmse=r,
        iqi=q,
        sd=mean_sd(fused)[1],
        reference_policy=policy,
        raw=raw,
    )
