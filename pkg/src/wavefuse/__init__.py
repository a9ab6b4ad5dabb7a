"""Wavelet-domain fusion of registered grayscale images.

Five transforms (decimated DWT, stationary SWT, integer lifting, and two
dual-tree complex transforms) share one max-magnitude fusion rule and a
set of quality metrics.
"""

from wavefuse.core import Image, load_image, save_image
from wavefuse.fusion import FusionRule, Method, fuse_images
from wavefuse.kernels import BACKEND
from wavefuse.metrics import MetricsReport, entropy, iqi, mean_sd, psnr, report, rmse

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FusionRule",
    "Image",
    "Method",
    "MetricsReport",
    "entropy",
    "fuse_images",
    "iqi",
    "load_image",
    "mean_sd",
    "psnr",
    "report",
    "rmse",
    "save_image",
]
