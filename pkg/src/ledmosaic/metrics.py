"""Image quality measures: per-channel PSNR, pooled cPSNR, and SSIM.

cPSNR pools the squared error over all pixels of all three channels before
taking the logarithm; it is not the mean of the per-channel PSNRs.  SSIM is
the standard single-scale form with an 11x11 Gaussian window (sigma 1.5) and
stabilizers (0.01*full_scale)^2 and (0.03*full_scale)^2, averaged over valid
window positions; the reported value averages the three channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cfa import RgbImage

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5


@dataclass(frozen=True)
class MetricReport:
    """Quality measures of one reconstruction against its ground truth.

    scielab is reserved for a perceptual color metric that this package does
    not compute; it is always None and serializes as null.
    """

    psnr_r: float
    psnr_g: float
    psnr_b: float
    cpsnr: float
    ssim: float
    shave: int
    scielab: None = None


def shave(image: RgbImage, width: int) -> RgbImage:
    """Central crop removing `width` rows/cols from every side."""
    if width < 0:
        raise ValueError("shave width must be >= 0")
    if width == 0:
        return image
    h, w = image.height, image.width
    if 2 * width >= h or 2 * width >= w:
        raise ValueError(f"shave width {width} leaves no pixels of a {h}x{w} image")
    sl = np.s_[width:h - width, width:w - width]
    return RgbImage(image.r[sl], image.g[sl], image.b[sl], image.full_scale)


def _check_planes(ref, test):
    ref = np.asarray(ref, dtype=np.float64)
    test = np.asarray(test, dtype=np.float64)
    if ref.shape != test.shape:
        raise ValueError(f"plane shapes differ: {ref.shape} vs {test.shape}")
    return ref, test


def psnr(ref, test, full_scale: float = 255.0) -> float:
    """10*log10(full_scale^2 / MSE); identical planes give +inf."""
    ref, test = _check_planes(ref, test)
    diff = ref - test
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(full_scale * full_scale / mse)


def cpsnr(ref: RgbImage, test: RgbImage) -> float:
    """PSNR with the MSE pooled over all pixels of all three channels."""
    if (ref.height, ref.width) != (test.height, test.width):
        raise ValueError("image dimensions differ")
    sq = 0.0
    for kind in range(3):
        d = ref.plane(kind) - test.plane(kind)
        sq += float(np.sum(d * d))
    mse = sq / (3.0 * ref.height * ref.width)
    if mse == 0.0:
        return math.inf
    fs = ref.full_scale
    return 10.0 * math.log10(fs * fs / mse)


def _gaussian_window(n: int = SSIM_WINDOW, sigma: float = SSIM_SIGMA) -> np.ndarray:
    half = (n - 1) / 2.0
    x = np.arange(n) - half
    w = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return w / w.sum()


def _filter_valid(plane: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Separable Gaussian correlation, valid positions only."""
    n = w.size
    h, wd = plane.shape
    tmp = np.zeros((h - n + 1, wd))
    for k in range(n):
        tmp += w[k] * plane[k:h - n + 1 + k, :]
    out = np.zeros((h - n + 1, wd - n + 1))
    for k in range(n):
        out += w[k] * tmp[:, k:wd - n + 1 + k]
    return out


def _ssim_plane(a: np.ndarray, b: np.ndarray, full_scale: float) -> float:
    w = _gaussian_window()
    c1 = (0.01 * full_scale) ** 2
    c2 = (0.03 * full_scale) ** 2
    mu_a = _filter_valid(a, w)
    mu_b = _filter_valid(b, w)
    var_a = _filter_valid(a * a, w) - mu_a * mu_a
    var_b = _filter_valid(b * b, w) - mu_b * mu_b
    cov = _filter_valid(a * b, w) - mu_a * mu_b
    num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)
    den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
    return float(np.mean(num / den))


def ssim(ref: RgbImage, test: RgbImage) -> float:
    """Channel-averaged single-scale SSIM over valid window positions."""
    if (ref.height, ref.width) != (test.height, test.width):
        raise ValueError("image dimensions differ")
    if ref.height < SSIM_WINDOW or ref.width < SSIM_WINDOW:
        raise ValueError(f"image smaller than the {SSIM_WINDOW}x{SSIM_WINDOW} "
                         "SSIM window")
    fs = ref.full_scale
    vals = [_ssim_plane(ref.plane(k), test.plane(k), fs) for k in range(3)]
    return (vals[0] + vals[1] + vals[2]) / 3.0


def evaluate(ref: RgbImage, test: RgbImage, shave_width: int = 4) -> MetricReport:
    """Shave both images, then compute the full metric set."""
    ref_s = shave(ref, shave_width)
    test_s = shave(test, shave_width)
    return MetricReport(
        psnr_r=psnr(ref_s.r, test_s.r, ref.full_scale),
        psnr_g=psnr(ref_s.g, test_s.g, ref.full_scale),
        psnr_b=psnr(ref_s.b, test_s.b, ref.full_scale),
        cpsnr=cpsnr(ref_s, test_s),
        ssim=ssim(ref_s, test_s),
        shave=shave_width,
    )
