"""Baseline demosaickers: Hamilton-Adams and plain bilinear interpolation.

The Hamilton-Adams green step picks the interpolation direction with the
smaller variation (first plus twice the second derivative magnitude),
averaging both on an exact tie, then recovers red and blue by bilinearly
enlarging the green-minus-red and green-minus-blue difference planes.

Both baselines share the boundary fallback and the sample-range clamping of
the edge-sensing pipeline so that quality comparisons isolate the
directional-weighting change.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _pipeline
from .cfa import BayerMosaic, RgbImage, SiteKind

DEFAULT_MARGIN = 4


@dataclass(frozen=True)
class DirectionalStats:
    """First/second derivatives and variations for one direction pair.

    Direction "a" is horizontal (or diagonal), "b" vertical (or
    anti-diagonal).  Variations are |d1| + |c*d2| with c = 2 for the
    horizontal/vertical pair and c = 2*sqrt(2) for the diagonal pair.
    """

    d1_a: float
    d2_a: float
    d1_b: float
    d2_b: float
    v_a: float
    v_b: float


def _mosaic_array(m) -> np.ndarray:
    return m.data if isinstance(m, BayerMosaic) else np.asarray(m, dtype=np.float64)


def hv_derivatives(m, i: int, j: int) -> DirectionalStats:
    """Horizontal/vertical derivative stats of the mosaic at (i, j).

    Requires the full 5-point stencil: (i, j) at least 2 pixels from every
    border, else IndexError.
    """
    M = _mosaic_array(m)
    h, w = M.shape
    if not (2 <= i < h - 2 and 2 <= j < w - 2):
        raise IndexError(f"stencil at ({i}, {j}) leaves the {h}x{w} image")
    d1h = (M[i, j + 1] - M[i, j - 1]) / 2.0
    d2h = (M[i, j + 2] + M[i, j - 2] - 2.0 * M[i, j]) / 4.0
    d1v = (M[i + 1, j] - M[i - 1, j]) / 2.0
    d2v = (M[i + 2, j] + M[i - 2, j] - 2.0 * M[i, j]) / 4.0
    vh = abs(d1h) + abs(2.0 * d2h)
    vv = abs(d1v) + abs(2.0 * d2v)
    return DirectionalStats(d1h, d2h, d1v, d2v, vh, vv)


def ha_green(m: BayerMosaic, boundary_margin: int = DEFAULT_MARGIN) -> np.ndarray:
    """Green plane by directional selection; samples pass through."""
    return _pipeline.green_plane(m, 0.0, boundary_margin, use_ha=True)


def ha_chroma(m: BayerMosaic, g_hat: np.ndarray,
              boundary_margin: int = DEFAULT_MARGIN):
    """(red, blue) planes from bilinearly interpolated difference planes."""
    g_hat = np.asarray(g_hat, dtype=np.float64)
    if g_hat.shape != m.data.shape:
        raise ValueError("green plane shape does not match the mosaic")
    bil_r, _, bil_b = _pipeline.bilinear_planes(m)
    r = _pipeline.recover_channel_ha(m, g_hat, SiteKind.R, boundary_margin, bil_r)
    b = _pipeline.recover_channel_ha(m, g_hat, SiteKind.B, boundary_margin, bil_b)
    return r, b


def ha_demosaic(m: BayerMosaic, boundary_margin: int = DEFAULT_MARGIN) -> RgbImage:
    """Full Hamilton-Adams reconstruction."""
    bil_r, bil_g, bil_b = _pipeline.bilinear_planes(m)
    g = _pipeline.green_plane(m, 0.0, boundary_margin, use_ha=True, bilin_g=bil_g)
    r = _pipeline.recover_channel_ha(m, g, SiteKind.R, boundary_margin, bil_r)
    b = _pipeline.recover_channel_ha(m, g, SiteKind.B, boundary_margin, bil_b)
    return RgbImage(r, g, b, m.full_scale)


def bilinear_demosaic(m: BayerMosaic) -> RgbImage:
    """Each channel independently averaged from its own samples."""
    r, g, b = _pipeline.bilinear_planes(m)
    return RgbImage(r, g, b, m.full_scale)
