"""Shared demosaicking pipeline orchestration.

The channel recovery used by both the edge-sensing method and the
Hamilton-Adams baseline follows the same staging:

1. full green plane (samples kept, interior estimated, boundary strip from
   the clipped-stencil bilinear fallback),
2. chroma planes (green minus channel) seeded at sample sites, with the
   boundary strip seeded from fallback channel values so that interior
   stencils reaching into the strip always read defined entries,
3. per-channel estimation passes over the interior,
4. final assembly: samples pass through, interior estimates are clamped to
   the channel's sample range, the strip carries the fallback values.

Only the interior passes differ between methods; they are delegated to the
active kernel backend.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import _backend
from .cfa import BayerMosaic, CfaLayout, SiteKind

# Sample-site parity (row, col) of each non-green channel under the base
# layout: red lives on odd rows / even cols, blue on even rows / odd cols.
_CHANNEL_PARITY = {SiteKind.R: (1, 0), SiteKind.B: (0, 1)}


def _shifts(layout: CfaLayout):
    return layout.row_shift, layout.col_shift


@lru_cache(maxsize=64)
def _cached_site_masks(h: int, w: int, di: int, dj: int):
    rows = ((np.arange(h) + di) % 2)[:, None]
    cols = ((np.arange(w) + dj) % 2)[None, :]
    gm = (rows + cols) % 2 == 0
    rm = (rows == 1) & (cols == 0)
    bm = (rows == 0) & (cols == 1)
    for m in (rm, gm, bm):
        m.flags.writeable = False
    return rm, gm, bm


def site_masks(mosaic: BayerMosaic):
    """Cached read-only (r, g, b) site masks for the mosaic's geometry."""
    di, dj = _shifts(mosaic.layout)
    return _cached_site_masks(mosaic.height, mosaic.width, di, dj)


@lru_cache(maxsize=64)
def _cached_interior(h: int, w: int, margin: int):
    m = np.zeros((h, w), dtype=bool)
    if h - 2 * margin > 0 and w - 2 * margin > 0:
        m[margin:h - margin, margin:w - margin] = True
    m.flags.writeable = False
    return m


def interior_mask(h: int, w: int, margin: int) -> np.ndarray:
    """Read-only mask of the interior box [margin, H-margin) x [margin, W-margin)."""
    return _cached_interior(h, w, int(margin))


def bilinear_planes(mosaic: BayerMosaic):
    """(r, g, b) planes interpolated per channel with clipped stencils."""
    di, dj = _shifts(mosaic.layout)
    return _backend.kernels().bilinear_planes(mosaic.data, di, dj)


def green_plane(mosaic: BayerMosaic, k: float, margin: int, use_ha: bool,
                bilin_g: np.ndarray | None = None) -> np.ndarray:
    di, dj = _shifts(mosaic.layout)
    if bilin_g is None:
        bilin_g = bilinear_planes(mosaic)[1]
    return _backend.kernels().green_pass(mosaic.data, di, dj, float(k),
                                         int(margin), use_ha, bilin_g)


def chroma_sample_plane(mosaic: BayerMosaic, g_hat: np.ndarray,
                        target: SiteKind) -> np.ndarray:
    """Green-minus-target differences at target sample sites, NaN elsewhere."""
    tmask = _target_mask(mosaic, target)
    own = np.full(mosaic.data.shape, np.nan)
    own[tmask] = g_hat[tmask] - mosaic.data[tmask]
    return own


def _target_mask(mosaic: BayerMosaic, target: SiteKind) -> np.ndarray:
    # site_masks order (r, g, b) matches the SiteKind values
    return site_masks(mosaic)[int(target)]


def seed_strip_chroma(mosaic: BayerMosaic, own: np.ndarray, g_hat: np.ndarray,
                      target: SiteKind, margin: int,
                      bilin_t: np.ndarray) -> np.ndarray:
    """Fill strip entries of `own` at opposite-color sites from fallback values."""
    opposite = SiteKind.B if target == SiteKind.R else SiteKind.R
    omask = _target_mask(mosaic, opposite)
    strip = ~interior_mask(mosaic.height, mosaic.width, margin)
    out = np.array(own)
    sel = strip & omask
    out[sel] = g_hat[sel] - bilin_t[sel]
    return out


def finalize_channel(mosaic: BayerMosaic, g_hat: np.ndarray, own: np.ndarray,
                     target: SiteKind, margin: int,
                     bilin_t: np.ndarray) -> np.ndarray:
    """Assemble a channel: samples, clamped interior estimates, strip fallback."""
    M = mosaic.data
    tmask = _target_mask(mosaic, target)
    samples = M[tmask]
    cmin = samples.min()
    cmax = samples.max()
    est = np.maximum(np.minimum(g_hat - own, cmax), cmin)
    out = np.array(bilin_t)
    sel = interior_mask(mosaic.height, mosaic.width, margin) & ~tmask
    out[sel] = est[sel]
    out[tmask] = M[tmask]
    return out


def recover_channel_led(mosaic: BayerMosaic, g_hat: np.ndarray,
                        target: SiteKind, k: float, margin: int,
                        bilin_t: np.ndarray) -> np.ndarray:
    """Edge-sensing recovery of red or blue via its color-difference plane."""
    di, dj = _shifts(mosaic.layout)
    pi, pj = _CHANNEL_PARITY[target]
    opposite = SiteKind.B if target == SiteKind.R else SiteKind.R
    own = chroma_sample_plane(mosaic, g_hat, target)
    other = chroma_sample_plane(mosaic, g_hat, opposite)
    own = seed_strip_chroma(mosaic, own, g_hat, target, margin, bilin_t)
    kern = _backend.kernels()
    own = kern.pass2_diag(mosaic.data, own, other, di, dj, pi, pj,
                          float(k), int(margin))
    own = kern.pass3_cross(mosaic.data, own, di, dj, float(k), int(margin))
    return finalize_channel(mosaic, g_hat, own, target, margin, bilin_t)


def recover_channel_ha(mosaic: BayerMosaic, g_hat: np.ndarray,
                       target: SiteKind, margin: int,
                       bilin_t: np.ndarray) -> np.ndarray:
    """Bilinear color-difference recovery of red or blue (baseline)."""
    di, dj = _shifts(mosaic.layout)
    pi, pj = _CHANNEL_PARITY[target]
    own = chroma_sample_plane(mosaic, g_hat, target)
    own = _backend.kernels().ha_chroma_pass(mosaic.data, own, di, dj,
                                            pi, pj, int(margin))
    return finalize_channel(mosaic, g_hat, own, target, margin, bilin_t)
