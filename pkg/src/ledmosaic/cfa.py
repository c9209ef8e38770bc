"""Bayer CFA geometry: site classification, mosaic/image containers, forward sampling.

All indices in this package are 0-based.  The classic textbook layout places
green on the (i + j)-even checkerboard with red on odd rows and blue on odd
columns; the other three phases are handled by remapping coordinates onto
that layout with a (row, col) parity shift, so there is a single sampling
rule to test.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

#: Smallest mosaic side that leaves room for the interior stencils plus the
#: metric shave strip.
MIN_MOSAIC_SIDE = 8


class SiteKind(enum.IntEnum):
    """Primary color originally sampled at a pixel site.

    Values match the plane order of :class:`RgbImage` (R=0, G=1, B=2).
    """

    R = 0
    G = 1
    B = 2


class BayerPhase(enum.IntEnum):
    """The four 2x2 Bayer phases, named by their top-left 2x2 tile.

    The integer value doubles as the phase code in the packed mosaic file
    format, so the numbering must never be reordered.
    """

    GBRG = 0
    RGGB = 1
    BGGR = 2
    GRBG = 3


# Parity shift (rows, cols) mapping each phase onto the GBRG base layout:
# a pixel (i, j) under phase P samples the color that GBRG samples at
# (i + dr, j + dc).
_PHASE_SHIFT = {
    BayerPhase.GBRG: (0, 0),
    BayerPhase.RGGB: (1, 0),
    BayerPhase.BGGR: (0, 1),
    BayerPhase.GRBG: (1, 1),
}
_SHIFT_PHASE = {v: k for k, v in _PHASE_SHIFT.items()}


@dataclass(frozen=True)
class CfaLayout:
    """Which primary color each (row, col) parity position carries."""

    phase: BayerPhase = BayerPhase.GBRG

    @property
    def row_shift(self) -> int:
        return _PHASE_SHIFT[self.phase][0]

    @property
    def col_shift(self) -> int:
        return _PHASE_SHIFT[self.phase][1]

    def site(self, i: int, j: int) -> SiteKind:
        """Site kind at pixel (i, j).  Negative indices are rejected."""
        if i < 0 or j < 0:
            raise IndexError(f"pixel index ({i}, {j}) out of bounds")
        ip = (i + self.row_shift) % 2
        jp = (j + self.col_shift) % 2
        if (ip + jp) % 2 == 0:
            return SiteKind.G
        return SiteKind.R if ip == 1 else SiteKind.B

    def shifted(self, rows: int, cols: int) -> "CfaLayout":
        """Layout seen by an image translated by (rows, cols)."""
        dr = (self.row_shift + rows) % 2
        dc = (self.col_shift + cols) % 2
        return CfaLayout(_SHIFT_PHASE[(dr, dc)])

    def site_grid(self, height: int, width: int) -> np.ndarray:
        """(height, width) uint8 grid of SiteKind values."""
        ip = (np.arange(height) + self.row_shift) % 2
        jp = (np.arange(width) + self.col_shift) % 2
        rows = ip[:, None]
        cols = jp[None, :]
        grid = np.where((rows + cols) % 2 == 0, np.uint8(SiteKind.G),
                        np.where(rows == 1, np.uint8(SiteKind.R), np.uint8(SiteKind.B)))
        return grid.astype(np.uint8)

    def site_masks(self, height: int, width: int):
        """Boolean (r_mask, g_mask, b_mask) partitioning the pixel grid."""
        grid = self.site_grid(height, width)
        return grid == SiteKind.R, grid == SiteKind.G, grid == SiteKind.B


#: Layout used throughout the literature this package follows: G where
#: (i + j) is even, R on odd rows, B on odd columns (0-based).
CANONICAL_LAYOUT = CfaLayout(BayerPhase.GBRG)


def classify_site(layout: CfaLayout, i: int, j: int) -> SiteKind:
    """Primary color sampled at (i, j) under `layout`."""
    return layout.site(i, j)


def _as_plane(data, name: str) -> np.ndarray:
    arr = np.array(data, dtype=np.float64, order="C")
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D scalar plane, got shape {arr.shape}")
    return arr


def _check_range(arr: np.ndarray, full_scale: float, name: str) -> None:
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite values")
    if arr.size and (arr.min() < 0.0 or arr.max() > full_scale):
        raise ValueError(f"{name} values must lie in [0, {full_scale}]")


@dataclass(frozen=True)
class BayerMosaic:
    """Single-plane CFA image with its layout and value range.

    `data` is copied on construction and frozen; all operations on mosaics
    are pure functions, safe to call concurrently.
    """

    data: np.ndarray
    layout: CfaLayout = CANONICAL_LAYOUT
    full_scale: float = 255.0

    def __post_init__(self):
        arr = _as_plane(self.data, "mosaic")
        h, w = arr.shape
        if h < MIN_MOSAIC_SIDE or w < MIN_MOSAIC_SIDE:
            raise ValueError(
                f"mosaic must be at least {MIN_MOSAIC_SIDE}x{MIN_MOSAIC_SIDE}, got {h}x{w}")
        fs = float(self.full_scale)
        if fs <= 0.0:
            raise ValueError("full_scale must be positive")
        _check_range(arr, fs, "mosaic")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "full_scale", fs)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    def site_kind(self, i: int, j: int) -> SiteKind:
        """Bounds-checked site classification."""
        if not (0 <= i < self.height and 0 <= j < self.width):
            raise IndexError(f"pixel index ({i}, {j}) out of bounds "
                             f"for {self.height}x{self.width} mosaic")
        return self.layout.site(i, j)


@dataclass(frozen=True)
class RgbImage:
    """Three-plane scalar image (ground truth input or demosaicked output)."""

    r: np.ndarray
    g: np.ndarray
    b: np.ndarray
    full_scale: float = 255.0

    def __post_init__(self):
        planes = {}
        for name in ("r", "g", "b"):
            planes[name] = _as_plane(getattr(self, name), name)
        if not (planes["r"].shape == planes["g"].shape == planes["b"].shape):
            raise ValueError("r, g, b planes must share identical dimensions")
        fs = float(self.full_scale)
        if fs <= 0.0:
            raise ValueError("full_scale must be positive")
        for name, arr in planes.items():
            _check_range(arr, fs, f"{name} plane")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "full_scale", fs)

    @property
    def height(self) -> int:
        return self.r.shape[0]

    @property
    def width(self) -> int:
        return self.r.shape[1]

    def plane(self, kind: SiteKind) -> np.ndarray:
        return (self.r, self.g, self.b)[int(kind)]

    def to_stack(self) -> np.ndarray:
        """(H, W, 3) copy in R, G, B order."""
        return np.stack([self.r, self.g, self.b], axis=-1)


def mosaic(image: RgbImage, layout: CfaLayout = CANONICAL_LAYOUT) -> BayerMosaic:
    """Sample an RGB image through the CFA, keeping one color per pixel."""
    grid = layout.site_grid(image.height, image.width)
    m = np.where(grid == SiteKind.G, image.g,
                 np.where(grid == SiteKind.R, image.r, image.b))
    return BayerMosaic(m, layout, image.full_scale)
