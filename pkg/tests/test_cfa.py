import numpy as np
import pytest

import ledmosaic as lm
from ledmosaic.cfa import SiteKind

from conftest import random_rgb

ALL_PHASES = list(lm.BayerPhase)


def test_canonical_layout_matches_one_based_parity_rules():
    # 1-based rules: G where (i+j) even, R where i even and j odd,
    # B where i odd and j even.  (1,1) -> (0,0) 0-based, etc.
    layout = lm.CANONICAL_LAYOUT
    assert layout.site(0, 0) == SiteKind.G          # (1,1) one-based
    assert layout.site(1, 0) == SiteKind.R          # (2,1) one-based
    assert layout.site(0, 1) == SiteKind.B          # (1,2) one-based
    for i1 in range(1, 7):
        for j1 in range(1, 7):
            kind = layout.site(i1 - 1, j1 - 1)
            if (i1 + j1) % 2 == 0:
                assert kind == SiteKind.G
            elif i1 % 2 == 0:
                assert kind == SiteKind.R
            else:
                assert kind == SiteKind.B


@pytest.mark.parametrize("phase", ALL_PHASES)
def test_phase_names_match_top_left_tiles(phase):
    layout = lm.CfaLayout(phase)
    tile = "".join(layout.site(i, j).name for i in (0, 1) for j in (0, 1))
    assert tile == phase.name


@pytest.mark.parametrize("phase", ALL_PHASES)
def test_site_tally_partition(phase):
    layout = lm.CfaLayout(phase)
    h, w = 12, 10
    counts = {k: 0 for k in SiteKind}
    for i in range(h):
        for j in range(w):
            counts[lm.classify_site(layout, i, j)] += 1
    assert counts[SiteKind.G] == h * w // 2
    assert counts[SiteKind.R] == counts[SiteKind.B] == h * w // 4
    grid = layout.site_grid(h, w)
    rm, gm, bm = layout.site_masks(h, w)
    assert (rm.sum(), gm.sum(), bm.sum()) == (h * w // 4, h * w // 2, h * w // 4)
    assert np.array_equal(rm | gm | bm, np.ones((h, w), bool))
    assert not (rm & gm).any() and not (gm & bm).any() and not (rm & bm).any()
    assert grid.shape == (h, w)


def test_classify_site_rejects_negative_indices():
    with pytest.raises(IndexError):
        lm.classify_site(lm.CANONICAL_LAYOUT, -1, 0)
    with pytest.raises(IndexError):
        lm.CANONICAL_LAYOUT.site(0, -3)


def test_mosaic_constant_image_is_constant():
    img = lm.RgbImage(np.full((8, 8), 33.0), np.full((8, 8), 33.0),
                      np.full((8, 8), 33.0))
    m = lm.mosaic(img)
    assert (m.data == 33.0).all()


def test_mosaic_per_channel_constants_sample_by_site():
    img = lm.RgbImage(np.full((8, 8), 100.0), np.full((8, 8), 150.0),
                      np.full((8, 8), 50.0))
    for phase in ALL_PHASES:
        layout = lm.CfaLayout(phase)
        m = lm.mosaic(img, layout)
        expected = {SiteKind.R: 100.0, SiteKind.G: 150.0, SiteKind.B: 50.0}
        for i in range(8):
            for j in range(8):
                assert m.data[i, j] == expected[layout.site(i, j)]


def test_mosaic_random_exhaustive_per_pixel(rng):
    img = random_rgb(rng, 8, 8)
    for phase in ALL_PHASES:
        layout = lm.CfaLayout(phase)
        m = lm.mosaic(img, layout)
        for i in range(8):
            for j in range(8):
                assert m.data[i, j] == img.plane(layout.site(i, j))[i, j]


def test_layout_shift_property(rng):
    # Mosaicking a one-row-shifted image equals mosaicking the original
    # under the row-swapped phase, over the common interior.
    img = random_rgb(rng, 12, 12)
    shifted = lm.RgbImage(img.r[1:, :], img.g[1:, :], img.b[1:, :])
    for phase in ALL_PHASES:
        layout = lm.CfaLayout(phase)
        a = lm.mosaic(shifted, layout)
        b = lm.mosaic(img, layout.shifted(1, 0))
        assert np.array_equal(a.data, b.data[1:, :])
        colshift = lm.RgbImage(img.r[:, 1:], img.g[:, 1:], img.b[:, 1:])
        c = lm.mosaic(colshift, layout)
        d = lm.mosaic(img, layout.shifted(0, 1))
        assert np.array_equal(c.data, d.data[:, 1:])


def test_mosaic_validation_errors():
    with pytest.raises(ValueError):
        lm.BayerMosaic(np.zeros((4, 4)))  # below minimum size
    with pytest.raises(ValueError):
        lm.BayerMosaic(np.full((8, 8), 300.0))  # above full_scale
    with pytest.raises(ValueError):
        lm.BayerMosaic(np.full((8, 8), np.nan))
    with pytest.raises(ValueError):
        lm.RgbImage(np.zeros((8, 8)), np.zeros((8, 8)), np.zeros((4, 4)))
    m = lm.BayerMosaic(np.zeros((8, 8)))
    with pytest.raises(IndexError):
        m.site_kind(8, 0)


def test_containers_are_immutable(rng):
    img = random_rgb(rng, 8, 8)
    m = lm.mosaic(img)
    with pytest.raises(ValueError):
        m.data[0, 0] = 1.0
    with pytest.raises(ValueError):
        img.g[0, 0] = 1.0
