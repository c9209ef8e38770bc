"""Pure-numpy kernel set (fallback backend).

Every function here has a numba twin in ``_kernels_numba`` with the same
signature and the same per-pixel operation order, so the two backends agree
bit-for-bit except for the library exponential (sub-ulp differences).

Conventions shared by both kernel sets:

* ``di, dj`` are the layout parity shifts; a pixel is a G-site iff
  ``(i + j + di + dj) % 2 == 0``, and a site of the channel with parity
  ``(pi, pj)`` iff ``(i + di) % 2 == pi and (j + dj) % 2 == pj``
  (red is ``(1, 0)``, blue ``(0, 1)``).
* ``margin`` bounds the interior box ``[margin, H - margin)``; pixels outside
  it are left for the caller's boundary fallback.
* Chroma planes hold green-minus-channel differences; entries not yet
  estimated are NaN and are never read.
"""

from __future__ import annotations

import numpy as np

TWO_SQRT2 = 2.0 * np.sqrt(2.0)


def logistic_weights(delta: np.ndarray, k: float) -> np.ndarray:
    """1 / (1 + e^(k * delta)) evaluated without overflow."""
    x = k * np.asarray(delta, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0.0
    t = np.exp(-x[pos])
    out[pos] = t / (1.0 + t)
    out[~pos] = 1.0 / (1.0 + np.exp(x[~pos]))
    return out


def _parity_rows_cols(h, w, di, dj):
    rows = (np.arange(h) + di) % 2
    cols = (np.arange(w) + dj) % 2
    return rows[:, None], cols[None, :]


def _core_view(a, margin, oi, oj):
    h, w = a.shape
    return a[margin + oi:h - margin + oi, margin + oj:w - margin + oj]


def bilinear_planes(M: np.ndarray, di: int, dj: int):
    """Per-channel interpolation from same-channel samples, clipped stencils.

    Green uses the 4-neighbor cross, red/blue the 4-diagonal square at
    opposite-color sites and the 2-sample flank at G-sites.  At image edges
    the stencil is clipped to available samples, degenerating to a copy of
    the single neighbor when only one remains.
    """
    H, W = M.shape
    rows, cols = _parity_rows_cols(H, W, di, dj)
    gm = (rows + cols) % 2 == 0
    rm = (rows == 1) & (cols == 0)
    bm = (rows == 0) & (cols == 1)

    g = np.array(M)
    r = np.empty((H, W))
    b = np.empty((H, W))
    r[rm] = M[rm]
    b[bm] = M[bm]

    if H > 2 and W > 2:
        cross = (M[:-2, 1:-1] + M[2:, 1:-1] + M[1:-1, :-2] + M[1:-1, 2:]) / 4.0
        diag = (M[:-2, :-2] + M[:-2, 2:] + M[2:, :-2] + M[2:, 2:]) / 4.0
        horiz = (M[1:-1, :-2] + M[1:-1, 2:]) / 2.0
        vert = (M[:-2, 1:-1] + M[2:, 1:-1]) / 2.0

        s = np.s_[1:-1, 1:-1]
        gm_c, rm_c, bm_c = gm[s], rm[s], bm[s]
        rows_c = np.broadcast_to(rows, (H, W))[s]

        g[s][~gm_c] = cross[~gm_c]
        rc = r[s]
        rc[bm_c] = diag[bm_c]
        sel = gm_c & (rows_c == 1)
        rc[sel] = horiz[sel]
        sel = gm_c & (rows_c == 0)
        rc[sel] = vert[sel]
        bc = b[s]
        bc[rm_c] = diag[rm_c]
        sel = gm_c & (rows_c == 0)
        bc[sel] = horiz[sel]
        sel = gm_c & (rows_c == 1)
        bc[sel] = vert[sel]

    for i, j in _ring_indices(H, W):
        _fill_bilinear_pixel(M, di, dj, i, j, r, g, b)
    return r, g, b


def _ring_indices(H, W):
    for j in range(W):
        yield 0, j
        yield H - 1, j
    for i in range(1, H - 1):
        yield i, 0
        yield i, W - 1


def _fill_bilinear_pixel(M, di, dj, i, j, r, g, b):
    H, W = M.shape
    ip = (i + di) % 2
    jp = (j + dj) % 2
    is_g = (ip + jp) % 2 == 0

    def cross_avg():
        s = 0.0
        c = 0
        if i > 0:
            s += M[i - 1, j]; c += 1
        if i < H - 1:
            s += M[i + 1, j]; c += 1
        if j > 0:
            s += M[i, j - 1]; c += 1
        if j < W - 1:
            s += M[i, j + 1]; c += 1
        return s / c

    def diag_avg():
        s = 0.0
        c = 0
        if i > 0 and j > 0:
            s += M[i - 1, j - 1]; c += 1
        if i > 0 and j < W - 1:
            s += M[i - 1, j + 1]; c += 1
        if i < H - 1 and j > 0:
            s += M[i + 1, j - 1]; c += 1
        if i < H - 1 and j < W - 1:
            s += M[i + 1, j + 1]; c += 1
        return s / c

    def flank_avg(horizontal):
        s = 0.0
        c = 0
        if horizontal:
            if j > 0:
                s += M[i, j - 1]; c += 1
            if j < W - 1:
                s += M[i, j + 1]; c += 1
        else:
            if i > 0:
                s += M[i - 1, j]; c += 1
            if i < H - 1:
                s += M[i + 1, j]; c += 1
        return s / c

    if is_g:
        g[i, j] = M[i, j]
        r[i, j] = flank_avg(ip == 1)
        b[i, j] = flank_avg(ip == 0)
    else:
        g[i, j] = cross_avg()
        if ip == 1:  # red sample
            r[i, j] = M[i, j]
            b[i, j] = diag_avg()
        else:
            b[i, j] = M[i, j]
            r[i, j] = diag_avg()


def green_pass(M, di, dj, k, margin, use_ha, bilin_g):
    """Full green plane: samples kept, interior estimated, strip from bilinear.

    ``use_ha`` switches the directional weight between hard selection by
    smaller variation (ties averaged) and the logistic blend.  Estimates are
    clamped to the green sample range.
    """
    H, W = M.shape
    rows, cols = _parity_rows_cols(H, W, di, dj)
    gm = (rows + cols) % 2 == 0
    gvals = M[gm]
    gmin = gvals.min()
    gmax = gvals.max()

    out = np.where(gm, M, bilin_g)
    if H - 2 * margin <= 0 or W - 2 * margin <= 0:
        return out

    def c(a, bb):
        return _core_view(M, margin, a, bb)

    c0 = c(0, 0)
    d1h = (c(0, 1) - c(0, -1)) / 2.0
    d2h = (c(0, 2) + c(0, -2) - 2.0 * c0) / 4.0
    d1v = (c(1, 0) - c(-1, 0)) / 2.0
    d2v = (c(2, 0) + c(-2, 0) - 2.0 * c0) / 4.0
    vh = np.abs(d1h) + np.abs(2.0 * d2h)
    vv = np.abs(d1v) + np.abs(2.0 * d2v)
    ch = (c(0, 1) + c(0, -1)) / 2.0 - d2h
    cv = (c(1, 0) + c(-1, 0)) / 2.0 - d2v
    if use_ha:
        w = np.where(vh < vv, 1.0, np.where(vh > vv, 0.0, 0.5))
    else:
        w = logistic_weights(vh - vv, k)
    est = w * ch + (1.0 - w) * cv
    est = np.maximum(np.minimum(est, gmax), gmin)

    core = out[margin:H - margin, margin:W - margin]
    sel = ~gm[margin:H - margin, margin:W - margin]
    core[sel] = est[sel]
    return out


def pass2_diag(M, own, other, di, dj, pi, pj, k, margin):
    """Estimate the target chroma at interior opposite-color sites.

    Directional weights come from diagonal variations of the mosaic; the
    curvature correction reads the *other* chroma plane at same-color sites.
    """
    H, W = M.shape
    out = np.array(own)
    if H - 2 * margin <= 0 or W - 2 * margin <= 0:
        return out

    def c(a, bb):
        return _core_view(M, margin, a, bb)

    def co(a, bb):
        return _core_view(own, margin, a, bb)

    def ct(a, bb):
        return _core_view(other, margin, a, bb)

    c0 = c(0, 0)
    d1d = (c(1, 1) - c(-1, -1)) / TWO_SQRT2
    d2d = (c(2, 2) + c(-2, -2) - 2.0 * c0) / 8.0
    d1a = (c(-1, 1) - c(1, -1)) / TWO_SQRT2
    d2a = (c(-2, 2) + c(2, -2) - 2.0 * c0) / 8.0
    vd = np.abs(d1d) + np.abs(TWO_SQRT2 * d2d)
    va = np.abs(d1a) + np.abs(TWO_SQRT2 * d2a)
    w = logistic_weights(vd - va, k)

    md = (co(1, 1) + co(-1, -1)) / 2.0
    ma = (co(-1, 1) + co(1, -1)) / 2.0
    ct0 = ct(0, 0)
    curv_d = (ct(2, 2) + ct(-2, -2) - 2.0 * ct0) / 8.0
    curv_a = (ct(-2, 2) + ct(2, -2) - 2.0 * ct0) / 8.0
    est = w * (md - curv_d) + (1.0 - w) * (ma - curv_a)

    rows, cols = _parity_rows_cols(H, W, di, dj)
    opp = (rows == 1 - pi) & (cols == 1 - pj)
    sel = opp[margin:H - margin, margin:W - margin]
    out[margin:H - margin, margin:W - margin][sel] = est[sel]
    return out


def pass3_cross(M, own, di, dj, k, margin):
    """Complete the chroma plane at interior G-sites from its 4-neighbors.

    The 5-tap curvature reads the plane at offsets {-3, -1, +1, +3} along
    each axis (all non-G sites); the blend weight is recomputed from the
    mosaic's horizontal/vertical variations at the pixel itself.
    """
    H, W = M.shape
    out = np.array(own)
    if H - 2 * margin <= 0 or W - 2 * margin <= 0:
        return out

    def c(a, bb):
        return _core_view(M, margin, a, bb)

    def co(a, bb):
        return _core_view(own, margin, a, bb)

    c0 = c(0, 0)
    d1h = (c(0, 1) - c(0, -1)) / 2.0
    d2h = (c(0, 2) + c(0, -2) - 2.0 * c0) / 4.0
    d1v = (c(1, 0) - c(-1, 0)) / 2.0
    d2v = (c(2, 0) + c(-2, 0) - 2.0 * c0) / 4.0
    vh = np.abs(d1h) + np.abs(2.0 * d2h)
    vv = np.abs(d1v) + np.abs(2.0 * d2v)
    w = logistic_weights(vh - vv, k)

    mh = (co(0, 1) + co(0, -1)) / 2.0
    mv = (co(1, 0) + co(-1, 0)) / 2.0
    c2h = (co(0, 3) + co(0, -3) - co(0, 1) - co(0, -1)) / 8.0
    c2v = (co(3, 0) + co(-3, 0) - co(1, 0) - co(-1, 0)) / 8.0
    est = w * (mh - c2h) + (1.0 - w) * (mv - c2v)

    rows, cols = _parity_rows_cols(H, W, di, dj)
    gm = (rows + cols) % 2 == 0
    sel = gm[margin:H - margin, margin:W - margin]
    out[margin:H - margin, margin:W - margin][sel] = est[sel]
    return out


def ha_chroma_pass(M, own, di, dj, pi, pj, margin):
    """One-shot bilinear fill of a chroma plane from its sample sites only."""
    H, W = M.shape
    out = np.array(own)
    if H - 2 * margin <= 0 or W - 2 * margin <= 0:
        return out

    def co(a, bb):
        return _core_view(own, margin, a, bb)

    diag = (co(-1, -1) + co(-1, 1) + co(1, -1) + co(1, 1)) / 4.0
    horiz = (co(0, -1) + co(0, 1)) / 2.0
    vert = (co(-1, 0) + co(1, 0)) / 2.0

    rows, cols = _parity_rows_cols(H, W, di, dj)
    gm = (rows + cols) % 2 == 0
    opp = (rows == 1 - pi) & (cols == 1 - pj)
    rows_b = np.broadcast_to(rows, (H, W))

    box = np.s_[margin:H - margin, margin:W - margin]
    core = out[box]
    sel = opp[box]
    core[sel] = diag[sel]
    sel = (gm & (rows_b == pi))[box]
    core[sel] = horiz[sel]
    sel = (gm & (rows_b != pi))[box]
    core[sel] = vert[sel]
    return out
