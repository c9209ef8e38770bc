"""Numba-compiled kernel set (default backend).

Same contracts and per-pixel operation order as ``_kernels_numpy``; see that
module for the shared conventions.  Every parallel loop writes each output
pixel from exactly one iteration and never reads what another iteration
writes, so results are bit-identical for any worker-thread count.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

TWO_SQRT2 = 2.0 * np.sqrt(2.0)


@njit(cache=True)
def _logistic(delta, k):
    x = k * delta
    if x >= 0.0:
        t = np.exp(-x)
        return t / (1.0 + t)
    return 1.0 / (1.0 + np.exp(x))


@njit(cache=True, parallel=True)
def _bilinear_kernel(M, di, dj, r, g, b):
    H, W = M.shape
    for i in prange(H):
        for j in range(W):
            ip = (i + di) % 2
            jp = (j + dj) % 2
            if (ip + jp) % 2 == 0:
                g[i, j] = M[i, j]
                # red flank: horizontal on red rows, else vertical
                s = 0.0
                c = 0
                if ip == 1:
                    if j > 0:
                        s += M[i, j - 1]; c += 1
                    if j < W - 1:
                        s += M[i, j + 1]; c += 1
                else:
                    if i > 0:
                        s += M[i - 1, j]; c += 1
                    if i < H - 1:
                        s += M[i + 1, j]; c += 1
                r[i, j] = s / c
                s = 0.0
                c = 0
                if ip == 0:
                    if j > 0:
                        s += M[i, j - 1]; c += 1
                    if j < W - 1:
                        s += M[i, j + 1]; c += 1
                else:
                    if i > 0:
                        s += M[i - 1, j]; c += 1
                    if i < H - 1:
                        s += M[i + 1, j]; c += 1
                b[i, j] = s / c
            else:
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
                g[i, j] = s / c
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
                d = s / c
                if ip == 1:
                    r[i, j] = M[i, j]
                    b[i, j] = d
                else:
                    b[i, j] = M[i, j]
                    r[i, j] = d


def bilinear_planes(M, di, dj):
    H, W = M.shape
    r = np.empty((H, W))
    g = np.empty((H, W))
    b = np.empty((H, W))
    _bilinear_kernel(M, di, dj, r, g, b)
    return r, g, b


@njit(cache=True, parallel=True)
def green_pass(M, di, dj, k, margin, use_ha, bilin_g):
    H, W = M.shape
    gmin = np.inf
    gmax = -np.inf
    for i in range(H):
        for j in range(W):
            if (i + j + di + dj) % 2 == 0:
                v = M[i, j]
                if v < gmin:
                    gmin = v
                if v > gmax:
                    gmax = v
    out = np.empty((H, W))
    for i in prange(H):
        for j in range(W):
            if (i + j + di + dj) % 2 == 0:
                out[i, j] = M[i, j]
            elif (i < margin or j < margin
                  or i >= H - margin or j >= W - margin):
                out[i, j] = bilin_g[i, j]
            else:
                d1h = (M[i, j + 1] - M[i, j - 1]) / 2.0
                d2h = (M[i, j + 2] + M[i, j - 2] - 2.0 * M[i, j]) / 4.0
                d1v = (M[i + 1, j] - M[i - 1, j]) / 2.0
                d2v = (M[i + 2, j] + M[i - 2, j] - 2.0 * M[i, j]) / 4.0
                vh = abs(d1h) + abs(2.0 * d2h)
                vv = abs(d1v) + abs(2.0 * d2v)
                ch = (M[i, j + 1] + M[i, j - 1]) / 2.0 - d2h
                cv = (M[i + 1, j] + M[i - 1, j]) / 2.0 - d2v
                if use_ha:
                    if vh < vv:
                        w = 1.0
                    elif vh > vv:
                        w = 0.0
                    else:
                        w = 0.5
                else:
                    w = _logistic(vh - vv, k)
                est = w * ch + (1.0 - w) * cv
                est = max(min(est, gmax), gmin)
                out[i, j] = est
    return out


@njit(cache=True, parallel=True)
def pass2_diag(M, own, other, di, dj, pi, pj, k, margin):
    H, W = M.shape
    out = own.copy()
    for i in prange(margin, H - margin):
        for j in range(margin, W - margin):
            if (i + di) % 2 == 1 - pi and (j + dj) % 2 == 1 - pj:
                d1d = (M[i + 1, j + 1] - M[i - 1, j - 1]) / TWO_SQRT2
                d2d = (M[i + 2, j + 2] + M[i - 2, j - 2] - 2.0 * M[i, j]) / 8.0
                d1a = (M[i - 1, j + 1] - M[i + 1, j - 1]) / TWO_SQRT2
                d2a = (M[i - 2, j + 2] + M[i + 2, j - 2] - 2.0 * M[i, j]) / 8.0
                vd = abs(d1d) + abs(TWO_SQRT2 * d2d)
                va = abs(d1a) + abs(TWO_SQRT2 * d2a)
                w = _logistic(vd - va, k)
                md = (own[i + 1, j + 1] + own[i - 1, j - 1]) / 2.0
                ma = (own[i - 1, j + 1] + own[i + 1, j - 1]) / 2.0
                curv_d = (other[i + 2, j + 2] + other[i - 2, j - 2]
                          - 2.0 * other[i, j]) / 8.0
                curv_a = (other[i - 2, j + 2] + other[i + 2, j - 2]
                          - 2.0 * other[i, j]) / 8.0
                out[i, j] = w * (md - curv_d) + (1.0 - w) * (ma - curv_a)
    return out


@njit(cache=True, parallel=True)
def pass3_cross(M, own, di, dj, k, margin):
    H, W = M.shape
    out = own.copy()
    for i in prange(margin, H - margin):
        for j in range(margin, W - margin):
            if (i + j + di + dj) % 2 == 0:
                d1h = (M[i, j + 1] - M[i, j - 1]) / 2.0
                d2h = (M[i, j + 2] + M[i, j - 2] - 2.0 * M[i, j]) / 4.0
                d1v = (M[i + 1, j] - M[i - 1, j]) / 2.0
                d2v = (M[i + 2, j] + M[i - 2, j] - 2.0 * M[i, j]) / 4.0
                vh = abs(d1h) + abs(2.0 * d2h)
                vv = abs(d1v) + abs(2.0 * d2v)
                w = _logistic(vh - vv, k)
                mh = (own[i, j + 1] + own[i, j - 1]) / 2.0
                mv = (own[i + 1, j] + own[i - 1, j]) / 2.0
                c2h = (own[i, j + 3] + own[i, j - 3]
                       - own[i, j + 1] - own[i, j - 1]) / 8.0
                c2v = (own[i + 3, j] + own[i - 3, j]
                       - own[i + 1, j] - own[i - 1, j]) / 8.0
                out[i, j] = w * (mh - c2h) + (1.0 - w) * (mv - c2v)
    return out


@njit(cache=True, parallel=True)
def ha_chroma_pass(M, own, di, dj, pi, pj, margin):
    H, W = M.shape
    out = own.copy()
    for i in prange(margin, H - margin):
        for j in range(margin, W - margin):
            ip = (i + di) % 2
            jp = (j + dj) % 2
            if ip == pi and jp == pj:
                continue
            if (ip + jp) % 2 == 0:
                if ip == pi:
                    out[i, j] = (own[i, j - 1] + own[i, j + 1]) / 2.0
                else:
                    out[i, j] = (own[i - 1, j] + own[i + 1, j]) / 2.0
            else:
                out[i, j] = (own[i - 1, j - 1] + own[i - 1, j + 1]
                             + own[i + 1, j - 1] + own[i + 1, j + 1]) / 4.0
    return out
