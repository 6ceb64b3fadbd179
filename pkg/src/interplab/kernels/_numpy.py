"""Pure-numpy fallback kernels.

Same arithmetic, per pair, as the numba backend; used when numba is
unavailable or disabled via INTERP_LAB_NO_NUMBA=1.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"

_BLOCK = 256


def cross_holder_sup(coords_a, vals_a, coords_b, vals_b, alpha):
    """sup over pairs (a, b) of |v(a)-v(b)| / |x_a-x_b|^alpha, skipping
    coincident points. Returns (sup, pair_count)."""
    best = 0.0
    pairs = 0
    for start in range(0, coords_a.shape[0], _BLOCK):
        ca = coords_a[start : start + _BLOCK]
        va = vals_a[start : start + _BLOCK]
        dx = np.sqrt(((ca[:, None, :] - coords_b[None, :, :]) ** 2).sum(axis=-1))
        dv = np.sqrt(((va[:, None, :] - vals_b[None, :, :]) ** 2).sum(axis=-1))
        live = dx > 0.0
        pairs += int(live.sum())
        if live.any():
            ratio = np.where(live, dv / np.where(live, dx, 1.0) ** alpha, 0.0)
            m = float(ratio.max())
            if m > best:
                best = m
    return best, pairs


def pairwise_holder_sup(coords, vals, alpha):
    """sup over all point pairs within one set; counts each unordered pair once."""
    sup, pairs = cross_holder_sup(coords, vals, coords, vals, alpha)
    return sup, pairs // 2


def split_holder_sups(coords, vals, alpha, threshold):
    """Holder sups restricted to near (dist <= threshold) and far (dist > threshold) pairs."""
    near = 0.0
    far = 0.0
    for start in range(0, coords.shape[0], _BLOCK):
        ca = coords[start : start + _BLOCK]
        va = vals[start : start + _BLOCK]
        dx = np.sqrt(((ca[:, None, :] - coords[None, :, :]) ** 2).sum(axis=-1))
        dv = np.sqrt(((va[:, None, :] - vals[None, :, :]) ** 2).sum(axis=-1))
        live = dx > 0.0
        ratio = np.where(live, dv / np.where(live, dx, 1.0) ** alpha, 0.0)
        near_mask = live & (dx <= threshold)
        far_mask = dx > threshold
        if near_mask.any():
            near = max(near, float(ratio[near_mask].max()))
        if far_mask.any():
            far = max(far, float(ratio[far_mask].max()))
    return near, far


def edt_1d_sq(f):
    """Squared Euclidean distance transform of one sampled line by the
    lower envelope of parabolas, unit spacing. f must be finite (use a
    large sentinel, not inf, for empty cells)."""
    n = f.shape[0]
    out = np.empty_like(f)
    v = np.zeros(n, dtype=np.int64)
    z = np.empty(n + 1, dtype=np.float64)
    k = 0
    z[0] = -np.inf
    z[1] = np.inf
    for i in range(1, n):
        while True:
            vk = v[k]
            s = (f[i] + i * i - (f[vk] + vk * vk)) / (2 * i - 2 * vk)
            if s <= z[k] and k > 0:
                k -= 1
            else:
                break
        k += 1
        v[k] = i
        z[k] = s
        z[k + 1] = np.inf
    k = 0
    for i in range(n):
        while z[k + 1] < i:
            k += 1
        d = i - v[k]
        out[i] = d * d + f[v[k]]
    return out
