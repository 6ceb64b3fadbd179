"""numba-jitted hot kernels; arithmetic mirrors the numpy fallback per pair."""

from __future__ import annotations

import math

import numpy as np
from numba import njit

BACKEND = "numba"


@njit(cache=True)
def cross_holder_sup(coords_a, vals_a, coords_b, vals_b, alpha):
    na = coords_a.shape[0]
    nb = coords_b.shape[0]
    d = coords_a.shape[1]
    m = vals_a.shape[1]
    best = 0.0
    pairs = 0
    for i in range(na):
        for j in range(nb):
            dx = 0.0
            for c in range(d):
                t = coords_a[i, c] - coords_b[j, c]
                dx += t * t
            if dx == 0.0:
                continue
            pairs += 1
            dv = 0.0
            for c in range(m):
                t = vals_a[i, c] - vals_b[j, c]
                dv += t * t
            ratio = math.sqrt(dv) / math.sqrt(dx) ** alpha
            if ratio > best:
                best = ratio
    return best, pairs


@njit(cache=True)
def pairwise_holder_sup(coords, vals, alpha):
    n = coords.shape[0]
    d = coords.shape[1]
    m = vals.shape[1]
    best = 0.0
    pairs = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = 0.0
            for c in range(d):
                t = coords[i, c] - coords[j, c]
                dx += t * t
            if dx == 0.0:
                continue
            pairs += 1
            dv = 0.0
            for c in range(m):
                t = vals[i, c] - vals[j, c]
                dv += t * t
            ratio = math.sqrt(dv) / math.sqrt(dx) ** alpha
            if ratio > best:
                best = ratio
    return best, pairs


@njit(cache=True)
def split_holder_sups(coords, vals, alpha, threshold):
    n = coords.shape[0]
    d = coords.shape[1]
    m = vals.shape[1]
    near = 0.0
    far = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            dx = 0.0
            for c in range(d):
                t = coords[i, c] - coords[j, c]
                dx += t * t
            if dx == 0.0:
                continue
            dv = 0.0
            for c in range(m):
                t = vals[i, c] - vals[j, c]
                dv += t * t
            dist = math.sqrt(dx)
            ratio = math.sqrt(dv) / dist**alpha
            if dist <= threshold:
                if ratio > near:
                    near = ratio
            else:
                if ratio > far:
                    far = ratio
    return near, far


@njit(cache=True)
def edt_1d_sq(f):
    n = f.shape[0]
    out = np.empty_like(f)
    v = np.zeros(n, dtype=np.int64)
    z = np.empty(n + 1, dtype=np.float64)
    k = 0
    z[0] = -np.inf
    z[1] = np.inf
    for i in range(1, n):
        s = 0.0
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
