"""Norms of Definition-1 type on grid functions.

Quadrature is the midpoint rule on cells (node values stand for their cell),
which keeps the Lebesgue norm and the distribution function mutually
consistent. The Holder semi-norm sup runs over grid nodes only; it has a
naive O(N^2) reference and a branch-and-bound evaluator that must agree
bit-for-bit.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement, product

import numpy as np

from . import kernels
from .exponents import (
    HOLDER,
    LEBESGUE,
    OUT_OF_SCALE,
    SUP,
    ExtendedExponent,
    classify,
    holder_decompose,
)
from .grids import DerivativeTensor, GridFunction, gradient

_LEAF_NODES_PER_AXIS = 8
_BOUND_MARGIN = 1.0 + 1e-9


class OutOfScaleError(ValueError):
    """Requested exponent is outside every theorem hypothesis."""


@dataclass(frozen=True)
class NormValue:
    value: float
    kind: str  # lebesgue | sup | weak-lorentz | holder
    params: dict
    method: str
    grid: dict
    stats: dict = dc_field(default_factory=dict)

    def to_json(self) -> str:
        doc = {"kind": self.kind, **self.params, "value": self.value,
               "method": self.method, "grid": self.grid}
        if self.stats:
            doc["stats"] = self.stats
        return json.dumps(doc)


def _grid_meta(u) -> dict:
    return {"shape": list(u.shape), "spacing": list(u.spacing)}


def _magnitude(u) -> np.ndarray:
    if isinstance(u, DerivativeTensor):
        return u.magnitude()
    return np.abs(u.values)


def _cell_volume(u) -> float:
    return float(np.prod(u.spacing))


def _as_field(v):
    """(coords (N,d), vals (N,m)) for a scalar or derivative-tensor field."""
    coords = v.node_coords()
    if isinstance(v, DerivativeTensor):
        vals = v.components.reshape(v.components.shape[0], -1).T
    else:
        vals = v.values.reshape(-1, 1)
    return np.ascontiguousarray(coords), np.ascontiguousarray(vals)


def lebesgue_norm(u, p) -> NormValue:
    """(sum |u|^p cellvol)^(1/p); p = inf is the max over nodes."""
    mag = _magnitude(u)
    if math.isinf(p):
        return NormValue(float(mag.max()), "sup", {}, "exact-sum", _grid_meta(u))
    p = float(p)
    if p < 1:
        raise OutOfScaleError(f"p = {p} in (0,1) is out of scale")
    val = float((mag**p).sum() * _cell_volume(u)) ** (1.0 / p)
    return NormValue(val, "lebesgue", {"p": p}, "exact-sum", _grid_meta(u))


def distribution_function(u, t: float) -> float:
    """Measure of the superlevel set {|u| > t}."""
    if t <= 0:
        raise ValueError("threshold must be positive")
    return float((_magnitude(u) > t).sum()) * _cell_volume(u)


def weak_lorentz_norm(u, q) -> NormValue:
    """sup_t t * |{|u|>t}|^(1/q), attained on the sorted sample levels."""
    q = float(q)
    if q < 1:
        raise OutOfScaleError(f"q = {q} < 1 rejected")
    mag = _magnitude(u).ravel()
    v = np.sort(mag[mag > 0])[::-1]
    if v.size == 0:
        val = 0.0
    else:
        counts = np.arange(1, v.size + 1, dtype=np.float64)
        val = float((v * (counts * _cell_volume(u)) ** (1.0 / q)).max())
    return NormValue(val, "weak-lorentz", {"q": q}, "exact-sum", _grid_meta(u))


def holder_seminorm_naive(v, alpha) -> NormValue:
    """Exact sup over all node pairs of |v(x)-v(y)| / |x-y|^alpha."""
    alpha = float(alpha)
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha = {alpha} not in (0,1]")
    coords, vals = _as_field(v)
    if coords.shape[0] < 2:
        raise ValueError("need at least two nodes")
    sup, pairs = kernels.pairwise_holder_sup(coords, vals, alpha)
    return NormValue(
        float(sup), "holder", {"alpha": alpha}, "naive-pairs", _grid_meta(v),
        stats={"pairs": int(pairs)},
    )


# ---------------------------------------------------------------------------
# branch-and-bound Holder semi-norm

class _BoxNode:
    """Index box with cached per-component value bounds."""

    __slots__ = ("ranges", "vmin", "vmax", "children", "size")

    def __init__(self, ranges, grid_vals):
        self.ranges = ranges
        sl = tuple(slice(lo, hi) for lo, hi in ranges)
        sub = grid_vals[sl + (slice(None),)]
        self.vmin = sub.reshape(-1, sub.shape[-1]).min(axis=0)
        self.vmax = sub.reshape(-1, sub.shape[-1]).max(axis=0)
        self.size = int(np.prod([hi - lo for lo, hi in ranges]))
        self.children = None

    def is_leaf(self):
        return all(hi - lo <= _LEAF_NODES_PER_AXIS for lo, hi in self.ranges)

    def split(self, grid_vals):
        if self.children is None:
            halves = []
            for lo, hi in self.ranges:
                if hi - lo > _LEAF_NODES_PER_AXIS:
                    mid = (lo + hi) // 2
                    halves.append(((lo, mid), (mid, hi)))
                else:
                    halves.append(((lo, hi),))
            self.children = [_BoxNode(r, grid_vals) for r in product(*halves)]
        return self.children


def _box_distance(a: _BoxNode, b: _BoxNode, spacing) -> float:
    d2 = 0.0
    for (alo, ahi), (blo, bhi), h in zip(a.ranges, b.ranges, spacing):
        if ahi <= blo:
            gap = (blo - (ahi - 1)) * h
        elif bhi <= alo:
            gap = (alo - (bhi - 1)) * h
        else:
            gap = 0.0
        d2 += gap * gap
    return math.sqrt(d2)


def _pair_bound(a: _BoxNode, b: _BoxNode, spacing, alpha) -> float:
    dist = _box_distance(a, b, spacing)
    if dist == 0.0:
        return math.inf
    diff = np.maximum(a.vmax - b.vmin, b.vmax - a.vmin)
    num = math.sqrt(float((np.maximum(diff, 0.0) ** 2).sum()))
    return num / dist**alpha * _BOUND_MARGIN


def holder_seminorm_bb(v, alpha) -> NormValue:
    """Branch-and-bound evaluation of the Holder semi-norm; agrees with the
    naive sup bit-for-bit because leaf pairs reuse the same pair kernels."""
    alpha = float(alpha)
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha = {alpha} not in (0,1]")
    coords, vals = _as_field(v)
    npts = coords.shape[0]
    if npts < 2:
        raise ValueError("need at least two nodes")
    shape = tuple(v.shape)
    grid_vals = vals.reshape(shape + (vals.shape[1],))
    grid_coords = coords.reshape(shape + (coords.shape[1],))

    def leaf_arrays(node):
        sl = tuple(slice(lo, hi) for lo, hi in node.ranges)
        c = grid_coords[sl + (slice(None),)].reshape(-1, coords.shape[1])
        x = grid_vals[sl + (slice(None),)].reshape(-1, vals.shape[1])
        return np.ascontiguousarray(c), np.ascontiguousarray(x)

    root = _BoxNode(tuple((0, s) for s in shape), grid_vals)
    best = 0.0
    evaluated_pairs = 0
    counter = 0
    # best-first: larger bound first, ties to the larger box pair, then FIFO
    heap = [(-math.inf, -2 * root.size, 0, root, root)]
    while heap:
        neg_bound, neg_size, _, a, b = heapq.heappop(heap)
        if -neg_bound <= best:
            break
        if a.is_leaf() and b.is_leaf():
            if a is b:
                ca, xa = leaf_arrays(a)
                sup, pairs = kernels.pairwise_holder_sup(ca, xa, alpha)
            else:
                ca, xa = leaf_arrays(a)
                cb, xb = leaf_arrays(b)
                sup, pairs = kernels.cross_holder_sup(ca, xa, cb, xb, alpha)
            evaluated_pairs += int(pairs)
            if sup > best:
                best = float(sup)
            continue
        if a is b:
            kids = a.split(grid_vals)
            new_pairs = [(x, y) for x, y in combinations_with_replacement(kids, 2)]
        else:
            # split the larger box, keep the other
            tgt, keep = (a, b) if a.size >= b.size else (b, a)
            if tgt.is_leaf():
                tgt, keep = keep, tgt
            new_pairs = [(c, keep) for c in tgt.split(grid_vals)]
        for x, y in new_pairs:
            bound = _pair_bound(x, y, v.spacing, alpha)
            if bound > best:
                counter += 1
                heapq.heappush(heap, (-bound, -(x.size + y.size), counter, x, y))

    total_pairs = npts * (npts - 1) // 2
    return NormValue(
        best, "holder", {"alpha": alpha}, "branch-and-bound", _grid_meta(v),
        stats={"pairs": evaluated_pairs, "total_pairs": total_pairs,
               "explored_fraction": evaluated_pairs / total_pairs},
    )


# ---------------------------------------------------------------------------
# extended-norm dispatcher

def extended_norm(u: GridFunction, p: ExtendedExponent, n: int,
                  method: str = "bb") -> NormValue:
    """Dispatch on the extended scale: Lebesgue, sup, or the Holder branch
    via decomposition into derivative order s and exponent alpha = -n/ptilde."""
    tag = classify(p, n)
    if tag == OUT_OF_SCALE:
        raise OutOfScaleError(f"p = {p} is out of scale for n = {n}")
    if tag == LEBESGUE:
        return lebesgue_norm(u, p.p_float)
    if tag == SUP:
        return lebesgue_norm(u, math.inf)
    dec = holder_decompose(p, n)
    target = gradient(u, dec.s) if dec.s >= 1 else u
    if dec.p_tilde.is_inf:
        nv = lebesgue_norm(target, math.inf)
        return NormValue(nv.value, "holder",
                         {"s": dec.s, "ptilde": "inf"}, "sup-of-gradient", nv.grid)
    alpha = float(dec.alpha)
    semi = (holder_seminorm_bb if method == "bb" else holder_seminorm_naive)(target, alpha)
    return NormValue(semi.value, "holder",
                     {"s": dec.s, "ptilde": str(dec.p_tilde), "alpha": alpha},
                     semi.method, semi.grid, stats=semi.stats)


def scaling_exponent_check(u: GridFunction, p: ExtendedExponent, lam, n: int) -> dict:
    """Residual of the dilation law |u_lam|_p = lam^(-n/p) |u|_p in log space."""
    from .grids import dilate  # local import to avoid cycle at module load

    lamf = float(lam)
    base = extended_norm(u, p, n)
    dil = extended_norm(dilate(u, lam), p, n)
    if base.value <= 0 or dil.value <= 0:
        raise ValueError("scaling check needs a nonzero norm")
    n_over_p = float(n * p.rho)
    residual = abs(math.log(dil.value) - math.log(base.value) + n_over_p * math.log(lamf))
    return {"p": str(p), "lambda": lamf, "norm": base.value,
            "norm_dilated": dil.value, "residual": residual}
