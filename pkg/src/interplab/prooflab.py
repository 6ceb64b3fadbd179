"""Constructive devices used inside the interpolation proof, instrumented as
numerical checks.

In this module the Holder-range norm of u itself is the node-pair semi-norm
with exponent alpha = -n/r, which is how the proof's second case uses it; the
pairwise inequality |u(x)-u(y)| <= |u|_r |x-y|^(-n/r) then holds on the grid
by construction of the computed sup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grids import GridFunction
from .norms import (
    distribution_function,
    holder_seminorm_bb,
    holder_seminorm_naive,
    lebesgue_norm,
    weak_lorentz_norm,
)
from . import kernels


def _check_holder_range(r, n) -> float:
    r = float(r)
    if not r <= -n:
        raise ValueError(f"need r <= -n (Holder range), got r = {r}, n = {n}")
    return r


def holder_range_seminorm(u: GridFunction, r, n: int, method: str = "bb") -> float:
    """|u|_r for r <= -n as the raw node-pair semi-norm with alpha = -n/r."""
    r = _check_holder_range(r, n)
    alpha = -n / r
    fn = holder_seminorm_bb if method == "bb" else holder_seminorm_naive
    return fn(u, alpha).value


@dataclass(frozen=True)
class TruncationPair:
    u: GridFunction
    s: float
    u_s: GridFunction
    tail: GridFunction
    superlevel_measure: float


def truncate(u: GridFunction, s: float) -> TruncationPair:
    """u_s = sgn(u) min(|u|, s); tail = u - u_s, supported on {|u| > s}."""
    if s <= 0:
        raise ValueError("truncation level must be positive")
    clipped = np.sign(u.values) * np.minimum(np.abs(u.values), s)
    u_s = GridFunction(n=u.n, shape=u.shape, spacing=u.spacing, origin=u.origin,
                       values=clipped)
    tail = GridFunction(n=u.n, shape=u.shape, spacing=u.spacing, origin=u.origin,
                        values=u.values - clipped)
    measure = float((np.abs(u.values) > s).sum()) * u.cell_volume
    return TruncationPair(u=u, s=s, u_s=u_s, tail=tail, superlevel_measure=measure)


def layer_cake_tail_bound(u: GridFunction, s: float, p: float, r, n: int) -> dict:
    """Tail estimate |u - u_s|_p^p <= |u|_r^p |{|u|>s}|^(1-p/r)."""
    r = _check_holder_range(r, n)
    p = float(p)
    if p < 1:
        raise ValueError("need p >= 1")
    pair = truncate(u, s)
    if pair.superlevel_measure == 0:
        raise ValueError(f"degenerate level: {{|u| > {s}}} is empty")
    lhs = lebesgue_norm(pair.tail, p).value ** p
    semi = holder_range_seminorm(u, r, n)
    rhs = semi**p * pair.superlevel_measure ** (1.0 - p / r)
    return {"lhs": lhs, "rhs": rhs, "ratio": lhs / rhs if rhs > 0 else math.inf,
            "s": s, "p": p, "r": r, "superlevel_measure": pair.superlevel_measure}


def tail_moment_bound(u: GridFunction, s: float, p: float, q: float) -> dict:
    """Truncated-part estimate |u_s|_p^p <= (p/(p-q)) s^(p-q) |u|_{q,inf}^q."""
    p, q = float(p), float(q)
    if not p > q >= 1:
        raise ValueError(f"need p > q >= 1, got p = {p}, q = {q}")
    pair = truncate(u, s)
    lhs = lebesgue_norm(pair.u_s, p).value ** p
    wlq = weak_lorentz_norm(u, q).value
    rhs = (p / (p - q)) * s ** (p - q) * wlq**q
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf)
    return {"lhs": lhs, "rhs": rhs, "ratio": ratio, "s": s, "p": p, "q": q}


@dataclass(frozen=True)
class BalanceResult:
    s: float
    lhs: float
    rhs: float
    residual: float
    bracket: tuple
    boundary: bool


def balance_s(u: GridFunction, p: float, q: float, r, n: int,
              iterations: int = 200) -> BalanceResult:
    """Find the level s balancing |u|_r^p / |u|_{q,inf}^q = s^(p-q) lam(s)^(p/r-1).

    The distribution function lam is a step function on grids, so exact
    equality is generally unattainable; returns the bracketing step and the
    log residual at the better endpoint.
    """
    r = _check_holder_range(r, n)
    p, q = float(p), float(q)
    if not (p > q >= 1):
        raise ValueError("case-one tuple needs p > q >= 1")
    mag = np.abs(u.values)
    if not (mag > 0).any():
        raise ValueError("balance_s needs a nonzero function")
    semi = holder_range_seminorm(u, r, n)
    wlq = weak_lorentz_norm(u, q).value
    if semi == 0 or wlq == 0:
        raise ValueError("degenerate norms: balancing identity undefined")
    lhs = semi**p / wlq**q

    vmax = float(mag.max())
    expo = p / r - 1.0  # negative

    def rhs(s):
        lam = distribution_function(u, s)
        if lam == 0:
            return math.inf
        return s ** (p - q) * lam**expo

    s_lo = float(mag[mag > 0].min()) / 2.0
    s_hi = vmax
    if rhs(s_lo) > lhs:
        return BalanceResult(s=s_lo, lhs=lhs, rhs=rhs(s_lo),
                             residual=abs(math.log(lhs) - math.log(rhs(s_lo))),
                             bracket=(s_lo, s_hi), boundary=True)
    lo, hi = s_lo, s_hi
    for _ in range(iterations):
        mid = math.sqrt(lo * hi)
        if rhs(mid) <= lhs:
            lo = mid
        else:
            hi = mid
    cands = [(abs(math.log(lhs) - math.log(rhs(s))) if 0 < rhs(s) < math.inf else math.inf, s)
             for s in (lo, hi)]
    resid, s_best = min(cands)
    return BalanceResult(s=s_best, lhs=lhs, rhs=rhs(s_best), residual=resid,
                         bracket=(lo, hi), boundary=False)


def pointwise_estimate_check(u: GridFunction, q: float, r, n: int) -> dict:
    """max|u| against |u|_{q,inf}^(q/(q-r)) |u|_r^(r/(r-q))."""
    r = _check_holder_range(r, n)
    q = float(q)
    if q < 1:
        raise ValueError("need q >= 1")
    mag = np.abs(u.values)
    maxval = float(mag.max())
    if maxval == 0:
        raise ValueError("zero function rejected")
    wlq = weak_lorentz_norm(u, q).value
    semi = holder_range_seminorm(u, r, n)
    bound = wlq ** (q / (q - r)) * semi ** (r / (r - q))
    c_emp = maxval / bound if bound > 0 else math.inf
    return {"maxval": maxval, "bound": bound, "empirical_constant": c_emp,
            "q": q, "r": r}


def ball_inclusion_check(u: GridFunction, r, n: int, x_index,
                         semi: float = None) -> dict:
    """Count grid nodes inside B(x, (|u(x)|/2)^(-r/n) |u|_r^(r/n)) whose value
    drops to |u(x)|/2 or below; zero for exact grid data.

    semi may carry a precomputed |u|_r to amortize sweeps over many nodes.
    """
    r = _check_holder_range(r, n)
    x_index = tuple(x_index)
    ux = abs(float(u.values[x_index]))
    if ux == 0:
        raise ValueError("need |u(x)| > 0")
    if semi is None:
        semi = holder_range_seminorm(u, r, n)
    if semi == 0:
        return {"violations": 0, "radius": None, "degenerate": True}
    radius = (ux / 2.0) ** (-r / n) * semi ** (r / n)
    coords = u.node_coords()
    x_coord = np.array([u.origin[k] + u.spacing[k] * x_index[k] for k in range(u.n)])
    dist = np.sqrt(((coords - x_coord) ** 2).sum(axis=1))
    # relative guard keeps boundary-of-ball nodes (dist == radius up to
    # rounding) out of the strict inclusion
    inside = dist < radius * (1.0 - 1e-12)
    low = np.abs(u.values).ravel() <= ux / 2.0
    violations = int((inside & low).sum())
    return {"violations": violations, "radius": radius, "degenerate": False,
            "checked": int(inside.sum())}


def split_seminorm_check(u: GridFunction, p, r, q: float, n: int,
                         s: float = None) -> dict:
    """Near/far split of the |.|_p semi-norm sup: I over pairs with
    |x-y| <= s, II over |x-y| > s, with the proof's bounds for each part.

    When s is omitted the closed-form optimizer
    s = (|u|_{q,inf} / |u|_r)^(-qr/(n(q-r))) is used.
    """
    p = _check_holder_range(p, n)
    r = _check_holder_range(r, n)
    q = float(q)
    wlq = weak_lorentz_norm(u, q).value
    semi_r = holder_range_seminorm(u, r, n)
    if wlq == 0 or semi_r == 0:
        raise ValueError("degenerate norms")
    optimal_s = (wlq / semi_r) ** (-q * r / (n * (q - r)))
    if s is None:
        s = optimal_s
    s = float(s)
    if s <= 0:
        raise ValueError("threshold must be positive")

    alpha_p = -n / p
    coords = np.ascontiguousarray(u.node_coords())
    vals = np.ascontiguousarray(u.values.reshape(-1, 1))
    near, far = kernels.split_holder_sups(coords, vals, alpha_p, s)

    diam = math.sqrt(sum(((sh - 1) * h) ** 2 for sh, h in zip(u.shape, u.spacing)))
    flags = []
    if s >= diam:
        flags.append("far-part vacuous: s exceeds box diameter")
    if s < min(u.spacing):
        flags.append("near-part vacuous: s below grid spacing")

    bound_near = semi_r * s ** (-n / r + n / p)
    pw = wlq ** (q / (q - r)) * semi_r ** (r / (r - q))
    bound_far = s ** (n / p) * pw

    theta = (1.0 / p - 1.0 / q) / (1.0 / r - 1.0 / q)
    rhs_interp = semi_r**theta * wlq ** (1.0 - theta)
    return {
        "s": s, "optimal_s": optimal_s, "I": near, "II": far,
        "boundI": bound_near, "boundII": bound_far,
        "empirical_C_II": far / bound_far if bound_far > 0 else math.inf,
        "theta": theta, "rhs_interpolation": rhs_interp,
        "sum_vs_rhs": (near + far) / rhs_interp if rhs_interp > 0 else math.inf,
        "flags": flags,
    }
