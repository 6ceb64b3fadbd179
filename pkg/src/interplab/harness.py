"""End-to-end inequality verification: resolved parameter tuples, per-sample
left/right ratios, corpus sweeps with refinement drift, scale-invariance
checks, and a derivative-free near-extremizer search.

The true constants are unknown, so every aggregate is reported as an
empirical lower bound on C; acceptance is structural (invariance,
boundedness, refinement stability), never a value-level claim about C.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exponents import (
    Decision,
    ExtendedExponent,
    classify,
    gn_solve,
    holder_decompose,
    interpolation_solve,
    HOLDER,
    LEBESGUE,
    SUP,
)
from .grids import FamilySpec, GridFunction, dilate, generate, gradient, scale
from .norms import extended_norm, lebesgue_norm, weak_lorentz_norm, holder_seminorm_bb

DEFAULT_DRIFT_THRESHOLD = 0.05
DEFAULT_SCALE_RESIDUAL = 1e-8


def _thread_map(fn, items):
    workers = int(os.environ.get("INTERP_LAB_THREADS", "1") or "1")
    items = list(items)
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


@dataclass(frozen=True)
class InequalityInstance:
    kind: str  # interpolation | gn
    n: int
    r: ExtendedExponent
    q: ExtendedExponent
    theta: Fraction
    p: ExtendedExponent
    decision: Decision
    rhs_weak: bool
    j: int = 0
    k: int = 0
    zeta: Fraction = None

    @property
    def admissible(self) -> bool:
        return self.decision.ok

    def describe(self) -> dict:
        doc = {"kind": self.kind, "n": self.n, "r": str(self.r), "q": str(self.q),
               "theta": str(self.theta), "p": str(self.p),
               "admissible": self.decision.ok, "reason": self.decision.reason,
               "warnings": list(self.decision.warnings), "rhs_weak": self.rhs_weak}
        if self.kind == "gn":
            doc.update({"j": self.j, "k": self.k, "zeta": str(self.zeta)})
        return doc


def interpolation_instance(n, r, q, theta) -> InequalityInstance:
    r = r if isinstance(r, ExtendedExponent) else ExtendedExponent.from_p(r)
    q = q if isinstance(q, ExtendedExponent) else ExtendedExponent.from_p(q)
    theta = Fraction(theta)
    p, decision = interpolation_solve(r, q, theta, n)
    return InequalityInstance(kind="interpolation", n=n, r=r, q=q, theta=theta,
                              p=p, decision=decision, rhs_weak=True)


def gn_instance(n, j, k, theta, r, q) -> InequalityInstance:
    r = r if isinstance(r, ExtendedExponent) else ExtendedExponent.from_p(r)
    q = q if isinstance(q, ExtendedExponent) else ExtendedExponent.from_p(q)
    theta = Fraction(theta)
    tup, decision = gn_solve(n, j, k, theta, r, q)
    return InequalityInstance(kind="gn", n=n, r=r, q=q, theta=theta, p=tup.p,
                              decision=decision, rhs_weak=False,
                              j=j, k=k, zeta=tup.zeta)


def instance_from_json(doc) -> InequalityInstance:
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    kind = doc["kind"]
    if kind == "interpolation":
        return interpolation_instance(int(doc["n"]), str(doc["r"]), str(doc["q"]),
                                      Fraction(str(doc["theta"])))
    if kind == "gn":
        return gn_instance(int(doc["n"]), int(doc["j"]), int(doc["k"]),
                           Fraction(str(doc["theta"])), str(doc["r"]), str(doc["q"]))
    raise ValueError(f"unknown instance kind {kind!r}")


def _derivative_factor(u: GridFunction, order: int, e: ExtendedExponent, n: int,
                       method: str = "bb") -> float:
    """|grad^order u|_e across the whole scale (order 0 means u itself)."""
    tag = classify(e, n)
    if tag in (LEBESGUE, SUP):
        target = gradient(u, order) if order >= 1 else u
        return lebesgue_norm(target, e.p_float if tag == LEBESGUE else math.inf).value
    if tag != HOLDER:
        raise ValueError(f"exponent {e} out of scale")
    dec = holder_decompose(e, n)
    total = order + dec.s
    target = gradient(u, total) if total >= 1 else u
    if dec.p_tilde.is_inf:
        return lebesgue_norm(target, math.inf).value
    return holder_seminorm_bb(target, float(dec.alpha)).value


def ratio(u: GridFunction, inst: InequalityInstance, seed=None, params=None) -> dict:
    """One left/right ratio record for an admissible instance."""
    if not inst.admissible:
        raise ValueError(f"inadmissible instance: {inst.decision.reason}")
    n = inst.n
    theta = float(inst.theta)
    if inst.kind == "interpolation":
        lhs = extended_norm(u, inst.p, n).value
        fac_r = extended_norm(u, inst.r, n).value
        fac_q = (weak_lorentz_norm(u, inst.q.p_float).value
                 if not inst.q.is_inf else lebesgue_norm(u, math.inf).value)
    else:
        lhs = _derivative_factor(u, inst.j, inst.p, n)
        fac_r = _derivative_factor(u, inst.k, inst.r, n)
        fac_q = (lebesgue_norm(u, inst.q.p_float).value
                 if not inst.q.is_inf else lebesgue_norm(u, math.inf).value)
    rhs = fac_r**theta * fac_q ** (1.0 - theta)
    degenerate = rhs == 0.0
    rec = {
        "lhs": lhs, "factor_r": fac_r, "factor_q": fac_q, "rhs": rhs,
        "ratio": (lhs / rhs) if not degenerate else None,
        "degenerate": degenerate,
    }
    if seed is not None:
        rec["seed"] = seed
    if params is not None:
        rec["params"] = params
    return rec


@dataclass(frozen=True)
class RatioReport:
    records: list
    sup_ratio: float
    argmax_seed: object
    grid: dict
    refined: dict = field(default_factory=dict)
    degenerate_count: int = 0

    @property
    def drift(self) -> float:
        if not self.refined:
            return 0.0
        fine = self.refined["sup_ratio"]
        if self.sup_ratio == 0:
            return 0.0 if fine == 0 else math.inf
        return abs(self.sup_ratio - fine) / self.sup_ratio

    def to_json(self) -> str:
        return json.dumps({
            "records": self.records, "sup_ratio": self.sup_ratio,
            "argmax_seed": self.argmax_seed, "grid": self.grid,
            "refined": self.refined, "drift": self.drift,
            "degenerate_count": self.degenerate_count,
        })


def _refine_spec(spec: FamilySpec) -> FamilySpec:
    grid = dict(spec.grid)
    shape = [int(s) for s in grid["shape"]]
    grid["shape"] = [2 * (s - 1) + 1 for s in shape]
    spacing = np.broadcast_to(grid["spacing"], (len(shape),))
    grid["spacing"] = [float(h) / 2.0 for h in spacing]
    return FamilySpec(generator=spec.generator, params=spec.params,
                      grid=grid, seeds=spec.seeds)


def _sweep_once(spec: FamilySpec, inst: InequalityInstance):
    def one(seed):
        return ratio(generate(spec, seed), inst, seed=seed)

    records = _thread_map(one, spec.seeds)
    live = [r for r in records if not r["degenerate"]]
    sup = max((r["ratio"] for r in live), default=0.0)
    argmax = next((r["seed"] for r in live if r["ratio"] == sup), None)
    return records, sup, argmax


def sweep(spec: FamilySpec, inst: InequalityInstance, refine: bool = True) -> RatioReport:
    """Ratio over every family member, optionally re-run at half spacing."""
    if not inst.admissible:
        raise ValueError(f"inadmissible instance: {inst.decision.reason}")
    if not spec.seeds:
        raise ValueError("family has no seeds")
    records, sup, argmax = _sweep_once(spec, inst)
    refined = {}
    if refine:
        fine_spec = _refine_spec(spec)
        _, sup_fine, argmax_fine = _sweep_once(fine_spec, inst)
        refined = {"sup_ratio": sup_fine, "argmax_seed": argmax_fine,
                   "grid": fine_spec.grid}
    return RatioReport(
        records=records, sup_ratio=sup, argmax_seed=argmax,
        grid=dict(spec.grid), refined=refined,
        degenerate_count=sum(r["degenerate"] for r in records),
    )


def scale_invariance_suite(inst: InequalityInstance, u: GridFunction,
                           lambdas=(0.5, 2.0, 3.0), scalars=(2.0, 0.5, 4.0)) -> dict:
    """Residuals of log ratio under dilation and scalar multiplication."""
    base = ratio(u, inst)
    if base["degenerate"]:
        raise ValueError("degenerate base sample")
    log_base = math.log(base["ratio"])
    dil = {}
    for lam in lambdas:
        rec = ratio(dilate(u, lam), inst)
        dil[lam] = abs(math.log(rec["ratio"]) - log_base)
    sca = {}
    for c in scalars:
        rec = ratio(scale(u, c), inst)
        sca[c] = abs(math.log(rec["ratio"]) - log_base)
    return {
        "base_ratio": base["ratio"],
        "dilation_residuals": dil, "scaling_residuals": sca,
        "max_dilation_residual": max(dil.values(), default=0.0),
        "max_scaling_residual": max(sca.values(), default=0.0),
    }


# ---------------------------------------------------------------------------
# derivative-free extremizer search (simplex reflection)

def _continuous_params(spec: FamilySpec):
    names, los, his = [], [], []
    for name in sorted(spec.params):
        v = spec.params[name]
        if isinstance(v, (list, tuple)) and len(v) == 2 and all(
            isinstance(x, (int, float)) for x in v
        ) and v[0] < v[1]:
            names.append(name)
            los.append(float(v[0]))
            his.append(float(v[1]))
    return names, np.array(los), np.array(his)


def extremizer_search(inst: InequalityInstance, spec: FamilySpec,
                      budget: int = 100) -> dict:
    """Nelder-Mead style maximization of the ratio over the family's
    continuous parameter ranges; deterministic, budgeted by evaluations."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if not inst.admissible:
        raise ValueError(f"inadmissible instance: {inst.decision.reason}")
    names, los, his = _continuous_params(spec)
    seed = spec.seeds[0] if spec.seeds else 0
    trace = []

    def objective(x):
        x = np.clip(x, los, his) if len(names) else x
        params = dict(spec.params)
        for nm, v in zip(names, x):
            params[nm] = float(v)
        member = FamilySpec(generator=spec.generator, params=params,
                            grid=spec.grid, seeds=spec.seeds)
        rec = ratio(generate(member, seed), inst, params={nm: float(v) for nm, v in zip(names, x)})
        val = rec["ratio"] if not rec["degenerate"] else 0.0
        trace.append({"params": {nm: float(v) for nm, v in zip(names, x)},
                      "ratio": val})
        return val

    if not names:
        objective(np.array([]))
        best = max(trace, key=lambda t: t["ratio"])
        return {"best": best, "trace": trace, "flat_direction": False,
                "evaluations": len(trace)}

    dim = len(names)
    x0 = (los + his) / 2.0
    simplex = [x0]
    for i in range(dim):
        step = np.zeros(dim)
        step[i] = 0.25 * (his[i] - los[i])
        simplex.append(x0 + step)
    values = [objective(x) for x in simplex]

    # reflection/expansion/contraction on the negated objective
    while len(trace) < budget:
        order = np.argsort(values)[::-1]  # descending: best first
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        centroid = np.mean(simplex[:-1], axis=0)
        worst = simplex[-1]
        reflected = centroid + (centroid - worst)
        fr = objective(reflected)
        if fr > values[0]:
            expanded = centroid + 2.0 * (centroid - worst)
            fe = objective(expanded) if len(trace) < budget else fr
            if fe > fr:
                simplex[-1], values[-1] = expanded, fe
            else:
                simplex[-1], values[-1] = reflected, fr
        elif fr > values[-2]:
            simplex[-1], values[-1] = reflected, fr
        else:
            contracted = centroid + 0.5 * (worst - centroid)
            fc = objective(contracted) if len(trace) < budget else fr
            if fc > values[-1]:
                simplex[-1], values[-1] = contracted, fc
            else:
                for i in range(1, len(simplex)):
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                    if len(trace) >= budget:
                        break
                    values[i] = objective(simplex[i])

    best = max(trace, key=lambda t: t["ratio"])
    spread = max(values) - min(values)
    size = max(float(np.abs(s - simplex[0]).max()) for s in simplex[1:])
    scale_ref = max(float((his - los).max()), 1e-300)
    flat = spread <= 1e-9 * max(abs(best["ratio"]), 1e-300) and size > 1e-6 * scale_ref
    return {"best": best, "trace": trace, "flat_direction": bool(flat),
            "evaluations": len(trace)}
