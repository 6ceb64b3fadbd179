"""Command-line entry point.

Exit codes: 0 success, 1 check violation, 2 usage error (argparse default).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .exponents import ExtendedExponent
from .grids import FamilySpec, read_gfn
from .harness import (
    DEFAULT_DRIFT_THRESHOLD,
    extremizer_search,
    gn_instance,
    instance_from_json,
    interpolation_instance,
    ratio,
    sweep,
)
from .isoperimetry import lemma_bmr_check, read_rsn
from .norms import distribution_function, extended_norm
from .prooflab import balance_s, truncate
from .norms import lebesgue_norm


def _load_json(path):
    with open(path) as f:
        return json.load(f)


def cmd_check_exponents(args) -> int:
    if args.theorem == "mt":
        inst = interpolation_instance(args.n, args.r, args.q, Fraction(args.theta))
    else:
        if args.j is None or args.k is None:
            print("error: --j and --k are required for --theorem gn", file=sys.stderr)
            return 2
        inst = gn_instance(args.n, args.j, args.k, Fraction(args.theta), args.r, args.q)
    doc = inst.describe()
    print(json.dumps(doc, indent=2))
    if not inst.admissible:
        print(inst.decision.reason, file=sys.stderr)
        return 1
    return 0


def cmd_norm(args) -> int:
    u = read_gfn(args.file)
    e = ExtendedExponent.parse(args.p)
    n = args.n if args.n is not None else u.n
    nv = extended_norm(u, e, n, method=args.method)
    print(nv.to_json())
    return 0


def cmd_truncate(args) -> int:
    u = read_gfn(args.file)
    pair = truncate(u, args.s)
    doc = {
        "s": pair.s,
        "superlevel_measure": pair.superlevel_measure,
        "max_u_s": float(abs(pair.u_s.values).max()),
        "tail_l1": lebesgue_norm(pair.tail, 1).value,
    }
    print(json.dumps(doc))
    return 0


def cmd_balance(args) -> int:
    u = read_gfn(args.file)
    res = balance_s(u, args.p, args.q, args.r, u.n)
    print(json.dumps({"s": res.s, "lhs": res.lhs, "rhs": res.rhs,
                      "residual": res.residual, "bracket": list(res.bracket),
                      "boundary": res.boundary}))
    return 0


def cmd_isoperimetric(args) -> int:
    s = read_rsn(args.file)
    t_grid = [float(t) for t in args.t.split(",")]
    reports = lemma_bmr_check(s, t_grid)
    print(json.dumps(reports))
    return 1 if any(r["violation"] for r in reports) else 0


def cmd_verify(args) -> int:
    inst = instance_from_json(_load_json(args.instance))
    if not inst.admissible:
        print(json.dumps(inst.describe()))
        print(inst.decision.reason, file=sys.stderr)
        return 1
    spec = FamilySpec.from_json(_load_json(args.family))
    report = sweep(spec, inst, refine=args.refine)
    print(report.to_json())
    if args.refine and report.drift > args.drift_threshold:
        print(f"refinement drift {report.drift:.3%} exceeds "
              f"{args.drift_threshold:.3%}", file=sys.stderr)
        return 1
    return 0


def cmd_extremize(args) -> int:
    inst = instance_from_json(_load_json(args.instance))
    if not inst.admissible:
        print(inst.decision.reason, file=sys.stderr)
        return 1
    spec = FamilySpec.from_json(_load_json(args.family))
    result = extremizer_search(inst, spec, budget=args.budget)
    print(json.dumps(result))
    return 0


def cmd_plot_data(args) -> int:
    if args.kind == "distribution":
        u = read_gfn(args.file)
        import numpy as np

        vmax = float(abs(u.values).max())
        print("t,lambda")
        for t in np.linspace(vmax / args.points, vmax, args.points):
            print(f"{t},{distribution_function(u, float(t))}")
        return 0
    if args.kind == "balance":
        u = read_gfn(args.file)
        import numpy as np

        from .prooflab import holder_range_seminorm

        vmax = float(abs(u.values).max())
        p, q, r = args.p, args.q, args.r
        print("s,rhs")
        for s in np.linspace(vmax / args.points, vmax * 0.999, args.points):
            lam = distribution_function(u, float(s))
            rhs = float(s) ** (p - q) * lam ** (p / r - 1.0) if lam > 0 else float("inf")
            print(f"{s},{rhs}")
        return 0
    if args.kind == "ratios":
        inst = instance_from_json(_load_json(args.instance))
        if not inst.admissible:
            print(inst.decision.reason, file=sys.stderr)
            return 1
        spec = FamilySpec.from_json(_load_json(args.family))
        report = sweep(spec, inst, refine=False)
        print("seed,ratio")
        for rec in report.records:
            print(f"{rec['seed']},{rec['ratio'] if rec['ratio'] is not None else ''}")
        return 0
    return 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="interplab",
                                 description="inequality verification laboratory")
    sub = ap.add_subparsers(dest="command", required=True)

    ce = sub.add_parser("check-exponents", help="admissibility of a parameter tuple")
    ce.add_argument("--theorem", choices=("mt", "gn"), required=True)
    ce.add_argument("--n", type=int, required=True)
    ce.add_argument("--j", type=int)
    ce.add_argument("--k", type=int)
    ce.add_argument("--theta", required=True)
    ce.add_argument("--r", required=True)
    ce.add_argument("--q", required=True)
    ce.set_defaults(fn=cmd_check_exponents)

    nm = sub.add_parser("norm", help="extended norm of a GFN1 grid function")
    nm.add_argument("--file", required=True)
    nm.add_argument("--p", required=True)
    nm.add_argument("--n", type=int)
    nm.add_argument("--method", choices=("bb", "naive"), default="bb")
    nm.set_defaults(fn=cmd_norm)

    tr = sub.add_parser("truncate", help="truncation split at a level")
    tr.add_argument("--file", required=True)
    tr.add_argument("--s", type=float, required=True)
    tr.set_defaults(fn=cmd_truncate)

    ba = sub.add_parser("balance", help="balancing level of the proof")
    ba.add_argument("--file", required=True)
    ba.add_argument("--p", type=float, required=True)
    ba.add_argument("--q", type=float, required=True)
    ba.add_argument("--r", type=float, required=True)
    ba.set_defaults(fn=cmd_balance)

    iso = sub.add_parser("isoperimetric", help="inner-parallel ball comparison")
    iso.add_argument("--file", required=True)
    iso.add_argument("--t", required=True, help="comma-separated t values")
    iso.set_defaults(fn=cmd_isoperimetric)

    ve = sub.add_parser("verify", help="sweep a family against an instance")
    ve.add_argument("--instance", required=True)
    ve.add_argument("--family", required=True)
    ve.add_argument("--refine", action="store_true")
    ve.add_argument("--drift-threshold", type=float, default=DEFAULT_DRIFT_THRESHOLD)
    ve.set_defaults(fn=cmd_verify)

    ex = sub.add_parser("extremize", help="search for near-extremizers")
    ex.add_argument("--instance", required=True)
    ex.add_argument("--family", required=True)
    ex.add_argument("--budget", type=int, default=100)
    ex.set_defaults(fn=cmd_extremize)

    pd = sub.add_parser("plot-data", help="CSV series for external plotting")
    pd.add_argument("--kind", choices=("distribution", "balance", "ratios"),
                    required=True)
    pd.add_argument("--file")
    pd.add_argument("--instance")
    pd.add_argument("--family")
    pd.add_argument("--p", type=float)
    pd.add_argument("--q", type=float)
    pd.add_argument("--r", type=float)
    pd.add_argument("--points", type=int, default=64)
    pd.set_defaults(fn=cmd_plot_data)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
