"""Command-line front end.

Every subcommand is deterministic given its flags and prints JSON (sorted
keys) to stdout, or to --output. Exit status: 0 on success (including a
negative but well-posed answer such as an infeasible extension), 1 when an
asserted invariant fails, 2 on argument errors.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import json
import sys

from . import bounds as bounds_mod
from .algebra import pmn_algebra, truncated_poly, verify_algebra
from .deformation import def_space, presented_pmn_deformation
from .fields import QQ, field_by_name
from .quantum import extension_solve, truncated_psi_pmn
from .serialize import (
    algebra_from_json,
    algebra_to_json,
    cochain_to_json,
    coordinates_to_json,
    dumps,
    triple_from_json,
    witness_to_json,
)
from .structure import classify_pmn, is_semisplit, is_split


def _parse_algebra(spec, field):
    if spec.startswith("pmn:"):
        m, n = (int(x) for x in spec[4:].split(","))
        return pmn_algebra(m, n, field)
    if spec.startswith("cpn:"):
        return truncated_poly(int(spec[4:]), field)
    if spec.startswith("file:"):
        with open(spec[5:]) as fh:
            return algebra_from_json(json.load(fh))
    raise SystemExit2("unknown algebra spec %r" % spec)


class SystemExit2(SystemExit):
    def __init__(self, msg):
        print("error: %s" % msg, file=sys.stderr)
        super().__init__(2)


def _parse_coeffs(spec, field):
    out = {}
    if not spec:
        return out
    for item in spec.split(","):
        idx, val = item.split("=")
        out[int(idx)] = field.parse(val)
    return out


def _parse_triple(args, field):
    if args.triple:
        with open(args.triple) as fh:
            return triple_from_json(json.load(fh))
    if not args.pmn:
        raise SystemExit2("either --triple or --pmn with --d is required")
    m, n = (int(x) for x in args.pmn.split(","))
    a = _parse_coeffs(args.a, field)
    b = _parse_coeffs(args.b, field)
    return presented_pmn_deformation(m, n, args.d, a, b, field)


def _emit(args, payload):
    text = dumps(payload)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tag_str(tag):
    return "%s(%s)" % (tag[0], ",".join(str(t) for t in tag[1:]))


def cmd_defspace(args):
    field = field_by_name(args.field)
    R = _parse_algebra(args.algebra, field)
    ds = def_space(R, args.d)
    _emit(args, {
        "algebra": args.algebra,
        "field": args.field,
        "d": args.d,
        "dimension": ds.dimension,
        "cocycle_dimension": len(ds.cocycle_basis),
        "coboundary_dimension": len(ds.coboundary_basis),
        "representatives": [cochain_to_json(c) for c in ds.representatives],
    })
    return 0


def cmd_classify(args):
    field = field_by_name(args.field)
    T = _parse_triple(args, field)
    co = classify_pmn(T)
    _emit(args, coordinates_to_json(co, field))
    return 0


def cmd_split(args):
    field = field_by_name(args.field)
    T = _parse_triple(args, field)
    res = is_split(T)
    payload = {
        "split": res.split,
        "coordinates": coordinates_to_json(res.coords, field),
        "offending": [[side, i] for side, i in res.offending],
    }
    if res.split:
        f1, f2 = res.factors
        payload["factors"] = {
            "alpha": field.fmt(res.coords.a.get(res.coords.m + 1, field.zero)),
            "beta": field.fmt(res.coords.b.get(res.coords.d // 2, field.zero)),
        }
    _emit(args, payload)
    return 0


def cmd_semisplit(args):
    field = field_by_name(args.field)
    T = _parse_triple(args, field)
    res = is_semisplit(T, args.factor)
    payload = {
        "semisplit": res.semisplit,
        "factor": args.factor,
        "offending": [[side, i] for side, i in res.offending],
    }
    if res.witness is not None:
        payload["witness"] = {
            "lift": [field.fmt(c) for c in res.witness.lift],
            "alpha": field.fmt(res.witness.alpha),
            "power": res.witness.power,
        }
    _emit(args, payload)
    return 0


def cmd_qext(args):
    field = field_by_name(args.field)
    T = _parse_triple(args, field)
    m, n = _pmn_shape_of(T)
    Q = truncated_psi_pmn(m, n, field, line_factor=args.line_factor)
    res = extension_solve(T, Q, verify=args.verify)
    payload = {"feasible": res.feasible, "line_factor": args.line_factor}
    if res.feasible:
        payload["witness"] = witness_to_json(res.witness)
    else:
        payload["certificate"] = [[_tag_str(tag), field.fmt(c)]
                                  for tag, c in res.certificate]
    _emit(args, payload)
    return 0


def _pmn_shape_of(T):
    from .structure import pmn_shape
    return pmn_shape(T.base)


def cmd_bound(args):
    rep = bounds_mod.theorem1_bound(args.m, args.n, args.k)
    _emit(args, {
        "m": rep.m, "n": rep.n, "k": rep.k,
        "bound": rep.bound,
        "betti_terms": rep.betti_terms,
        "positive": rep.positive,
    })
    return 0


def cmd_lambda_bound(args):
    rep = bounds_mod.lambda_bound(args.m, args.n, args.k)
    _emit(args, {
        "m": rep.m, "n": rep.n, "k": rep.k,
        "bound": rep.bound,
        "covered": rep.covered,
    })
    return 0


def cmd_cusp(args):
    rep = bounds_mod.cusp_feasibility(QQ.parse(getattr(args, "lambda")),
                                      kmax=args.kmax)
    _emit(args, {
        "lambda": QQ.fmt(rep.lam),
        "feasible": rep.feasible,
        "solutions": [[k, l] for k, l in rep.solutions],
        "exhaustive": rep.exhaustive,
        "kmax": rep.kmax,
    })
    return 0


def _pipeline_row(params):
    m, n, d, field_name = params
    rep = bounds_mod.semisplit_pipeline(m, n, d, field_by_name(field_name))
    row = dataclasses.asdict(rep)
    row["ok"] = rep.ok
    return row


def cmd_pipeline(args):
    dvals = [args.d] if args.d else list(range(2, 2 * max(args.m, args.n) + 3, 2))
    params = [(args.m, args.n, d, args.field) for d in dvals]
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(_pipeline_row, params))
    else:
        rows = [_pipeline_row(p) for p in params]
    rows.sort(key=lambda r: r["d"])
    ok = all(r["ok"] for r in rows)
    if args.format == "table":
        cols = ["d", "dim_def", "dim_split", "bound",
                "feasible_dim_factor2", "feasible_dim_factor1", "ok"]
        lines = ["  ".join("%-9s" % c for c in cols)]
        for r in rows:
            lines.append("  ".join("%-9s" % r[c] for c in cols))
        text = "\n".join(lines) + "\n"
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        _emit(args, {"m": args.m, "n": args.n, "rows": rows, "ok": ok})
    return 0 if ok else 1


def cmd_verify_algebra(args):
    field = field_by_name(args.field)
    A = _parse_algebra(args.algebra, field)
    rep = verify_algebra(A)
    _emit(args, {
        "ok": rep.ok,
        "failures": [[name, detail] for name, detail in rep.failures],
        "dimension": A.dim,
    })
    return 0 if rep.ok else 1


def _add_common(p):
    p.add_argument("--field", default="Q", help="Q or Fp:<p>")
    p.add_argument("--json", action="store_true",
                   help="emit JSON (the default; accepted for explicitness)")
    p.add_argument("--output", default=None, help="write output to a file")


def _add_triple_inputs(p):
    p.add_argument("--triple", default=None, help="path to a serialized triple")
    p.add_argument("--pmn", default=None, help="m,n for a presented deformation")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--a", default="", help="a-coefficients, e.g. 2=1,3=5/2")
    p.add_argument("--b", default="", help="b-coefficients")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="qdeform",
        description="Exact deformation calculus for graded commutative algebras",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("defspace", help="deformation space dimension and classes")
    p.add_argument("--algebra", required=True, help="pmn:<m>,<n> | cpn:<n> | file:<path>")
    p.add_argument("--d", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_defspace)

    p = sub.add_parser("classify", help="classifying coordinates of a deformation")
    _add_triple_inputs(p)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("split", help="decide splitness, with factors or refutation")
    _add_triple_inputs(p)
    _add_common(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("semisplit", help="decide semi-splitness w.r.t. a factor")
    _add_triple_inputs(p)
    p.add_argument("--factor", type=int, choices=(1, 2), required=True)
    _add_common(p)
    p.set_defaults(func=cmd_semisplit)

    p = sub.add_parser("qext", help="extension feasibility of the 3-point invariant")
    _add_triple_inputs(p)
    p.add_argument("--line-factor", type=int, choices=(1, 2), default=2)
    p.add_argument("--verify", action="store_true",
                   help="re-check the witness against all axioms")
    _add_common(p)
    p.set_defaults(func=cmd_qext)

    p = sub.add_parser("bound", help="cokernel rank lower bound at odd k")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("lambda-bound", help="one-sided bound for weighted forms")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_lambda_bound)

    p = sub.add_parser("cusp", help="cusp-curve integer feasibility")
    p.add_argument("--lambda", required=True, help="exact rational > 1, e.g. 5/2")
    p.add_argument("--kmax", type=int, default=200,
                   help="scan bound for the unbounded lambda = 3/2 strip")
    _add_common(p)
    p.set_defaults(func=cmd_cusp)

    p = sub.add_parser("pipeline", help="feasibility vs splitting, full run")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None,
                   help="single even d; default scans 2..2*max(m,n)+2")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json", "table"), default="json")
    _add_common(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("verify-algebra", help="check the algebra invariants")
    p.add_argument("--algebra", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_verify_algebra)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
