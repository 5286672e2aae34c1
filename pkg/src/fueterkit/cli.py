"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
import traceback

from . import checks, scalars
from .algebra import (AlgebraError, DivergentSeries, NotInvertible, format_element,
                      resolve_algebra, spec_to_json)
from .checks import Context, report
from .fueter import (FueterPoint, apply_D, cauchy_product, evaluate, frechet_check,
                     monomial_expand, ordered_zeta_product, parse_multi_index,
                     series_from_json, series_to_json)
from .realization import (from_polynomial, product, realization_from_json, realization_to_json,
                          sum_, to_series)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    """Unreadable or inconsistent user input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


# ---------------------------------------------------------------------------
# input helpers

def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _spec_from_args(args):
    name = args.algebra
    try:
        return resolve_algebra(name), name
    except AlgebraError as exc:
        raise InputError(str(exc)) from exc


def _parse_point(text, spec):
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != spec.dim:
        raise InputError(f"point needs {spec.dim} coordinates")
    try:
        return FueterPoint(spec, [scalars.parse_scalar(p, spec.field) for p in parts])
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _parse_element(text, spec):
    parts = [p for p in text.replace(" ", "").strip("[]").split(",") if p]
    if len(parts) != spec.dim:
        raise InputError(f"element needs {spec.dim} coefficients")
    return spec.element([scalars.parse_scalar(p, spec.field) for p in parts])


def _parse_xi(text, spec):
    comps = [c for c in text.split(";")]
    if len(comps) != spec.m:
        raise InputError(f"xi needs {spec.m} components separated by ';'")
    return tuple(_parse_element(c, spec) for c in comps)


def _series_arg(path, spec):
    if path is None:
        return None
    try:
        return series_from_json(_load_json(path), spec)
    except (AlgebraError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _realization_arg(path, spec):
    if path is None:
        return None
    try:
        return realization_from_json(_load_json(path), spec)
    except (AlgebraError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _alpha(text, spec):
    try:
        a = parse_multi_index(text)
    except ValueError as exc:
        raise InputError(f"bad multi-index {text!r}") from exc
    if len(a) != spec.m or any(x < 0 for x in a):
        raise InputError(f"multi-index needs {spec.m} non-negative entries")
    return a


# ---------------------------------------------------------------------------
# commands

def cmd_algebra(args, ctx):
    if args.action == "validate":
        return checks.check_algebra_validate(ctx)
    spec = ctx.spec
    table = [[format_element(spec.e(i) * spec.e(j)) for j in range(spec.dim)]
             for i in range(spec.dim)]
    return report(ctx, "algebra.show", None, spec=spec_to_json(spec),
                  products=table, basis=list(spec.basis))


def cmd_dop(args, ctx):
    spec = ctx.spec
    if args.pair:
        j, k = (int(x) for x in args.pair.split(","))
        P = ordered_zeta_product(spec, [j, k])
        dP = apply_D(P)
        return report(ctx, "series.dop", None, product=f"zeta_{j} zeta_{k}",
                      D=str(dP), D_symmetrized=str(apply_D(P + ordered_zeta_product(spec, [k, j]))))
    if args.alpha is None:
        return checks.check_dop(ctx)
    alpha = _alpha(args.alpha, spec)
    center = _parse_point(args.center, spec) if args.center else FueterPoint.origin(spec)
    try:
        P = monomial_expand(alpha, center, cap=max(ctx.order, sum(alpha)))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    dP = apply_D(P)
    return report(ctx, "series.dop", dP.is_zero(), alpha=list(alpha),
                  center_v=[scalars.format_scalar(x) for x in center.v],
                  expansion=str(P), D=str(dP))


def cmd_series(args, ctx):
    spec = ctx.spec
    f = _series_arg(getattr(args, "series", None), spec)
    a = args.action
    if a == "dop":
        return cmd_dop(args, ctx)
    if a == "eval":
        if f is None or args.point is None:
            raise InputError("series eval needs --series and --point")
        val = evaluate(f, _parse_point(args.point, spec))
        return report(ctx, "series.eval", None, value=str(val))
    if a == "shift":
        return checks.check_shift(ctx, f, args.k)
    if a == "product":
        if f is None:
            return checks.check_product(ctx)
        g = _series_arg(args.series2, spec)
        if g is None:
            raise InputError("series product needs --series2")
        try:
            h = cauchy_product(f, g)
        except AlgebraError as exc:
            raise InputError(str(exc)) from exc
        return report(ctx, "series.product", None, product=series_to_json(h, ctx.algebra))
    if a == "inverse":
        return checks.check_inverse(ctx, f)
    if a == "recenter":
        c = _parse_point(args.center, spec) if args.center else None
        return checks.check_recenter(ctx, f, c)
    if a == "gleason":
        return checks.check_gleason(ctx, f)
    if a == "frechet":
        if f is None:
            return checks.check_frechet(ctx)
        r = frechet_check(f, seed=ctx.seed)
        return report(ctx, "series.frechet", r.passed, witness=r.flag or None,
                      slopes=[s if s != float("inf") else "exact" for s in r.slopes])
    if a == "tail":
        sigma = [float(scalars.parse_rational(x)) for x in args.sigma.split(",")] if args.sigma else None
        return checks.check_tail(ctx, f, sigma, args.from_order)
    raise InputError(f"unknown series action {a}")


def cmd_realize(args, ctx):
    spec = ctx.spec
    R = _realization_arg(args.realization, spec)
    a = args.action
    if a == "expand":
        return checks.check_realize_expand(ctx, R)
    if a == "invert":
        return checks.check_realize_invert(ctx, R)
    if a in ("product", "sum"):
        R2 = _realization_arg(args.realization2, spec)
        if R is None or R2 is None:
            return checks.check_realize_compose(ctx)
        try:
            out = product(R, R2) if a == "product" else sum_(R, R2)
        except AlgebraError as exc:
            raise InputError(str(exc)) from exc
        s1, s2 = to_series(R, ctx.order), to_series(R2, ctx.order)
        oracle = cauchy_product(s1, s2) if a == "product" else s1 + s2
        ok = to_series(out, ctx.order) == oracle
        return report(ctx, f"realize.{a}", ok, realization=realization_to_json(out, ctx.algebra))
    if a == "from-poly":
        P = _series_arg(args.series, spec)
        rep = checks.check_from_poly(ctx, P)
        if P is not None:
            rep["details"]["realization"] = realization_to_json(from_polynomial(P), ctx.algebra)
        return rep
    if a == "gleason":
        return checks.check_realize_gleason(ctx, R)
    raise InputError(f"unknown realize action {a}")


def cmd_module(args, ctx):
    a = args.action
    ctx.options["weights"] = args.weights
    if a == "gram":
        return checks.check_module_gram(ctx)
    if a == "kernel":
        return checks.check_module_kernel(ctx)
    if a == "adjoint-check":
        return checks.check_module_adjoint(ctx)
    if a == "contraction":
        return checks.check_module_contraction(ctx)
    if a == "identity":
        return checks.check_module_identity(ctx)
    if a == "fock-check":
        return checks.check_module_fock(ctx)
    if a == "blaschke":
        xi = _parse_xi(args.xi, ctx.spec) if args.xi else None
        try:
            return checks.check_module_blaschke(ctx, xi)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    raise InputError(f"unknown module action {a}")


def cmd_center_demo(args, ctx):
    try:
        return checks.check_center_demo(ctx)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_suite(args, ctx):
    return checks.run_suite(ctx)


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--algebra", default="quaternions",
                        help="builtin name (e.g. clifford:0,3) or JSON spec path")
    common.add_argument("--order", type=int, default=4)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "table"), default="json")

    p = _Parser(prog="fueterkit", description="Hyperholomorphic function toolkit")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    alg = sub.add_parser("algebra", parents=[common], help="validate or show an algebra")
    alg.add_argument("action", choices=("validate", "show"))
    alg.set_defaults(func=cmd_algebra)

    dop_opts = _Parser(add_help=False)
    dop_opts.add_argument("--alpha", help="multi-index, e.g. 2,1,0")
    dop_opts.add_argument("--center", help="center point v_0,...,v_m")
    dop_opts.add_argument("--pair", help="j,k: show D of the plain product zeta_j zeta_k")

    dop = sub.add_parser("dop", parents=[common, dop_opts],
                         help="apply the Cauchy-Fueter operator to a Fueter monomial")
    dop.set_defaults(func=cmd_dop)

    ser = sub.add_parser("series", parents=[common, dop_opts], help="Fueter series operations")
    ser.add_argument("action", choices=("eval", "dop", "shift", "product", "inverse",
                                        "recenter", "gleason", "frechet", "tail"))
    ser.add_argument("--series", help="series JSON file")
    ser.add_argument("--series2", help="second series JSON file (product)")
    ser.add_argument("--point", help="evaluation point v_0,...,v_m")
    ser.add_argument("--k", type=int, help="variable index for shift (1-based)")
    ser.add_argument("--sigma", help="radii for the tail bound, comma separated")
    ser.add_argument("--from-order", type=int, default=1)
    ser.set_defaults(func=cmd_series)

    rea = sub.add_parser("realize", parents=[common], help="realization calculus")
    rea.add_argument("action", choices=("expand", "invert", "product", "sum",
                                        "from-poly", "gleason"))
    rea.add_argument("--realization", help="realization JSON file")
    rea.add_argument("--realization2", help="second realization JSON file")
    rea.add_argument("--series", help="polynomial JSON file (from-poly)")
    rea.set_defaults(func=cmd_realize)

    mod = sub.add_parser("module", parents=[common], help="weighted module checks")
    mod.add_argument("action", choices=("gram", "kernel", "adjoint-check", "contraction",
                                        "identity", "blaschke", "fock-check"))
    mod.add_argument("--weights", choices=("drury_arveson", "fock"), default="drury_arveson")
    mod.add_argument("--xi", help="Blaschke point: m coefficient vectors separated by ';'")
    mod.set_defaults(func=cmd_module)

    cd = sub.add_parser("center-demo", parents=[common],
                        help="center dependence of the Cauchy product")
    cd.set_defaults(func=cmd_center_demo)

    st = sub.add_parser("suite", parents=[common], help="run every check")
    st.set_defaults(func=cmd_suite)
    return p


def render(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, sort_keys=True, indent=2)
    lines = []
    if rep.get("check") == "suite":
        lines.append(f"suite  algebra={rep['algebra']}  order={rep['order']}  "
                     f"status={rep['status']}")
        for r in rep["details"]["reports"]:
            lines.append(f"  {r['check']:<24} {r['status']:<5} max_error={r['max_error']:.3g}")
        return "\n".join(lines)
    for key in ("check", "algebra", "weights", "order", "status", "max_error", "witness"):
        if key in rep and rep[key] is not None:
            lines.append(f"{key:<10} {rep[key]}")
    for key, val in sorted(rep.get("details", {}).items()):
        text = val if isinstance(val, str) else json.dumps(val, sort_keys=True)
        lines.append(f"{key:<10} {text}")
    return "\n".join(lines)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.order < 0:
            raise InputError("--order must be >= 0")
        if args.tol <= 0:
            raise InputError("--tol must be positive")
        spec, name = _spec_from_args(args)
        ctx = Context(spec, name, args.order, args.tol, args.seed)
        rep = args.func(args, ctx)
    except InputError as exc:
        print(f"fueterkit: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (NotInvertible, DivergentSeries) as exc:
        print(f"fueterkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except Exception:  # noqa: BLE001
        traceback.print_exc()
        return EXIT_INTERNAL
    print(render(rep, args.format), file=out)
    return EXIT_FAIL if rep.get("status") == "fail" else EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
