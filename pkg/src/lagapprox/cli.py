"""Command-line front end: every subcommand prints one table as CSV (or JSON).

Exit status is 0 on success, 1 on a numerical failure or a failed rate
check, and 2 for usage errors including unknown function or pair names.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from .basis import BasisParams, Form
from .errors import LaguerreError, LookupFailure, NoPrediction
from .interpolation import PointKind, interpolation_rule
from .projection import cached_gauss_rule, default_grid, default_quad_points, project
from .quadrature import make_rule
from .registry import FUNCTIONS, LAPLACE_PAIRS, get_function, get_laplace_pair
from .sweeps import (coefficient_curve, derivative_curve, interpolation_curve, projection_curve,
                     quadrature_curve, sqrt_spaced, weeks_curve)
from .verify import MODES, contour_coefficients, fit_entire, fit_rate, min_contour_degree, predicted_rate
from .weeks import WeeksParams, weeks_coefficients, weeks_invert

SCHEMA_VERSION = "1"


class Table:
    """Column names, rows and optional scalar metadata."""

    def __init__(self, columns: Sequence[str], rows=None, meta=None):
        self.columns = list(columns)
        self.rows: List[list] = [list(r) for r in (rows or [])]
        self.meta = dict(meta or {})

    def add(self, *row):
        self.rows.append(list(row))


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if np.isfinite(v) else str(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def to_json(command: str, table: Table) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "columns": table.columns,
        "rows": [[_jsonable(v) for v in row] for row in table.rows],
    }
    if table.meta:
        doc["meta"] = {k: _jsonable(v) for k, v in table.meta.items()}
    return json.dumps(doc, indent=1) + "\n"


def _floats(text: str) -> List[float]:
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _degrees(args, default_min: int = 1) -> np.ndarray:
    lo = default_min if args.nmin is None else args.nmin
    if args.count:
        return sqrt_spaced(lo, args.nmax, args.count)
    return np.arange(lo, args.nmax + 1, args.step)


def _predicted(fspec, alpha, mode, **kw):
    try:
        return predicted_rate(fspec, alpha, mode, **kw)
    except NoPrediction:
        return None


def _predicted_column(pred, ns, errors):
    """Predicted curve ``C n^p e^{-s sqrt n}`` anchored at the first point."""
    if pred is None or len(ns) == 0:
        return [None] * len(ns)
    s, p = pred
    ns = np.asarray(ns, dtype=float)
    shape = ns ** p * np.exp(-s * np.sqrt(ns))
    return list(np.abs(errors[0]) / shape[0] * shape)


# ----------------------------------------------------------------------------
# subcommands

def cmd_nodes(args) -> Table:
    rule = make_rule(args.kind, args.alpha, args.n)
    t = Table(["j", "node", "weight", "log_weight"])
    for j, (x, lw) in enumerate(zip(rule.nodes, rule.log_weights)):
        t.add(j, x, float(np.exp(lw)), lw)
    return t


def cmd_coeffs(args) -> Table:
    fspec = get_function(args.fn)
    exp = project(fspec.f, args.nmax, BasisParams(args.alpha, args.form), nu=args.nu)
    t = Table(["n", "coeff", "abs_coeff"], meta={"fn": args.fn, "alpha": args.alpha, "nu": args.nu,
                                                  "form": Form.parse(args.form).value})
    for n, c in enumerate(exp.coeffs):
        t.add(n, c, abs(c))
    return t


def cmd_project(args) -> Table:
    fspec = get_function(args.fn)
    ns = _degrees(args)
    t = Table(["n", "nu", "error", "predicted"], meta={"fn": args.fn, "alpha": args.alpha, "norm": args.norm,
                                                         "form": Form.parse(args.form).value})
    form = Form.parse(args.form)
    for nu in args.nu:
        ns_, errs = projection_curve(fspec, args.alpha, ns, args.norm, form, nu)
        if args.norm == "weighted":
            mode = "projW"
        else:
            mode = "scaled" if nu != 1.0 else "projMax"
        pred = _predicted_column(_predicted(fspec, args.alpha, mode, nu=nu), ns_, errs)
        for n, e, p in zip(ns_, errs, pred):
            t.add(int(n), nu, e, p)
    return t


def _interp_mode(points, form):
    if Form.parse(form) is Form.FUNCTION:
        return "interp_glf"
    return "interp_radau" if PointKind.parse(points) is PointKind.RADAU else "interp"


def cmd_interp(args) -> Table:
    fspec = get_function(args.fn)
    ns, errs = interpolation_curve(fspec, args.alpha, _degrees(args), args.points, args.form)
    pred = _predicted_column(_predicted(fspec, args.alpha, _interp_mode(args.points, args.form)), ns, errs)
    form = Form.parse(args.form)
    t = Table(["n", "error", "predicted", "last_node", "extrapolated"],
              meta={"fn": args.fn, "alpha": args.alpha, "points": args.points, "form": form.value})
    for n, e, p in zip(ns, errs, pred):
        last = float(interpolation_rule(args.points, args.alpha, int(n)).nodes[-1])
        if form is Form.POLYNOMIAL:
            reach = float(cached_gauss_rule(float(args.alpha), default_quad_points(int(n))).nodes[-1])
        else:
            reach = float(default_grid(int(n), args.alpha)[-1])
        # the error is sampled beyond the last interpolation point
        t.add(int(n), e, p, last, int(reach > last))
    return t


def cmd_quad(args) -> Table:
    fspec = get_function(args.fn)
    ns, errs = quadrature_curve(fspec, args.alpha, _degrees(args), args.kind)
    pred = _predicted_column(_predicted(fspec, args.alpha, "quad"), ns, errs)
    t = Table(["n", "error", "predicted"], meta={"fn": args.fn, "alpha": args.alpha, "kind": args.kind,
                                                  "reference_order": 4 * int(ns[-1])})
    for n, e, p in zip(ns, errs, pred):
        t.add(int(n), e, p)
    return t


def _derivative_of(fspec, m):
    if fspec.derivative is None:
        raise LaguerreError(f"no analytic derivative registered for {fspec.name!r}")
    return fspec.derivative(m)


def cmd_diff(args) -> Table:
    fspec = get_function(args.fn)
    ns = _degrees(args, default_min=args.m)
    ns, errs = derivative_curve(fspec, _derivative_of(fspec, args.m), args.alpha, args.m, ns)
    pred = _predicted_column(_predicted(fspec, args.alpha, "diff", m=args.m), ns, errs)
    t = Table(["n", "error", "predicted"], meta={"fn": args.fn, "alpha": args.alpha, "m": args.m})
    for n, e, p in zip(ns, errs, pred):
        t.add(int(n), e, p)
    return t


def cmd_weeks(args) -> Table:
    pair = get_laplace_pair(args.pair)
    sigma = pair.default_sigma if args.sigma is None else args.sigma
    nu = pair.default_nu if args.nu is None else args.nu
    params = WeeksParams(sigma, nu, args.n).validate_for(pair)
    c = weeks_coefficients(pair, params, method=args.method)
    t = Table(["t", "f_n", "f_exact", "error"], meta={"pair": args.pair, "sigma": sigma, "nu": nu, "n": args.n})
    for tv in args.t:
        fn = weeks_invert(pair, params, tv, c)
        if pair.f_exact is None:
            t.add(tv, fn, None, None)
        else:
            fe = float(pair.f_exact(tv))
            t.add(tv, fn, fe, fe - fn)
    return t


def _rate_curve(args, fspec):
    ns = _degrees(args, default_min=max(args.m, 1) if args.mode == "diff" else 1)
    mode = args.mode
    if mode == "coeff":
        n_all, e_all = coefficient_curve(fspec, args.alpha, int(ns[-1]))
        return n_all[ns], e_all[ns]
    if mode == "projW":
        return projection_curve(fspec, args.alpha, ns, "weighted", "poly", args.nu)
    if mode in ("projMax", "scaled"):
        return projection_curve(fspec, args.alpha, ns, "max", "glf", args.nu)
    if mode == "interp":
        return interpolation_curve(fspec, args.alpha, ns, "laguerre", "poly")
    if mode == "interp_radau":
        return interpolation_curve(fspec, args.alpha, ns, "radau", "poly")
    if mode == "interp_glf":
        return interpolation_curve(fspec, args.alpha, ns, "laguerre", "glf")
    if mode == "quad":
        return quadrature_curve(fspec, args.alpha, ns, args.kind)
    if mode == "diff":
        return derivative_curve(fspec, _derivative_of(fspec, args.m), args.alpha, args.m, ns)
    pair = get_laplace_pair(args.pair)
    return weeks_curve(pair, args.sigma if args.sigma is not None else pair.default_sigma, args.nu, ns, args.t)


def cmd_rate(args) -> Table:
    fspec = get_function(args.fn)
    ns, errs = _rate_curve(args, fspec)
    pred = predicted_rate(fspec, args.alpha, args.mode, nu=args.nu, m=args.m)
    fit = fit_rate(ns, errs, floor=args.floor, envelope=not args.raw,
                   log_power=None if args.free_power else pred[1])
    rel = abs(fit.sqrt_slope - pred[0]) / pred[0]
    ok = rel <= args.tol
    t = Table(["n", "error", "predicted"], meta={
        "fn": args.fn, "mode": args.mode, "alpha": args.alpha,
        "sqrt_slope": fit.sqrt_slope, "log_power": fit.log_power, "intercept": fit.intercept,
        "residual": fit.residual, "n_range": list(fit.n_range), "fit_points": fit.npoints,
        "predicted_sqrt_slope": pred[0], "predicted_log_power": pred[1],
        "relative_deviation": rel, "tolerance": args.tol, "pass": ok})
    for n, e, p in zip(ns, errs, _predicted_column(pred, ns, errs)):
        t.add(int(n), e, p)
    t.ok = ok
    return t


def cmd_entire(args) -> Table:
    fspec = get_function(args.fn)
    ns, errs = coefficient_curve(fspec, args.alpha, args.nmax)
    fit = fit_entire(ns[1:], errs[1:], floor=args.floor)
    t = Table(["n", "abs_coeff", "model"], meta={"fn": args.fn, "alpha": args.alpha, "q": fit.q,
                                                   "kappa": fit.sqrt_slope, "log_power": fit.log_power,
                                                   "residual": fit.residual})
    for n, e, m in zip(ns[1:], errs[1:], fit.model(ns[1:])):
        t.add(int(n), e, m)
    return t


def cmd_oracle(args) -> Table:
    fspec = get_function(args.fn)
    kmin = min_contour_degree(fspec.beta)
    ks = np.arange(kmin, args.k + 1)
    contour = contour_coefficients(fspec, args.alpha, ks, args.rho)
    # a generous rule keeps the projection side well below the contour error
    proj = project(fspec.f, args.k, BasisParams(args.alpha), quad_points=4 * max(args.k, 100) + 64).coeffs[ks]
    t = Table(["k", "contour", "projection", "abs_diff"], meta={"fn": args.fn, "alpha": args.alpha, "rho": args.rho})
    for k, c, p in zip(ks, contour, proj):
        t.add(int(k), c, p, abs(c - p))
    return t


def cmd_list(args) -> Table:
    t = Table(["name", "kind", "rho", "beta", "growth_class", "sigma0", "description"])
    for name in sorted(FUNCTIONS):
        s = FUNCTIONS[name]
        t.add(name, "function", s.rho_sup if s.singularities else None, s.beta, s.growth_class.value, None,
              s.description)
    for name in sorted(LAPLACE_PAIRS):
        p = LAPLACE_PAIRS[name]
        t.add(name, "laplace_pair", p.rho, None, None, p.sigma0, p.description)
    return t


# ----------------------------------------------------------------------------
# parser

def _add_output(p):
    p.add_argument("--json", action="store_true", help="emit a JSON object instead of CSV")
    p.add_argument("--out", help="write to this file instead of stdout")


def _add_range(p, nmax_required=True):
    p.add_argument("--nmax", type=int, required=nmax_required)
    p.add_argument("--nmin", type=int)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--count", type=int, default=0, help="use about this many degrees spaced evenly in sqrt(n)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lagapprox", description="Laguerre approximation error tables.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nodes", help="quadrature nodes and weights")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--n", type=int, required=True, help="number of nodes")
    p.add_argument("--kind", choices=["gauss", "radau"], default="gauss")
    _add_output(p)

    p = sub.add_parser("coeffs", help="expansion coefficients of a registered function")
    p.add_argument("--fn", required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--form", choices=["poly", "glf"], default="poly")
    _add_output(p)

    p = sub.add_parser("project", help="projection error versus degree")
    p.add_argument("--fn", required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    _add_range(p)
    p.add_argument("--norm", choices=["max", "weighted"], default="max")
    p.add_argument("--form", choices=["poly", "glf"], default="glf")
    p.add_argument("--nu", type=_floats, default=[1.0], help="scaling factor(s), comma separated")
    _add_output(p)

    p = sub.add_parser("interp", help="interpolation error versus degree")
    p.add_argument("--fn", required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--points", choices=["laguerre", "radau"], default="laguerre")
    p.add_argument("--form", choices=["poly", "glf"], default="poly")
    _add_range(p)
    _add_output(p)

    p = sub.add_parser("quad", help="quadrature error versus degree")
    p.add_argument("--fn", required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--kind", choices=["gauss", "radau"], default="gauss")
    _add_range(p)
    _add_output(p)

    p = sub.add_parser("diff", help="derivative error versus degree")
    p.add_argument("--fn", required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--m", type=int, default=1)
    _add_range(p)
    _add_output(p)

    p = sub.add_parser("weeks", help="Laplace inversion at given times")
    p.add_argument("--pair", required=True)
    p.add_argument("--sigma", type=float)
    p.add_argument("--nu", type=float)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=_floats, required=True, help="comma-separated times")
    p.add_argument("--method", choices=["direct", "dct"], default="direct")
    _add_output(p)

    p = sub.add_parser("rate", help="fit the decay rate and compare with the prediction")
    p.add_argument("--fn", required=True)
    p.add_argument("--mode", choices=list(MODES), required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    _add_range(p)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--kind", choices=["gauss", "radau"], default="gauss")
    p.add_argument("--pair", default="recip1p", help="Laplace pair for --mode weeks")
    p.add_argument("--sigma", type=float)
    p.add_argument("--t", type=float, default=1.0, help="time for --mode weeks")
    p.add_argument("--floor", type=float, default=1e-13)
    p.add_argument("--tol", type=float, default=0.1, help="relative tolerance on the sqrt(n) slope")
    p.add_argument("--free-power", action="store_true", help="fit the algebraic power instead of fixing it")
    p.add_argument("--raw", action="store_true", help="fit raw errors rather than their upper envelope")
    _add_output(p)

    p = sub.add_parser("entire", help="coefficient decay model selection for entire functions")
    p.add_argument("--fn", required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--nmax", type=int, default=300)
    p.add_argument("--floor", type=float, default=1e-13)
    _add_output(p)

    p = sub.add_parser("oracle", help="contour-integral coefficients against projection")
    p.add_argument("--fn", required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rho", type=float, required=True)
    _add_output(p)

    p = sub.add_parser("list", help="registered functions and Laplace pairs")
    _add_output(p)
    return parser


COMMANDS = {
    "nodes": cmd_nodes, "coeffs": cmd_coeffs, "project": cmd_project, "interp": cmd_interp,
    "quad": cmd_quad, "diff": cmd_diff, "weeks": cmd_weeks, "rate": cmd_rate, "entire": cmd_entire,
    "oracle": cmd_oracle, "list": cmd_list,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        table = COMMANDS[args.command](args)
    except LookupFailure as exc:
        parser.print_usage(sys.stderr)
        print(f"lagapprox {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (LaguerreError, ValueError, ArithmeticError) as exc:
        print(f"lagapprox {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = to_json(args.command, table) if args.json else to_csv(table)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "rate" and not getattr(table, "ok", True):
        m = table.meta
        print(f"lagapprox rate: fitted slope {m['sqrt_slope']:.4f} deviates from predicted "
              f"{m['predicted_sqrt_slope']:.4f} by {100 * m['relative_deviation']:.1f}% "
              f"(tolerance {100 * args.tol:.1f}%)", file=sys.stderr)
        return 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))
