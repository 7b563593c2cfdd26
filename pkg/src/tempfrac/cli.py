"""Command-line front end, installed as ``tfc``.

Exit status: 0 on success, 1 when a verification fails, 2 for malformed
input (expression syntax or a parameter outside its domain), 3 when a
computation does not converge or exceeds its budget.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import os
import sys

import numpy as np

from . import expr as expr_mod
from . import theorems
from .closed_forms import power_derivative_closed, power_integral_closed
from .errors import CostExceeded, DomainError, EvalError, NonConvergent, ParseError, TfcError
from .functions import Interval, Regularity
from .mellin import mellin_tempered_incgamma, mellin_tempered_kobayashi, mellin_tempered_numeric
from .operators import (
    FracParams,
    GpfParams,
    gpf_derivative,
    gpf_integral,
    tempered_derivative_batch,
    tempered_integral_batch,
)
from .quadrature import DEFAULT_SPEC, QuadratureSpec, effort_budget
from .series import series_derivative_batch, series_integral_batch

EVAL_HEADER = ("t", "re", "im", "err", "effort", "converged")
VERIFY_HEADER = ("theorem", "residual_or_slack", "pass", "sign_convention", "lhs_re", "lhs_im",
                 "rhs_re", "rhs_im")
EFFORT_ENV = "TFC_MAX_EFFORT"

GRAMMAR_HELP = expr_mod.__doc__.split("Grammar (whitespace is ignored)::", 1)[1].split("Exponents")[0]


# {{{ argument helpers


def complex_literal(text: str) -> complex:
    """A constant in expression syntax, e.g. ``0.5``, ``-2i`` or ``3+2i``."""
    tree = expr_mod.parse(text)
    try:
        v = complex(np.asarray(expr_mod.evaluate(tree, np.array(np.nan))).ravel()[0])
    except EvalError:
        raise ParseError(f"{text!r} is not a constant", 0, ("number",)) from None
    return v


def _regularity(text: str) -> Regularity:
    if text == "smooth":
        return Regularity.smooth()
    if text == "integrable":
        return Regularity.integrable()
    if text.startswith("C") and text[1:].isdigit():
        return Regularity.continuous(int(text[1:]))
    raise argparse.ArgumentTypeError("use smooth, integrable or C<n>")


def _grid(args) -> np.ndarray:
    if args.t is not None:
        return np.array([args.t], dtype=float)
    if args.grid_points < 1:
        raise DomainError("grid_points must be at least 1")
    if args.b is None:
        raise DomainError("give --t, or --b (with --grid-points) for a grid on (a, b]")
    if not args.b > args.a:
        raise DomainError("the grid needs b > a")
    k = np.arange(1, args.grid_points + 1)
    return args.a + (args.b - args.a) * k / args.grid_points


def _qspec(args) -> QuadratureSpec:
    kw = {k: v for k, v in (("rel_tol", args.rel_tol), ("abs_tol", args.abs_tol)) if v is not None}
    try:
        return dataclasses.replace(DEFAULT_SPEC, **kw)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def _function(args):
    if args.expr is None:
        raise DomainError(f"{args.command} needs --expr")
    # --b only ends the grid; derivative stencils may look slightly past it
    return expr_mod.compile(expr_mod.parse(args.expr), Interval(args.a, np.inf), args.regularity)


# }}}


# {{{ commands


def _eval_rows(ts, values, errors, effort, converged):
    return [
        {"t": float(t), "re": float(v.real), "im": float(v.imag), "err": float(e),
         "effort": int(effort), "converged": bool(converged)}
        for t, v, e in zip(ts, np.asarray(values, dtype=complex), errors)
    ]


def _need(value, flag):
    if value is None:
        raise DomainError(f"missing {flag}")
    return value


def cmd_eval(args):
    f = _function(args)
    ts = _grid(args)
    alpha = _need(args.alpha, "--alpha")
    beta = 0.0 if args.command.startswith("rl-") else (args.beta if args.beta is not None else 0.0)
    p = FracParams(alpha, beta)
    spec = _qspec(args)
    if args.command.endswith("-int"):
        res = tempered_integral_batch(f, p, args.a, ts, spec, strict=False)
    else:
        res = tempered_derivative_batch(f, p, args.a, ts, spec, strict=False)
    return EVAL_HEADER, _eval_rows(ts, res.values, res.errors, res.effort, res.converged), 0


def cmd_gpf(args):
    f = _function(args)
    ts = _grid(args)
    g = GpfParams(_need(args.alpha, "--alpha"), _need(args.rho, "--rho").real)
    op = gpf_integral if args.command == "gpf-int" else gpf_derivative
    rows = []
    for t in ts:
        r = op(f, g, args.a, t, _qspec(args))
        rows += _eval_rows([t], [r.value], [r.err_estimate], r.effort, r.converged)
    return EVAL_HEADER, rows, 0


def cmd_series(args):
    f = _function(args)
    t = float(_grid(args)[-1])
    p = FracParams(_need(args.alpha, "--alpha"), args.beta if args.beta is not None else 0.0)
    if args.derivative:
        res = series_derivative_batch(f, p, args.a, [t], qspec=_qspec(args))
    else:
        res = series_integral_batch(f, p, args.a, [t], qspec=_qspec(args))
    if not res.converged:
        raise NonConvergent(f"series lost accuracy (error estimate {res.errors[0]:.1e}); "
                            "cancellation grows with |beta (t - a)|")
    partial = res.partial_sums[:, 0]
    rows = []
    for m, v in enumerate(partial):
        inc = abs(v - partial[m - 1]) if m else abs(v)
        rows.append({"terms": m + 1, "re": float(v.real), "im": float(v.imag), "increment": float(inc)})
    return ("terms", "re", "im", "increment"), rows, 0


def cmd_mellin(args):
    f = _function(args)
    p = FracParams(_need(args.alpha, "--alpha"), _need(args.beta, "--beta"))
    s = _need(args.s, "--s")
    decay = _need(args.decay, "--decay")
    routes = {
        "direct": lambda: mellin_tempered_numeric(f, p, s, decay, _qspec(args)),
        "kobayashi": lambda: mellin_tempered_kobayashi(f, p, s, decay, _qspec(args)),
        "incgamma": lambda: mellin_tempered_incgamma(f, p, s, decay, qspec=_qspec(args)),
    }
    names = list(routes) if args.route == "all" else [args.route]
    rows = []
    for name in names:
        r = routes[name]()
        rows.append({"route": name, "re": float(r.value.real), "im": float(r.value.imag),
                     "err": float(r.err_estimate), "effort": int(r.effort), "converged": bool(r.converged)})
    return ("route", "re", "im", "err", "effort", "converged"), rows, 0


def _verify_rows(records):
    rows = [
        {"theorem": r.theorem_id.value, "residual_or_slack": float(r.residual_or_slack), "pass": bool(r.passed),
         "sign_convention": r.sign_convention.value, "lhs_re": float(r.lhs.real), "lhs_im": float(r.lhs.imag),
         "rhs_re": float(r.rhs.real), "rhs_im": float(r.rhs.imag)}
        for r in records
    ]
    status = 0 if all(r.passed for r in records) else 1
    return rows, status


def cmd_taylor(args):
    if args.expr is None:
        raise DomainError("taylor needs --expr")
    tree = expr_mod.parse(args.expr)
    p = FracParams(_need(args.alpha, "--alpha"), args.beta if args.beta is not None else 0.0)
    fn = lambda z: expr_mod.evaluate(tree, z)  # noqa: E731
    fn.label = expr_mod.to_text(tree)
    rec = theorems.taylor_telescope_check(fn, p, args.m, args.a, float(_grid(args)[-1]), _qspec(args))
    rows, status = _verify_rows([rec])
    return VERIFY_HEADER, rows, status


def cmd_verify(args):
    records = theorems.run_suite(args.suite, args.seed, args.n, _qspec(args))
    rows, status = _verify_rows(records)
    if args.suite in ("lemma", "taylor", "all"):
        signed = [r for r in records if r.theorem_id.value in ("LemmaComposition", "TaylorTelescope")]
        _, ok = theorems.sign_consistency(signed)
        if not ok:
            status = 1
    return VERIFY_HEADER, rows, status


TABLE_KINDS = ("unit", "power-int", "power-der", "remainder")


def cmd_table(args):
    """Closed-form values on the grid (err 0, effort 0)."""
    ts = _grid(args)
    p = FracParams(_need(args.alpha, "--alpha"), args.beta if args.beta is not None else 0.0)
    lam = args.lam if args.lam is not None else 0.0
    vals = []
    for t in ts:
        if args.kind == "unit":
            vals.append(theorems.unit_integral_closed(p, t - args.a))
        elif args.kind == "power-int":
            vals.append(power_integral_closed(lam, p, args.a, t))
        elif args.kind == "power-der":
            vals.append(power_derivative_closed(lam, p, args.a, t))
        else:
            vals.append(theorems.remainder_prefactor(p, args.m, args.a, t))
    return EVAL_HEADER, _eval_rows(ts, vals, np.zeros(len(ts)), 0, True), 0


COMMANDS = {
    "eval-int": cmd_eval, "eval-der": cmd_eval, "rl-int": cmd_eval, "rl-der": cmd_eval,
    "gpf-int": cmd_gpf, "gpf-der": cmd_gpf, "series": cmd_series, "mellin": cmd_mellin,
    "taylor": cmd_taylor, "verify": cmd_verify, "table": cmd_table,
}


# }}}


# {{{ output and entry point


def render(header, rows, fmt: str, summary: str | None = None) -> str:
    if fmt == "json":
        return json.dumps(rows) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    if summary:
        buf.write(summary + "\n")
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tfc",
        description="Tempered fractional integrals and derivatives from the command line.",
        epilog="Expression grammar (--expr):\n" + GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("command", choices=list(COMMANDS))
    ap.add_argument("--expr", help="function of t (grammar below)")
    ap.add_argument("--alpha", type=complex_literal, help="order, e.g. 0.5 or 0.5+0.1i")
    ap.add_argument("--beta", type=complex_literal, help="tempering rate (default 0)")
    ap.add_argument("--rho", type=complex_literal, help="GPF proportion in (0, 1]")
    ap.add_argument("--a", type=float, default=0.0, help="lower limit (default 0)")
    ap.add_argument("--b", type=float, help="grid end; the grid is (a, b] with --grid-points points")
    ap.add_argument("--t", type=float, help="single evaluation point (overrides the grid)")
    ap.add_argument("--grid-points", type=int, default=1)
    ap.add_argument("--regularity", type=_regularity, default=Regularity.smooth(),
                    help="claimed smoothness of --expr: smooth, integrable or C<n> (default smooth)")
    ap.add_argument("--format", dest="out_format", choices=("csv", "json"), default="csv")
    ap.add_argument("--rel-tol", type=float)
    ap.add_argument("--abs-tol", type=float)
    ap.add_argument("--seed", type=int, default=0, help="64-bit seed for PCG64 (verify suites)")
    ap.add_argument("--suite", choices=list(theorems.SUITES) + ["all"], default="all")
    ap.add_argument("--n", type=int, help="instances per suite")
    ap.add_argument("--m", type=int, default=1, help="Taylor order (taylor, table --kind remainder)")
    ap.add_argument("--derivative", action="store_true", help="series: expand the derivative")
    ap.add_argument("--s", type=complex_literal, help="Mellin variable")
    ap.add_argument("--decay", type=float, help="Mellin: exponential decay rate of f")
    ap.add_argument("--route", choices=("direct", "kobayashi", "incgamma", "all"), default="all")
    ap.add_argument("--kind", choices=TABLE_KINDS, default="unit", help="table: which closed form")
    ap.add_argument("--lam", type=complex_literal, help="table: exponent of (t-a)^lam")
    return ap


def _max_effort() -> int | None:
    raw = os.environ.get(EFFORT_ENV)
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{EFFORT_ENV} must be an integer, got {raw!r}") from None


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.seed < 0 or args.seed >= 2**64:
            raise DomainError("--seed must fit in 64 unsigned bits")
        with effort_budget(_max_effort()):
            header, rows, status = COMMANDS[args.command](args)
    except (ParseError, DomainError) as exc:
        err.write(f"tfc: error: {exc}\n")
        return 2
    except (NonConvergent, CostExceeded, EvalError, TfcError) as exc:
        err.write(f"tfc: {type(exc).__name__}: {exc}\n")
        return 3
    summary = None
    if args.command in ("verify", "taylor"):
        summary = f"PASS {sum(r['pass'] for r in rows)}/{len(rows)}"
        if args.out_format == "json":
            err.write(summary + "\n")
    out.write(render(header, rows, args.out_format, None if args.out_format == "json" else summary))
    return status


def main(argv: list[str] | None = None) -> int:
    sys.exit(run(argv))


# }}}
