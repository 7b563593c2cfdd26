"""Acceptance criteria, one printed PASS/FAIL line each.

Run under pytest (``pytest tests/test_acceptance.py -v``) or directly
(``python3 tests/test_acceptance.py``) for just the summary lines.
"""

import subprocess
import sys
from itertools import product

import numpy as np
import pytest

from tempfrac import closed_forms as cf
from tempfrac import mellin as ml
from tempfrac import operators as op
from tempfrac import series as sr
from tempfrac import specfun as sf
from tempfrac import theorems as th
from tempfrac.closed_forms import AppellKernelParams, MlKernelParams
from tempfrac.functions import as_handle, constant, power
from tempfrac.operators import FracParams, GpfParams


def _rng(k):
    return np.random.Generator(np.random.PCG64(1000 + k))


def _rel(x, y):
    return abs(complex(x) - complex(y)) / max(abs(complex(y)), 1e-300)


POLYS = [
    [1.0],
    [1.0, 0.0],
    [1.0, -2.0, 0.5],
    [0.3, 0.0, -1.0, 2.0],
    [-1.0, 0.5, 0.25, 0.0, 1.0],
]


def _poly(c):
    return as_handle(lambda u: np.polyval(c, u))


def crit_unit_identity():
    worst = 0.0
    ts = np.linspace(0.2, 2.0, 5)
    for alpha, beta in product(np.linspace(0.3, 2.5, 5), np.linspace(0.1, 2.0, 5)):
        p = FracParams(alpha, beta)
        got = op.tempered_integral_batch(constant(1.0), p, 0.0, ts).values
        for t, g in zip(ts, got):
            worst = max(worst, _rel(g, th.unit_integral_closed(p, t)))
    return worst < 1e-8, f"worst rel {worst:.1e} over 125 points (tol 1e-8)"


def crit_power_closed_form():
    rng = _rng(2)
    worst_i = worst_d = 0.0
    for _ in range(20):
        lam, alpha, beta, t = rng.uniform(0, 2), rng.uniform(0.1, 0.95), rng.uniform(0, 2), rng.uniform(0.2, 2)
        p = FracParams(alpha, beta)
        worst_i = max(worst_i, _rel(op.tempered_integral(power(lam), p, 0, t).value,
                                    cf.power_integral_closed(lam, p, 0, t)))
        worst_d = max(worst_d, _rel(op.tempered_derivative(power(lam), p, 0, t).value,
                                    cf.power_derivative_closed(lam, p, 0, t)))
    ok = max(worst_i, worst_d) < 1e-6
    return ok, f"integral {worst_i:.1e}, derivative {worst_d:.1e} over 20 draws (tol 1e-6)"


def crit_series_routes():
    rng = _rng(3)
    worst_i = worst_d = 0.0
    fs = [as_handle(np.cos), as_handle(np.exp), _poly([1.0, -2.0, 0.5])]
    for k in range(20):
        f = fs[k % 3]
        t = rng.uniform(0.2, 2.0)
        beta = rng.uniform(0, 2.0 / t)
        alpha = rng.uniform(0.1, 1.9)
        if abs(alpha - 1) < 0.05:
            alpha += 0.1
        p = FracParams(alpha, beta)
        worst_i = max(worst_i, _rel(sr.series_integral(f, p, 0, t).value, op.tempered_integral(f, p, 0, t).value))
        worst_d = max(worst_d, _rel(sr.series_derivative(f, p, 0, t).value,
                                    op.tempered_derivative(f, p, 0, t).value))
    ok = worst_i < 1e-6 and worst_d < 1e-5
    return ok, f"integral {worst_i:.1e} (tol 1e-6), derivative {worst_d:.1e} (tol 1e-5), |beta t| <= 2"


def crit_semigroup():
    rng = _rng(4)
    worst = 0.0
    for k in range(20):
        a1, a2, beta, t = rng.uniform(0.3, 1.5), rng.uniform(0.3, 1.5), rng.uniform(0, 2), rng.uniform(0.2, 2)
        f = _poly(POLYS[k % len(POLYS)])
        inner = op.tempered_integral_handle(f, FracParams(a1, beta), 0.0)
        lhs = op.tempered_integral(inner, FracParams(a2, beta), 0.0, t).value
        rhs = op.tempered_integral(f, FracParams(a1 + a2, beta), 0.0, t).value
        worst = max(worst, _rel(lhs, rhs))
    return worst < 1e-6, f"worst rel {worst:.1e} over 20 compositions (tol 1e-6)"


def crit_conjugation():
    worst = 0.0
    for c, (alpha, beta, t) in product(POLYS, [(0.5, 1.0, 1.0), (1.7, 0.3, 2.0), (0.3 + 0.2j, 0.8, 0.6)]):
        f, p = _poly(c), FracParams(alpha, beta)
        worst = max(worst, _rel(op.tempered_integral(f, p, 0, t).value,
                                op.tempered_integral_via_rl(f, p, 0, t).value))
    return worst < 1e-8, f"worst rel {worst:.1e} on 15 polynomial cases (tol 1e-8)"


def crit_gpf():
    worst = 0.0
    for f, alpha, rho, t in product([as_handle(np.cos), _poly([1.0, 0.0, 2.0])], [0.4, 1.3],
                                    [0.3, 0.7, 1.0], [0.5, 1.5]):
        g = GpfParams(alpha, rho)
        worst = max(worst, _rel(op.gpf_integral_direct(f, g, 0, t).value, op.gpf_integral(f, g, 0, t).value))
    f = as_handle(np.cos)
    exact = op.gpf_integral(f, GpfParams(0.7, 1.0), 0, 1.2).value == op.rl_integral(f, 0.7, 0, 1.2).value
    ok = worst < 1e-9 and exact
    return ok, f"worst rel {worst:.1e} on 24 cases (tol 1e-9); rho = 1 equals RL exactly: {exact}"


def crit_kernel_examples():
    worst_b = worst_a = 0.0
    ts = np.linspace(0.08, 0.8, 10)
    p = FracParams(0.6, 0.7)
    for t in ts:
        closed = cf.beta_kernel_closed(1.2, 0.4, p, t)
        num = op.tempered_integral(cf.beta_kernel_handle(1.2, 0.4), p, 0, t).value
        worst_b = max(worst_b, _rel(closed, num))
    k = AppellKernelParams(1.2, 0.4, 0.3, 0.75, -0.5)
    for t in ts:
        closed = cf.appell_kernel_closed(k, p, t)
        num = op.tempered_integral(cf.appell_kernel_handle(k), p, 0, t).value
        worst_a = max(worst_a, _rel(closed, num))
    ok = max(worst_b, worst_a) < 1e-6
    return ok, f"beta kernel {worst_b:.1e}, Appell kernel {worst_a:.1e} at 10 points each (tol 1e-6)"


def crit_ml_identity():
    rng = _rng(8)
    worst = 0.0
    for _ in range(10):
        mu, nu, g, alpha, beta = rng.uniform(0.5, 2, size=5)
        t = rng.uniform(0.2, 1.5)
        w = rng.uniform(-2, 2) / t**mu
        worst = max(worst, cf.ml_identity_residual(MlKernelParams(mu, nu, g, w), FracParams(alpha, beta), 0, t))
    return worst < 1e-8, f"worst residual {worst:.1e} over 10 sweeps (tol 1e-8)"


def crit_mellin():
    worst = 0.0
    pts = ml.corpus()
    for c in pts:
        k = ml.mellin_tempered_kobayashi(c.f, c.params, c.s, c.decay).value
        i = ml.mellin_tempered_incgamma(c.f, c.params, c.s, c.decay).value
        n = ml.mellin_tempered_numeric(c.f, c.params, c.s, c.decay).value
        worst = max(worst, _rel(k, n), _rel(i, n), _rel(k, i))
    return worst < 1e-5, f"worst pairwise rel {worst:.1e} on {len(pts)} points (tol 1e-5)"


def crit_taylor():
    taylor = th.run_suite("taylor", seed=10)
    lemma = th.run_suite("lemma", seed=10)
    random_part = [r for r in taylor if 0.3 < r.inputs["alpha"].real < 0.9][:10]
    fits = all(r.residual_or_slack < (1e-4 if r.inputs["m"] <= 1 else 1e-3) for r in taylor)
    conv, consistent = th.sign_consistency(taylor + lemma)
    ok = fits and len(random_part) >= 10 and consistent and all(r.passed for r in lemma)
    worst = max(r.residual_or_slack for r in taylor)
    name = conv.value if conv else "none"
    return ok, (f"worst residual {worst:.1e} on {len(taylor)} instances; "
                f"sign convention {name} across {len(taylor) + len(lemma)} records")


def crit_inequalities():
    recs = th.run_suite("ineq1", seed=11) + th.run_suite("ineq2", seed=11) + th.run_suite("ineq3", seed=11)
    worst = min(r.residual_or_slack / r.details["scale"] for r in recs)
    c = lambda u: np.full_like(u, 1.7)  # noqa: E731
    eq = [
        th.chebyshev_slack1(c, np.exp, FracParams(0.9, 0.4), 1.3).residual_or_slack,
        th.chebyshev_slack2(c, np.exp, 0.6, 1.4, 0.4, 1.3).residual_or_slack,
        th.product_slack_n([np.exp], FracParams(0.9, 0.4), 1.3).residual_or_slack,
    ]
    red = 0.0
    for alpha, beta, t in [(0.5, 1.0, 1.0), (1.6, 0.3, 1.8), (0.9, 1.9, 0.4)]:
        s1 = th.chebyshev_slack1(lambda u: u, lambda u: u**3, FracParams(alpha, beta), t)
        s2 = th.chebyshev_slack2(lambda u: u, lambda u: u**3, alpha, alpha, beta, t)
        red = max(red, abs(s2.residual_or_slack - 2 * s1.details["unit"] * s1.residual_or_slack))
    ok = len(recs) == 200 and all(r.passed for r in recs) and max(map(abs, eq)) <= 1e-9 and red <= 1e-9
    return ok, (f"{sum(r.passed for r in recs)}/{len(recs)} pass, min slack/scale {worst:.1e}; "
                f"equality cases {max(map(abs, eq)):.1e}; reduction gap {red:.1e}")


def crit_specfun():
    rng = _rng(12)
    refl = comp = kob = mlr = 0.0
    for _ in range(100):
        z = complex(rng.uniform(-4.5, 4.5), rng.uniform(-2, 2))
        refl = max(refl, abs(sf.gamma(z) * sf.gamma(1 - z) * np.sin(np.pi * z) / np.pi - 1))
    for _ in range(50):
        a = complex(rng.uniform(0.05, 5), rng.uniform(-1, 1))
        x = complex(rng.uniform(0.05, 10), rng.uniform(-1, 1))
        s = sf.lower_incomplete_gamma(a, x) + sf.upper_incomplete_gamma(a, x)
        comp = max(comp, _rel(s, sf.gamma(a)))
    for _ in range(20):
        u, v = rng.uniform(0.2, 5), rng.uniform(0.01, 5)
        kob = max(kob, _rel(sf.kobayashi_gamma(0, u, v), sf.gamma(u)))
    for _ in range(40):
        z = complex(*rng.uniform(-3.5, 3.5, size=2))
        mlr = max(mlr, _rel(sf.mittag_leffler3(1, 1, 1, z), np.exp(z)))
    ok = refl < 1e-10 and comp < 1e-10 and kob < 1e-9 and mlr < 1e-10
    return ok, f"reflection {refl:.1e}, complementarity {comp:.1e}, Kobayashi {kob:.1e}, ML {mlr:.1e}"


def crit_cli():
    argv = ["tfc", "verify", "--suite", "all", "--seed", "2024", "--n", "3"]
    a = subprocess.run(argv, capture_output=True)
    b = subprocess.run(argv, capture_output=True)
    bad = subprocess.run(["tfc", "eval-int", "--expr", "exp(t) +* 2", "--alpha", "0.5", "--t", "1"],
                         capture_output=True, text=True)
    same = a.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    positioned = bad.returncode == 2 and "offset 8" in bad.stderr
    return same and positioned, f"byte-identical: {same}; malformed input exit {bad.returncode}, " \
                                f"message {bad.stderr.strip()!r}"


CRITERIA = [
    ("1 unit identity", crit_unit_identity),
    ("2 power closed form", crit_power_closed_form),
    ("3 series routes", crit_series_routes),
    ("4 semigroup", crit_semigroup),
    ("5 conjugation", crit_conjugation),
    ("6 GPF equivalence", crit_gpf),
    ("7 kernel closed forms", crit_kernel_examples),
    ("8 Mittag-Leffler identity", crit_ml_identity),
    ("9 Mellin three routes", crit_mellin),
    ("10 Taylor telescope", crit_taylor),
    ("11 inequalities", crit_inequalities),
    ("12 special functions", crit_specfun),
    ("13 CLI determinism", crit_cli),
]


def _line(name, fn):
    ok, detail = fn()
    return ok, f"criterion {name}: {'PASS' if ok else 'FAIL'} ({detail})"


@pytest.mark.parametrize("name, fn", CRITERIA, ids=[n for n, _ in CRITERIA])
def test_criterion(name, fn, capsys):
    ok, line = _line(name, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for name, fn in CRITERIA:
        ok, line = _line(name, fn)
        failed += not ok
        print(line, flush=True)
    sys.exit(1 if failed else 0)
