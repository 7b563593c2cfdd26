import dataclasses
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tempfrac import operators as op
from tempfrac import theorems as th
from tempfrac.errors import CostExceeded, DomainError, MonotonicityError, PositivityError, SynchronyError
from tempfrac.functions import as_handle, constant, power
from tempfrac.operators import FracParams
from tempfrac.records import SignConvention
from tempfrac.specfun import gamma, lower_incomplete_gamma

PROP = SignConvention.PROP_SIGN


@pytest.mark.parametrize("alpha, beta, want", [(1, 1, 0.6321206), (0.5, 0, 1.1283792), (0.5, 1, 0.8427008)])
def test_unit_integral(alpha, beta, want):
    assert abs(th.unit_integral_closed(FracParams(alpha, beta), 1.0) - want) < 1e-7


def test_eab_power_integral():
    assert abs(th.eab_power_integral(1, FracParams(0.5, 1), 0, 1) - math.exp(-1) / gamma(1.5)) < 1e-14
    assert abs(th.eab_power_integral(1, FracParams(0.5, 0), 0, 1) - 1 / gamma(1.5)) < 1e-14


@settings(max_examples=8)
@given(st.floats(0.2, 3.0), st.floats(0.2, 2.0), st.floats(0.0, 2.0), st.floats(-1.0, 1.0),
       st.floats(0.1, 2.0))
def test_eab_power_matches_quadrature(g, alpha, beta, a, x):
    p = FracParams(alpha, beta)
    f = dataclasses.replace(
        power(g - 1, a), evaluator=lambda u: np.exp(-beta * u) * (u - a) ** (g - 1),
        offset=lambda base, r: np.exp(-beta * (base + r)) * r ** (g - 1))
    want = op.tempered_integral(f, p, a, a + x).value
    assert abs(th.eab_power_integral(g, p, a, a + x) - want) < 1e-8 * max(1.0, abs(want))


def test_remainder_prefactor():
    p = FracParams(0.5, 1.0)
    assert abs(th.remainder_prefactor(p, 1, 0, 1) - (1 - math.exp(-1))) < 1e-14
    assert abs(th.remainder_prefactor(p, 0, 0, 0.7) - th.unit_integral_closed(p, 0.7)) < 1e-15
    q = FracParams(0.6, 0.8)
    want = lower_incomplete_gamma(1.8, 0.4) / (0.8**1.8 * gamma(1.8))
    assert abs(th.remainder_prefactor(q, 2, 0, 0.5) - want) < 1e-13


def test_inversion_handle_route():
    beta, alpha = 0.7, 0.4
    f = as_handle(lambda u: u * np.exp(-beta * u))
    rec = th.inversion_check(f, FracParams(alpha, beta), 0.0, 0.9)
    assert rec.passed and rec.residual_or_slack < 1e-5


def test_inversion_rl_case():
    pes = th.PowerExpSeries.from_analytic(np.cos, 0.0, 0.0, 1.0)
    rec = th.inversion_check(pes, FracParams(0.5, 0.0), 0.0, 1.0)
    assert rec.passed and rec.residual_or_slack < 1e-5


def test_inversion_unit():
    # the boundary limit vanishes, so no sign can be told apart
    pes = th.PowerExpSeries.from_analytic(lambda z: np.ones_like(z), 1.0, 0.0, 1.0)
    rec = th.inversion_check(pes, FracParams(0.5, 1.0), 0.0, 1.0)
    assert rec.passed and rec.residual_or_slack < 1e-4
    assert abs(rec.details["limit"]) < 1e-8
    assert rec.sign_convention is SignConvention.UNDETERMINED


def test_lemma_examples():
    f = lambda z: np.exp(-0.5 * z) * z**2  # noqa: E731
    rec = th.lemma_composition_check(f, FracParams(0.6, 0.5), 1, 0.0, 0.8)
    assert rec.passed and rec.residual_or_slack < 1e-4
    rl = th.lemma_composition_check(lambda z: z**2, FracParams(0.5, 0.0), 1, 0.0, 1.0)
    assert rl.passed and rl.residual_or_slack < 1e-5


def test_lemma_r0_is_inversion():
    f = lambda z: np.exp(z)  # noqa: E731
    p = FracParams(0.5, 0.5)
    a = th.lemma_composition_check(f, p, 0, 0.0, 0.4)
    b = th.inversion_check(th.PowerExpSeries.from_analytic(f, 0.5, 0.0, 0.4), p, 0.0, 0.4)
    assert abs(a.details["correction"] - b.details["correction"]) < 1e-8


def test_lemma_budget():
    with pytest.raises(CostExceeded):
        th.lemma_composition_check(np.exp, FracParams(0.5, 0.5), 3, 0.0, 0.4)


def test_taylor_examples():
    f = lambda z: np.exp(-0.8 * z) * z**3  # noqa: E731
    rec = th.taylor_telescope_check(f, FracParams(0.6, 0.8), 1, 0.0, 0.5)
    assert rec.passed and rec.residual_or_slack < 1e-4
    rec = th.taylor_telescope_check(np.exp, FracParams(0.5, 0.5), 2, 0.0, 0.4)
    assert rec.passed and rec.residual_or_slack < 1e-3
    assert rec.sign_convention is PROP


def test_taylor_m0_restates_inversion():
    p = FracParams(0.5, 0.5)
    a = th.taylor_telescope_check(np.exp, p, 0, 0.0, 0.4)
    b = th.inversion_check(th.PowerExpSeries.from_analytic(np.exp, 0.5, 0.0, 0.4), p, 0.0, 0.4)
    assert abs(a.details["correction"] - b.details["correction"]) < 1e-8


@pytest.mark.parametrize("fn, alpha, beta, t", [(np.exp, 0.5, 0.5, 0.4), (np.cos, 0.3, 1.1, 0.9),
                                                  (lambda z: 1 + z + z**3, 0.32, 0.3, 0.6)])
def test_telescope_consistency(fn, alpha, beta, t):
    # R_m - R_{m+1} is the r = m+1 boundary term
    p = FracParams(alpha, beta)
    recs = [th.taylor_telescope_check(fn, p, m, 0.0, t) for m in (0, 1, 2)]
    for m in (0, 1):
        drop = recs[m].details["remainder"] - recs[m + 1].details["remainder"]
        term = recs[m + 1].details["terms"][m + 1]
        assert abs(drop - term) < recs[m].tol + recs[m + 1].tol


def test_identity_preconditions():
    with pytest.raises(DomainError):
        th.inversion_check(constant(1.0), FracParams(1.5, 0.5), 0.0, 1.0)
    with pytest.raises(DomainError):
        th.taylor_telescope_check(np.exp, FracParams(0.5 + 0.1j, 0.5), 1, 0.0, 1.0)


def test_sign_consistency():
    recs = th.run_suite("lemma", seed=3) + th.run_suite("taylor", seed=3)
    assert all(r.passed for r in recs)
    conv, ok = th.sign_consistency(recs)
    assert ok and conv is PROP


def t1(u):
    return u


def test_synchrony():
    grid = np.linspace(0, 2, 20)
    assert th.synchrony_check(t1, t1, grid)
    assert not th.synchrony_check(t1, lambda u: -u, grid)
    assert th.synchrony_check(lambda u: u**2, np.exp, grid)
    with pytest.raises(DomainError):
        th.synchrony_check(lambda u: 1j * u, t1, grid)


def test_slack1_examples():
    assert th.chebyshev_slack1(t1, t1, FracParams(0.5, 1), 1.0).passed
    assert th.chebyshev_slack1(t1, lambda u: u**3, FracParams(1.2, 0.7), 2.0).passed
    r = th.chebyshev_slack1(lambda u: np.full_like(u, 3.0), np.exp, FracParams(0.8, 0.6), 1.5)
    assert abs(r.residual_or_slack) < 1e-9
    with pytest.raises(SynchronyError):
        th.chebyshev_slack1(t1, lambda u: -u, FracParams(0.5, 1), 1.0)


def test_slack2_examples():
    assert th.chebyshev_slack2(t1, t1, 0.5, 1.5, 1.0, 1.0).passed
    r = th.chebyshev_slack2(lambda u: np.full_like(u, 2.0), t1, 0.7, 1.3, 0.5, 1.2)
    assert abs(r.residual_or_slack) < 1e-9


@settings(max_examples=20)
@given(st.floats(0.3, 2.0), st.floats(0.1, 2.0), st.floats(0.1, 2.0))
def test_slack2_reduces_to_slack1(alpha, beta, t):
    f, g = lambda u: u**2, lambda u: np.exp(u)
    s1 = th.chebyshev_slack1(f, g, FracParams(alpha, beta), t)
    s2 = th.chebyshev_slack2(f, g, alpha, alpha, beta, t)
    assert abs(s2.residual_or_slack - 2 * s1.details["unit"] * s1.residual_or_slack) < 1e-9


def test_product_slack_examples():
    p = FracParams(0.8, 1.0)
    assert th.product_slack_n([t1], p, 1.0).residual_or_slack == 0
    two = th.product_slack_n([t1, lambda u: u**3], FracParams(1.2, 0.7), 2.0)
    one = th.chebyshev_slack1(t1, lambda u: u**3, FracParams(1.2, 0.7), 2.0)
    assert abs(two.residual_or_slack - one.residual_or_slack) < 1e-12
    assert th.product_slack_n([t1, lambda u: u**2, np.exp], p, 1.0).passed
    with pytest.raises(MonotonicityError):
        th.product_slack_n([t1, lambda u: (u - 1.5) ** 2 + 1], p, 3.0)
    with pytest.raises(PositivityError):
        th.product_slack_n([lambda u: u - 1], p, 2.0)


def test_inequalities_need_real_parameters():
    with pytest.raises(DomainError):
        th.chebyshev_slack1(t1, t1, FracParams(0.5, 0.5j), 1.0)
    with pytest.raises(DomainError):
        th.chebyshev_slack1(t1, t1, FracParams(0.5, 0.0), 1.0)


@pytest.mark.parametrize("name", sorted(th.SUITES))
def test_suites_pass(name):
    recs = th.run_suite(name, seed=11)
    assert recs and all(r.passed for r in recs)


def test_suites_deterministic():
    a = th.run_suite("ineq1", seed=5, count=5)
    b = th.run_suite("ineq1", seed=5, count=5)
    assert [r.residual_or_slack for r in a] == [r.residual_or_slack for r in b]


def test_unknown_suite():
    with pytest.raises(DomainError):
        th.run_suite("nope")


@settings(max_examples=10)
@given(st.floats(0.3, 0.9), st.floats(0.1, 1.5), st.floats(0.2, 1.0), st.integers(0, 2))
def test_taylor_random(alpha, beta, t, m):
    # (D)^(m+1) f ~ (t-a)^(-(m+1) alpha) must stay integrable
    assume((m + 1) * alpha < 0.97)
    rec = th.taylor_telescope_check(lambda z: np.cos(z) + z**2, FracParams(alpha, beta), m, 0.0, t)
    assert rec.passed
    assert rec.sign_convention is not SignConvention.LEMMA_SIGN
