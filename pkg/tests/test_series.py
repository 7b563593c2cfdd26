import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tempfrac import operators as op
from tempfrac import series as sr
from tempfrac.errors import DomainError, NonConvergent, PoleError
from tempfrac.functions import as_handle, constant, power
from tempfrac.operators import FracParams
from tempfrac.specfun import SeriesSpec


@pytest.mark.parametrize("m, alpha, beta, want", [(0, 0.5, 1.0, 1), (1, 2, 1, -2), (3, 0.5, 2, -2.5)])
def test_coefficient_examples(m, alpha, beta, want):
    assert abs(sr.series_coefficient(m, FracParams(alpha, beta)) - want) < 1e-14


@given(st.integers(0, 30), st.floats(0.1, 4.0), st.floats(-3.0, 3.0))
def test_coefficient_closed_form(m, alpha, beta):
    want = (-beta) ** m * math.exp(math.lgamma(alpha + m) - math.lgamma(m + 1) - math.lgamma(alpha))
    got = sr.series_coefficient(m, FracParams(alpha, beta))
    assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


def test_beta_zero_is_one_rl_term():
    f = as_handle(np.cos)
    r = sr.series_integral(f, FracParams(0.7, 0.0), 0.0, 1.0)
    # one non-zero term, then two zero terms confirm the stop
    assert r.effort <= 3
    assert r.value == op.rl_integral(f, 0.7, 0.0, 1.0).value


def test_unit_example():
    r = sr.series_integral(constant(1.0), FracParams(1.0, 1.0), 0.0, 1.0)
    assert abs(r.value - (1 - math.exp(-1))) < 1e-8


def test_integral_route_agreement():
    f, p = as_handle(lambda t: t), FracParams(0.5, 0.5)
    a = sr.series_integral(f, p, 0.0, 1.0).value
    b = op.tempered_integral(f, p, 0.0, 1.0).value
    c = op.tempered_integral_via_rl(f, p, 0.0, 1.0).value
    assert max(abs(a - b), abs(a - c)) < 1e-7 * abs(b)


@pytest.mark.parametrize("f, alpha, beta, t", [
    (as_handle(lambda t: t), 0.5, 0.5, 1.0),
    (power(1.4), 0.6, 0.8, 0.7),
])
def test_derivative_route_agreement(f, alpha, beta, t):
    p = FracParams(alpha, beta)
    a = sr.series_derivative(f, p, 0.0, t).value
    b = op.tempered_derivative(f, p, 0.0, t).value
    assert abs(a - b) < 1e-5 * abs(b)


def test_derivative_rejects_integer_order():
    with pytest.raises(PoleError):
        sr.series_derivative(constant(1.0), FracParams(1.0, 0.5), 0.0, 1.0)


def test_nonconvergence_reported():
    with pytest.raises(NonConvergent):
        sr.series_integral(constant(1.0), FracParams(0.5, 30.0), 0.0, 2.0, SeriesSpec(max_terms=16))


@pytest.mark.parametrize("f, alpha, beta, t, tol", [
    (constant(1.0), 1.5, 0.5, 1.0, 1e-5),
    (as_handle(np.exp), 1.7, 0.0, 1.0, 1e-6),
    (as_handle(lambda t: t**2), 2.2, 1.0, 0.8, 1e-5),
])
def test_proportional_step(f, alpha, beta, t, tol):
    rec = sr.proportional_step_check(f, FracParams(alpha, beta), 0.0, t)
    assert rec.residual_or_slack < tol


def test_proportional_step_needs_alpha_above_one():
    with pytest.raises(DomainError):
        sr.proportional_step_check(constant(1.0), FracParams(0.8, 0.5), 0.0, 1.0)


@pytest.mark.parametrize("lam", [0.0, 1.0, 1.4])
def test_term_ratio_law(lam):
    # for a monomial the RL ratio is Gamma(lam+1+alpha+m)/Gamma(lam+2+alpha+m) t
    p, t = FracParams(0.6, 1.3), 1.1
    res = sr.series_integral_batch(power(lam), p, 0.0, [t])
    terms = np.diff(res.partial_sums[:, 0], prepend=0)
    big = np.abs(terms) > 1e-11 * abs(res.values[0])
    checked = 0
    for m in range(10, res.terms - 1):
        if not (big[m] and big[m + 1]):
            continue
        checked += 1
        got = abs(terms[m + 1] / terms[m])
        want = abs(p.beta) * (p.alpha.real + m) / (m + 1) * t / (lam + 1 + p.alpha.real + m)
        assert abs(got / want - 1) < 0.1
    assert checked >= 3


def test_truncation_monotone():
    p, t = FracParams(0.6, 0.9), 1.0
    res = sr.series_integral_batch(power(1.0), p, 0.0, [t])
    errs = np.abs(res.partial_sums[:, 0] - res.values[0])
    start = math.ceil(2 * abs(p.beta) * t)
    tail = errs[start:]
    tail = tail[tail > 1e-15]
    assert np.all(np.diff(tail) < 0)


@settings(max_examples=15)
@given(st.floats(0.2, 2.0), st.floats(0.0, 1.8), st.floats(0.2, 1.1))
def test_series_matches_quadrature(alpha, beta, t):
    f, p = as_handle(np.cos), FracParams(alpha, beta)
    a = sr.series_integral(f, p, 0.0, t).value
    b = op.tempered_integral(f, p, 0.0, t).value
    assert abs(a - b) < 1e-8 * max(1.0, abs(b))
