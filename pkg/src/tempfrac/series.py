r"""Tempered operators as series of Riemann-Liouville differintegrals.

Expanding :math:`e^{-\beta s}` under the integral gives

.. math::

    I^{(\alpha,\beta)} f = \sum_{m\ge0} \frac{(-\beta)^m\,\Gamma(\alpha+m)}{m!\,\Gamma(\alpha)}
    I^{\alpha+m}_{RL} f,

and the derivative analogue with :math:`\alpha \to -\alpha`.  Terms behave
like :math:`(\beta(t-a))^m/m!`, so the number of terms grows with
:math:`|\beta(t-a)|`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonConvergent, PoleError
from .functions import as_handle
from .operators import (
    FracParams,
    proportional_power_batch,
    tempered_derivative_batch,
    tempered_integral_batch,
)
from .quadrature import DEFAULT_SPEC, BatchResult, EvalReport, QuadratureSpec
from .records import TheoremId, VerificationRecord
from .specfun import DEFAULT_SERIES, SeriesSpec


def series_coefficient(m: int, p: FracParams) -> complex:
    r""":math:`(-\beta)^m \Gamma(\alpha+m)/(m!\,\Gamma(\alpha))` by the recurrence
    :math:`c_{m+1} = c_m (-\beta)(\alpha+m)/(m+1)`."""
    if m < 0:
        raise DomainError("coefficient index must be non-negative")
    c = 1.0 + 0j
    for k in range(m):
        c *= -p.beta * (p.alpha + k) / (k + 1)
    return c


def _derivative_coefficients(p: FracParams, count: int) -> np.ndarray:
    r""":math:`(-\beta)^m\Gamma(m-\alpha)/(m!\,\Gamma(-\alpha))` for m < count."""
    out = np.empty(count, dtype=complex)
    out[0] = 1.0
    for m in range(count - 1):
        out[m + 1] = out[m] * (-p.beta) * (m - p.alpha) / (m + 1)
    return out


@dataclass(frozen=True)
class SeriesResult:
    """Values at several points plus per-level partial sums (for diagnostics)."""

    values: np.ndarray
    errors: np.ndarray
    terms: int
    partial_sums: np.ndarray
    effort: int
    converged: bool

    def report(self, i: int = 0) -> EvalReport:
        return EvalReport(complex(self.values[i]), float(self.errors[i]), self.terms, self.converged)


def _sum_rl_terms(term_fn, count_fixed, sspec: SeriesSpec, npts: int,
                  qspec: QuadratureSpec = DEFAULT_SPEC) -> SeriesResult:
    """Accumulate ``term_fn(m) -> BatchResult`` with the two-term rule (or a fixed count).

    Rounding in the alternating sum is bounded by ``eps * sum |term|`` and
    added to the error; if that alone breaks the quadrature tolerance the
    result is marked not converged.
    """
    total = np.zeros(npts, dtype=complex)
    err = np.zeros(npts)
    mass = np.zeros(npts)
    run = 0
    partial = []
    effort = 0
    converged = True
    limit = count_fixed if count_fixed is not None else sspec.max_terms
    for m in range(limit):
        res = term_fn(m)
        total = total + res.values
        err = err + res.errors
        mass = mass + np.abs(res.values)
        effort += res.effort
        converged &= res.converged
        partial.append(total.copy())
        if count_fixed is None:
            small = np.all(np.abs(res.values) <= sspec.tail_tol * np.abs(total) + 1e-300)
            run = run + 1 if small else 0
            if run >= 2:
                return _finish_sum(total, err + np.abs(res.values), mass, m + 1, partial, effort,
                                   converged, qspec)
    if count_fixed is None:
        raise NonConvergent(
            f"RL series not converged after {sspec.max_terms} terms; |beta (t - a)| is too large"
        )
    return _finish_sum(total, err, mass, limit, partial, effort, converged, qspec)


def _finish_sum(total, err, mass, terms, partial, effort, converged, qspec) -> SeriesResult:
    rounding = np.finfo(float).eps * mass
    ok = np.all(rounding <= np.maximum(qspec.abs_tol, qspec.rel_tol * np.abs(total)))
    return SeriesResult(total, err + rounding, terms, np.array(partial), effort, bool(converged and ok))


def series_integral_batch(f, p: FracParams, a: float, ts, sspec: SeriesSpec = DEFAULT_SERIES,
                          qspec: QuadratureSpec = DEFAULT_SPEC, terms: int | None = None) -> SeriesResult:
    """Series route at every point of ``ts``; ``terms`` fixes the truncation."""
    f = as_handle(f)
    p.check_integral()
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    coef = [1.0 + 0j]

    def term(m):
        if m > 0:
            coef.append(coef[-1] * (-p.beta) * (p.alpha + m - 1) / m)
        c = coef[m]
        if c == 0:
            return BatchResult(np.zeros(ts.shape, complex), np.zeros(ts.shape), 0, True)
        r = tempered_integral_batch(f, FracParams(p.alpha + m, 0.0), a, ts, qspec)
        return BatchResult(c * r.values, abs(c) * r.errors, r.effort, r.converged)

    return _sum_rl_terms(term, terms, sspec, ts.size, qspec)


def series_integral(f, p: FracParams, a: float, t: float, sspec: SeriesSpec = DEFAULT_SERIES,
                    qspec: QuadratureSpec = DEFAULT_SPEC) -> EvalReport:
    r"""Tempered integral as :math:`\sum_m c_m I^{\alpha+m}_{RL} f(t)`; effort is the term count."""
    return series_integral_batch(f, p, a, [t], sspec, qspec).report()


def series_derivative_batch(f, p: FracParams, a: float, ts, sspec: SeriesSpec = DEFAULT_SERIES,
                            qspec: QuadratureSpec = DEFAULT_SPEC, terms: int | None = None) -> SeriesResult:
    f = as_handle(f)
    p.check_derivative()
    if p.alpha.imag == 0 and float(p.alpha.real).is_integer():
        raise PoleError("the derivative series needs a non-integer alpha (Gamma(-alpha) has a pole)")
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    cache: dict[int, complex] = {}

    def coef(m):
        if m not in cache:
            cache[m] = 1.0 + 0j if m == 0 else coef(m - 1) * (-p.beta) * (m - 1 - p.alpha) / m
        return cache[m]

    def term(m):
        c = coef(m)
        order = p.alpha - m
        if order.real >= 0:
            r = tempered_derivative_batch(f, FracParams(order, 0.0), a, ts, qspec)
        else:
            # D^{-nu} = I^{nu}
            r = tempered_integral_batch(f, FracParams(-order, 0.0), a, ts, qspec)
        return BatchResult(c * r.values, abs(c) * r.errors, r.effort, r.converged)

    return _sum_rl_terms(term, terms, sspec, ts.size, qspec)


def series_derivative(f, p: FracParams, a: float, t: float, sspec: SeriesSpec = DEFAULT_SERIES,
                      qspec: QuadratureSpec = DEFAULT_SPEC) -> EvalReport:
    r"""Tempered derivative as :math:`\sum_m \frac{(-\beta)^m\Gamma(m-\alpha)}{m!\Gamma(-\alpha)} D^{\alpha-m}_{RL} f(t)`.

    Leading terms with :math:`\mathrm{Re}(\alpha-m) \ge 0` are RL derivatives,
    the rest RL integrals of order :math:`m-\alpha`.
    """
    return series_derivative_batch(f, p, a, [t], sspec, qspec).report()


def proportional_step_check(f, p: FracParams, a: float, t: float, sspec: SeriesSpec = DEFAULT_SERIES,
                            qspec: QuadratureSpec = DEFAULT_SPEC, tol: float = 1e-5) -> VerificationRecord:
    r"""Check :math:`(d/dt + \beta) I^{(\alpha,\beta)} f = I^{(\alpha-1,\beta)} f` through the series.

    The truncation found at ``t`` is frozen for the finite-difference
    stencil so that the differenced function is one fixed finite sum.
    """
    if not p.alpha.real > 1:
        raise DomainError("the proportional step needs Re(alpha) > 1")
    base = series_integral_batch(f, p, a, [t], sspec, qspec)
    count = base.terms

    def integral_batch(x):
        r = series_integral_batch(f, p, a, x, sspec, qspec, terms=count)
        return BatchResult(r.values, r.errors, r.effort, r.converged)

    lhs = proportional_power_batch(integral_batch, 1, p.beta, a, [t]).values[0]
    rhs = series_integral(f, FracParams(p.alpha - 1, p.beta), a, t, sspec, qspec).value
    resid = abs(lhs - rhs) / max(1.0, abs(rhs))
    inputs = {"alpha": p.alpha, "beta": p.beta, "a": a, "t": t, "f": getattr(f, "label", "")}
    return VerificationRecord.identity(TheoremId.PROPORTIONAL_STEP, inputs, lhs, rhs, resid, tol)
