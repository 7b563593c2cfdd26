r"""Mellin transforms of tempered fractional integrals, three ways.

``mellin_numeric`` integrates :math:`t^{s-1} g(t)` directly.  For
:math:`g = I^{(\alpha,\beta)} f` two rewritten forms are also available:

* the Kobayashi route,
  :math:`\frac{\beta^{1-\alpha-s}}{\Gamma(\alpha)}\int_0^\infty \Gamma_{1-s}(\alpha, \beta u) f(u)\,du`;
* the incomplete-gamma route,
  :math:`\beta^{1-\alpha-s}\int_0^\infty f(u) e^{\beta u}\sum_n
  \frac{\Gamma(\alpha+s-n-1, \beta u)}{\Gamma(\alpha-n)}\frac{(-\beta u)^n}{n!}\,du`.

The n-th summand carries :math:`(-\beta u)^n`; the sign is easy
to lose when expanding :math:`(t-u)^{\alpha-1}`.  The terms are then
one-signed and of size about :math:`n^{-1-\alpha}`, so plain truncation is
hopeless; :func:`incgamma_series` sums the tail with Euler-Maclaurin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonConvergent
from .functions import FunctionHandle, Interval, Regularity, as_handle
from .operators import FracParams, tempered_integral_handle
from .quadrature import (
    DEFAULT_SPEC,
    EvalReport,
    QuadratureSpec,
    gauss_jacobi_unit,
    quad_batch,
    semi_infinite_batch,
)
from .specfun import (
    DEFAULT_SERIES,
    SeriesSpec,
    _upper_cf_scaled,
    kobayashi_gamma,
    rgamma,
    shifted_gamma_ratio,
    upper_incomplete_gamma_scaled,
)


@dataclass(frozen=True)
class MellinPoint:
    """The transform variable ``s``."""

    s: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", complex(self.s))

    def check_tempered(self, p: FracParams) -> None:
        """Strip used for the tempered-integral forms: Re(s) >= 1, Re(alpha + s - 1) > 0."""
        if self.s.real < 1:
            raise DomainError(f"the tempered Mellin forms need Re(s) >= 1, got s = {self.s}")
        if (p.alpha + self.s - 1).real <= 0:
            raise DomainError("the tempered Mellin forms need Re(alpha + s - 1) > 0")
        if p.alpha.real <= 0:
            raise DomainError("needs Re(alpha) > 0")
        if p.beta.real <= 0:
            raise DomainError("the tempered Mellin forms need Re(beta) > 0")


def _point(s) -> MellinPoint:
    return s if isinstance(s, MellinPoint) else MellinPoint(s)


def _report(res, strict: bool, what: str) -> EvalReport:
    if strict and not res.converged:
        raise NonConvergent(f"{what} did not converge")
    return res.report()


def mellin_numeric(g, s, decay_hint: float, spec: QuadratureSpec = DEFAULT_SPEC,
                   strict: bool = True) -> EvalReport:
    r""":math:`\int_0^\infty t^{s-1} g(t)\,dt`: graded rule on [0, 1], semi-infinite rule beyond."""
    g = as_handle(g)
    s = _point(s).s
    if s.real <= 0:
        raise DomainError(f"direct Mellin transform needs Re(s) > 0, got s = {s}")
    kappa = g.left_exponent or 0.0
    sigma = s.real - 1.0 + kappa
    if sigma <= -1:
        raise DomainError("t^(s-1) g(t) is not integrable at 0")

    def head(x, _r):
        return np.power(x, s - 1.0) * g(x)

    h = quad_batch(head, 0.0, 1.0, spec, sigma_left=sigma)

    def tail(x):
        return np.power(x, s - 1.0) * g(x)

    tl = semi_infinite_batch(tail, decay_hint, spec, start=1.0)
    ok = h.converged and tl.converged
    if strict and not ok:
        raise NonConvergent("direct Mellin transform did not converge")
    return EvalReport(complex(h.values[0] + tl.values[0]), float(h.errors[0] + tl.errors[0]),
                      h.effort + tl.effort, ok)


def mellin_tempered_numeric(f, p: FracParams, s, decay_hint: float,
                            spec: QuadratureSpec = DEFAULT_SPEC) -> EvalReport:
    """Direct transform of ``t -> I^(alpha,beta) f(t)`` (lower limit 0)."""
    pt = _point(s)
    pt.check_tempered(p)
    g = tempered_integral_handle(as_handle(f), p, 0.0, spec)
    # the tempered integral decays no faster than f and no faster than e^{-beta t}
    d = min(decay_hint, p.beta.real)
    return mellin_numeric(g, pt, d, spec)


def mellin_tempered_kobayashi(f, p: FracParams, s, decay_hint: float,
                              spec: QuadratureSpec = DEFAULT_SPEC) -> EvalReport:
    r""":math:`\frac{\beta^{1-\alpha-s}}{\Gamma(\alpha)}\int_0^\infty \Gamma_{1-s}(\alpha,\beta u) f(u)\,du`."""
    f = as_handle(f)
    pt = _point(s)
    pt.check_tempered(p)
    s = pt.s
    beta, alpha = p.beta, p.alpha

    def integrand(u):
        k = np.asarray(kobayashi_gamma(1.0 - s, alpha, (beta * u).ravel(), spec)).reshape(u.shape)
        return k * f(u)

    res = semi_infinite_batch(integrand, decay_hint, spec, sigma_left=f.grading_hint())
    c = complex(beta ** (1.0 - alpha - s) * rgamma(alpha))
    r = _report(res, True, "Kobayashi-route Mellin transform")
    return EvalReport(c * r.value, abs(c) * r.err_estimate, r.effort, r.converged)


# {{{ incomplete-gamma route


def _h_table(a0: complex, x: np.ndarray, N: int, spec: SeriesSpec) -> np.ndarray:
    r"""``H[n] = e^x x^{-(a0-n)} Gamma(a0 - n, x)`` for n < N, every column of ``x``.

    The continued fraction gives H directly where it converges.  Elsewhere
    (|x| < 1) H is computed directly while a0 - n > 0 and then by the
    recurrence ``H[n+1] = (x H[n] - 1)/(a0 - n - 1)``, which damps errors
    because |x| < |a0 - n - 1| there.
    """
    a = a0 - np.arange(N)[:, None]
    ax = np.abs(x)[None, :]
    xx = np.broadcast_to(x[None, :], (N, x.size))
    cf = (ax > np.abs(a) + 1.0) | ((a.real <= 0) & (ax >= 1.0))
    H = np.empty((N, x.size), dtype=complex)
    if np.any(cf):
        H[cf] = _upper_cf_scaled(np.broadcast_to(a, cf.shape)[cf], xx[cf])
    for n in range(N):
        rest = ~cf[n]
        if not np.any(rest):
            continue
        an = a[n, 0]
        if n > 0 and an.real + 1.0 <= 0:
            # (a0 - n) = (a0 - (n-1)) - 1 and the previous row is valid
            H[n, rest] = (x[rest] * H[n - 1, rest] - 1.0) / an
        else:
            xr = x[rest]
            H[n, rest] = np.asarray(
                upper_incomplete_gamma_scaled(np.full(xr.size, an), xr, spec)
            ) * xr ** (-an)
    return H


MELLIN2_HEAD_TERMS = 60
MELLIN2_TAIL_NODES = 24


def _h_continuous(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """``e^x x^{-a} Gamma(a, x)`` for very negative (non-integer) ``a``.

    Beyond |a| = 1e6 three levels of the continued fraction are exact to
    rounding; the full fraction stalls there.
    """
    out = np.empty(a.shape, dtype=complex)
    huge = np.abs(a) > 1e6
    if np.any(huge):
        ah = a[huge]
        b = x[huge] + 1.0 - ah
        out[huge] = 1.0 / (b - (1.0 - ah) / (b + 2.0 - 2.0 * (2.0 - ah) / (b + 4.0)))
    if np.any(~huge):
        out[~huge] = _upper_cf_scaled(a[~huge], x[~huge])
    return out


def incgamma_series(alpha: complex, s: complex, x, spec: SeriesSpec = DEFAULT_SERIES):
    r"""Sum :math:`\sum_n e^{x}\Gamma(\alpha+s-n-1, x)\frac{x^n}{n!\,\Gamma(\alpha-n)}` per entry of ``x``.

    With :math:`c_n = (1-\alpha)_n/(n!\,\Gamma(\alpha))` the summand is
    :math:`c_n x^{a_0} H_n` where :math:`a_0 = \alpha+s-1`.  It is one-signed
    and decays like :math:`n^{-1-\alpha}`, so only the first
    ``MELLIN2_HEAD_TERMS`` terms are added directly.  The rest is the
    midpoint Euler-Maclaurin sum: the summand continued to real order
    :math:`\nu`, integrated over :math:`[N-1/2, \infty)` by a Gauss-Jacobi
    rule in :math:`w = (N-1/2)/\nu`, plus the first- and third-derivative
    corrections.  For a positive integer alpha the series is finite.

    Returns ``(values, error_estimates, terms)``.
    """
    alpha, s = complex(alpha), complex(s)
    x = np.atleast_1d(np.asarray(x, dtype=complex)).ravel()
    a0 = alpha + s - 1.0
    N = MELLIN2_HEAD_TERMS
    if N > spec.max_terms:
        raise NonConvergent(f"incomplete-gamma Mellin series needs {N} > max_terms direct terms")
    H = _h_table(a0, x, N, spec)
    r = np.empty(N, dtype=complex)
    r[0] = complex(rgamma(alpha))
    for n in range(N - 1):
        r[n + 1] = r[n] * (n + 1 - alpha) / (n + 1)
    xa = x**a0
    head = (H * r[:, None]).sum(axis=0) * xa
    tail_scale = complex(rgamma(1.0 - alpha) * rgamma(alpha))
    if tail_scale == 0:
        return head, np.zeros(x.size), N

    def coef(nu):
        return np.asarray(shifted_gamma_ratio(nu + 1.0, -alpha, 0.0)) * tail_scale

    def cont(nu, xx, c):
        nu, xx = np.broadcast_arrays(np.asarray(nu, dtype=complex), xx)
        return c * _h_continuous((a0 - nu).ravel(), xx.ravel()).reshape(nu.shape)

    M = N - 0.5
    wexp = alpha.real - 1.0

    def tail_rule(n):
        # nu = M / w turns the tail into w^(alpha-1) times an analytic function
        w, wt = gauss_jacobi_unit(n, wexp)
        nu = M / w
        g = cont(nu[None, :], x[:, None], coef(nu)[None, :]) * (M * w ** (-1.0 - alpha))
        return (g * wt).sum(axis=1)

    fine = tail_rule(MELLIN2_TAIL_NODES)
    coarse = tail_rule(MELLIN2_TAIL_NODES * 2 // 3)
    hs = 0.5
    f = [cont(M + k * hs, x, coef(M + k * hs)) for k in (-2, -1, 1, 2)]
    d1 = (f[2] - f[1]) / (2 * hs)
    d3 = (f[3] - 2 * f[2] + 2 * f[1] - f[0]) / (2 * hs**3)
    corr3 = 7.0 * d3 / 5760.0
    tail = fine + d1 / 24.0 - corr3
    err = (np.abs(corr3) + np.abs(fine - coarse)) * np.abs(xa)
    return head + tail * xa, err, N


def mellin_tempered_incgamma(f, p: FracParams, s, decay_hint: float,
                             sspec: SeriesSpec = DEFAULT_SERIES,
                             qspec: QuadratureSpec = DEFAULT_SPEC) -> EvalReport:
    r""":math:`\beta^{1-\alpha-s}\int_0^\infty f(u)\sum_n e^{\beta u}\Gamma(\alpha+s-n-1,\beta u)
    \frac{(-\beta u)^n}{n!\,\Gamma(\alpha-n)}\,du`.

    The factor :math:`e^{\beta u}` is absorbed into the scaled incomplete
    gamma, so nothing overflows and ``f`` only needs its own decay.
    """
    f = as_handle(f)
    pt = _point(s)
    pt.check_tempered(p)
    s = pt.s
    beta, alpha = p.beta, p.alpha
    series_err = [0.0]

    def integrand(u):
        v, e, _ = incgamma_series(alpha, s, (beta * u).ravel(), sspec)
        fu = f(u)
        series_err[0] = max(series_err[0], float(np.max(np.abs(fu).ravel() * e, initial=0.0)))
        return v.reshape(u.shape) * fu

    res = semi_infinite_batch(integrand, decay_hint, qspec, sigma_left=f.grading_hint())
    c = complex(beta ** (1.0 - alpha - s))
    r = _report(res, True, "incomplete-gamma-route Mellin transform")
    err = abs(c) * (r.err_estimate + series_err[0] / decay_hint)
    return EvalReport(c * r.value, err, r.effort, r.converged)


# }}}


# {{{ reference corpus

_CORPUS_FUNCTIONS = {
    "exp(-u)": (lambda u: np.exp(-u), 1.0),
    "u*exp(-u)": (lambda u: u * np.exp(-u), 1.0),
    "exp(-2u)": (lambda u: np.exp(-2.0 * u), 2.0),
}
CORPUS_ALPHAS = (0.5, 1.0, 1.5)
CORPUS_BETAS = (0.5, 1.0)
CORPUS_S = (1.0, 1.5, 2.0)


@dataclass(frozen=True)
class CorpusPoint:
    label: str
    f: FunctionHandle
    decay: float
    params: FracParams
    s: complex


def corpus() -> list[CorpusPoint]:
    """The 54 (f, alpha, beta, s) points on which all three routes must agree."""
    out = []
    for label, (fn, decay) in _CORPUS_FUNCTIONS.items():
        f = FunctionHandle(fn, Interval(0.0, np.inf), Regularity.smooth(), label=label)
        for alpha in CORPUS_ALPHAS:
            for beta in CORPUS_BETAS:
                for s in CORPUS_S:
                    out.append(CorpusPoint(label, f, decay, FracParams(alpha, beta), complex(s)))
    return out


# }}}
