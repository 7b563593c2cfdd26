r"""Closed forms of tempered integrals and derivatives for specific kernels.

Each result is a short outer series whose terms are special functions
from :mod:`tempfrac.specfun`.  The kernels are

* :math:`(t-a)^\lambda` (confluent hypergeometric form),
* :math:`t^{\mu-1}(1-t)^{-\lambda}` (Gauss hypergeometric terms),
* :math:`t^{\mu-1}(1-at)^{-\lambda}(1-bt)^{-\kappa}` (Appell terms),
* :math:`(t-a)^{\nu-1}E^{\gamma}_{\mu,\nu}(\omega (t-a)^\mu)` (Mittag-Leffler), in two
  equivalent arrangements whose agreement is itself a check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonConvergent, PoleError
from .functions import FunctionHandle, Interval, Regularity
from .operators import FracParams
from .specfun import (
    DEFAULT_SERIES,
    SeriesSpec,
    appell_f1,
    gamma_ratio,
    hyp1f1,
    hyp2f1,
    mittag_leffler3,
    rgamma,
)


@dataclass(frozen=True)
class MlKernelParams:
    """Parameters of the kernel (t-a)^(nu-1) E^gammap_{mu,nu}(omega (t-a)^mu)."""

    mu: complex
    nu: complex
    gammap: complex
    omega: complex

    def __post_init__(self) -> None:
        for name in ("mu", "nu", "gammap", "omega"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.mu.real <= 0 or self.nu.real <= 0:
            raise DomainError("Mittag-Leffler kernel needs Re(mu) > 0 and Re(nu) > 0")


@dataclass(frozen=True)
class AppellKernelParams:
    """Kernel t^(mu-1) (1 - acoef t)^(-lam) (1 - bcoef t)^(-exponent2).

    ``exponent2`` is the second kernel exponent; it is unrelated to the
    tempering rate, which lives in :class:`FracParams`.
    """

    mu: complex
    lam: complex
    exponent2: complex
    acoef: complex
    bcoef: complex

    def __post_init__(self) -> None:
        for name in ("mu", "lam", "exponent2", "acoef", "bcoef"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.mu.real <= 0:
            raise DomainError("Appell kernel needs Re(mu) > 0")


def _outer_sum(term, sspec: SeriesSpec, what: str) -> complex:
    """Sum ``term(m)`` for m = 0, 1, ... with the two-consecutive-terms rule."""
    total = 0j
    run = 0
    for m in range(sspec.max_terms):
        v = term(m)
        total += v
        run = run + 1 if abs(v) <= sspec.tail_tol * abs(total) else 0
        if run >= 2:
            return total
    raise NonConvergent(f"{what}: outer series not converged after {sspec.max_terms} terms")


def _positive_gap(a: float, t: float) -> float:
    x = float(t) - float(a)
    if not x > 0:
        raise DomainError(f"closed forms need t > a, got t - a = {x}")
    return x


# {{{ Example-style kernels


def power_integral_closed(lam, p: FracParams, a: float, t: float,
                          sspec: SeriesSpec = DEFAULT_SERIES) -> complex:
    r""":math:`I^{(\alpha,\beta)}(t-a)^\lambda = \frac{\Gamma(\lambda+1)}{\Gamma(\lambda+\alpha+1)}
    (t-a)^{\lambda+\alpha}\,{}_1F_1(\alpha; \lambda+\alpha+1; -\beta(t-a))`."""
    lam = complex(lam)
    if lam.real <= -1:
        raise DomainError("power kernel needs Re(lambda) > -1")
    x = _positive_gap(a, t)
    c = lam + p.alpha + 1
    return complex(gamma_ratio(lam + 1, c)) * x ** (lam + p.alpha) * hyp1f1(p.alpha, c, -p.beta * x, sspec)


def power_derivative_closed(lam, p: FracParams, a: float, t: float,
                            sspec: SeriesSpec = DEFAULT_SERIES) -> complex:
    r"""The same with :math:`\alpha \to -\alpha`:
    :math:`\frac{\Gamma(\lambda+1)}{\Gamma(\lambda-\alpha+1)}(t-a)^{\lambda-\alpha}{}_1F_1(-\alpha;\lambda-\alpha+1;-\beta(t-a))`."""
    lam = complex(lam)
    if lam.real <= -1:
        raise DomainError("power kernel needs Re(lambda) > -1")
    x = _positive_gap(a, t)
    c = lam - p.alpha + 1
    if c.imag == 0 and c.real <= 0 and float(c.real).is_integer():
        raise PoleError("lambda - alpha + 1 is a non-positive integer")
    return complex(gamma_ratio(lam + 1, c)) * x ** (lam - p.alpha) * hyp1f1(-p.alpha, c, -p.beta * x, sspec)


def _hyper_outer(mu, alpha, beta, t, inner, sspec, what):
    r"""Shared outer series
    :math:`t^{\mu+\alpha-1}\frac{\Gamma(\mu)}{\Gamma(\mu+\alpha)}\sum_m \frac{(\alpha)_m}{(\mu+\alpha)_m}\frac{(-\beta t)^m}{m!}\,\mathrm{inner}(\mu+\alpha+m)`."""
    z = -beta * t
    c0 = mu + alpha
    state = {"w": 1.0 + 0j}

    def term(m):
        if m > 0:
            state["w"] *= (alpha + m - 1) / (c0 + m - 1) * z / m
        w = state["w"]
        return 0j if w == 0 else w * inner(c0 + m)

    pref = complex(gamma_ratio(mu, c0)) * t ** (c0 - 1)
    return pref * _outer_sum(term, sspec, what)


def beta_kernel_closed(mu, lam, p: FracParams, t: float, sspec: SeriesSpec = DEFAULT_SERIES) -> complex:
    r"""Tempered integral (lower limit 0) of :math:`t^{\mu-1}(1-t)^{-\lambda}` for 0 < t < 1.

    ``p.alpha`` may be negated to obtain the corresponding derivative.
    """
    mu, lam = complex(mu), complex(lam)
    if mu.real <= 0:
        raise DomainError("beta kernel needs Re(mu) > 0")
    t = float(t)
    if not 0 < t < 1:
        raise DomainError(f"beta kernel closed form needs 0 < t < 1, got {t}")
    return _hyper_outer(mu, p.alpha, p.beta, t, lambda c: hyp2f1(mu, lam, c, t, sspec), sspec,
                        "beta kernel")


def appell_kernel_closed(k: AppellKernelParams, p: FracParams, t: float,
                         sspec: SeriesSpec = DEFAULT_SERIES) -> complex:
    r"""Tempered integral (lower limit 0) of :math:`t^{\mu-1}(1-at)^{-\lambda}(1-bt)^{-\kappa}`."""
    t = float(t)
    if not t > 0:
        raise DomainError("Appell kernel closed form needs t > 0")
    x, y = k.acoef * t, k.bcoef * t
    if abs(x) >= 1 or abs(y) >= 1:
        raise DomainError("Appell kernel closed form needs |acoef t| < 1 and |bcoef t| < 1")
    return _hyper_outer(
        k.mu, p.alpha, p.beta, t,
        lambda c: appell_f1(k.mu, k.lam, k.exponent2, c, x, y, sspec), sspec, "Appell kernel",
    )


def ml_kernel_closed_mform(k: MlKernelParams, p: FracParams, a: float, t: float,
                           sspec: SeriesSpec = DEFAULT_SERIES) -> complex:
    r""":math:`\sum_m \frac{(-\beta)^m\Gamma(\alpha+m)}{m!\Gamma(\alpha)}(t-a)^{\nu+\alpha+m-1}
    E^{\gamma}_{\mu,\nu+\alpha+m}(\omega(t-a)^\mu)`."""
    if p.alpha.real <= 0:
        raise DomainError("needs Re(alpha) > 0")
    x = _positive_gap(a, t)
    z = k.omega * x**k.mu
    state = {"c": 1.0 + 0j}

    def term(m):
        if m > 0:
            state["c"] *= -p.beta * (p.alpha + m - 1) / m
        c = state["c"]
        if c == 0:
            return 0j
        nu_m = k.nu + p.alpha + m
        return c * x ** (nu_m - 1) * mittag_leffler3(k.mu, nu_m, k.gammap, z, sspec)

    return _outer_sum(term, sspec, "Mittag-Leffler m-form")


def ml_kernel_closed_kform(k: MlKernelParams, p: FracParams, a: float, t: float,
                           sspec: SeriesSpec = DEFAULT_SERIES) -> complex:
    r""":math:`\sum_k \frac{(\gamma)_k\omega^k}{k!\,\Gamma(\mu k+\nu+\alpha)}(t-a)^{\mu k+\nu+\alpha-1}
    {}_1F_1(\alpha;\mu k+\nu+\alpha;-\beta(t-a))`."""
    if p.alpha.real <= 0:
        raise DomainError("needs Re(alpha) > 0")
    x = _positive_gap(a, t)
    state = {"w": 1.0 + 0j}

    def term(j):
        if j > 0:
            state["w"] *= (k.gammap + j - 1) / j * k.omega
        w = state["w"]
        if w == 0:
            return 0j
        c = k.mu * j + k.nu + p.alpha
        return w * complex(rgamma(c)) * x ** (c - 1) * hyp1f1(p.alpha, c, -p.beta * x, sspec)

    return _outer_sum(term, sspec, "Mittag-Leffler k-form")


def ml_identity_residual(k: MlKernelParams, p: FracParams, a: float, t: float,
                         sspec: SeriesSpec = DEFAULT_SERIES) -> float:
    """Relative gap between the two Mittag-Leffler arrangements."""
    if min(k.mu.real, k.nu.real, p.alpha.real, p.beta.real) <= 0:
        raise DomainError("the identity is stated for positive real parts of mu, nu, alpha, beta")
    m = ml_kernel_closed_mform(k, p, a, t, sspec)
    kf = ml_kernel_closed_kform(k, p, a, t, sspec)
    return abs(m - kf) / (abs(m) + abs(kf) + np.finfo(float).tiny)


# }}}


# {{{ the kernels themselves, for quadrature cross-checks


def ml_kernel_handle(k: MlKernelParams, a: float = 0.0, b: float = np.inf,
                     sspec: SeriesSpec = DEFAULT_SERIES) -> FunctionHandle:
    def ev(u):
        x = np.asarray(u, dtype=float) - a
        return x ** (k.nu - 1) * mittag_leffler3(k.mu, k.nu, k.gammap, k.omega * x**k.mu, sspec)

    smooth_nu = k.nu.imag == 0 and k.nu.real >= 1 and float(k.nu.real).is_integer()
    return FunctionHandle(ev, Interval(a, b), Regularity.continuous(2),
                          left_exponent=None if smooth_nu and k.mu == 1 else k.nu.real - 1,
                          label="ml-kernel")


def beta_kernel_handle(mu, lam) -> FunctionHandle:
    mu, lam = complex(mu), complex(lam)
    return FunctionHandle(
        lambda u: np.asarray(u, dtype=float) ** (mu - 1) * (1 - np.asarray(u, dtype=float)) ** (-lam),
        Interval(0.0, 1.0), Regularity.continuous(2), left_exponent=mu.real - 1, label="beta-kernel",
    )


def appell_kernel_handle(k: AppellKernelParams) -> FunctionHandle:
    bound = 1.0 / max(abs(k.acoef), abs(k.bcoef), 1e-300)

    def ev(u):
        u = np.asarray(u, dtype=float)
        return u ** (k.mu - 1) * (1 - k.acoef * u) ** (-k.lam) * (1 - k.bcoef * u) ** (-k.exponent2)

    return FunctionHandle(ev, Interval(0.0, bound), Regularity.continuous(2),
                          left_exponent=k.mu.real - 1, label="appell-kernel")


# }}}
