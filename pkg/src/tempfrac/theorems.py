r"""Numerical certificates for the composition identities, the fractional
Taylor theorem and the Chebyshev-type inequalities.

Identities involving powers of :math:`D^{(\alpha,\beta)}` work on a
:class:`PowerExpSeries`, :math:`f(t) = e^{-\beta(t-a)}\sum_k c_k (t-a)^{e_k}`.
On each term the tempered operators act in closed form,

.. math::

    D^{(\nu,\beta)}\bigl[e^{-\beta(t-a)}(t-a)^{e}\bigr]
      = \frac{\Gamma(e+1)}{\Gamma(e+1-\nu)} e^{-\beta(t-a)}(t-a)^{e-\nu},

so repeated derivatives are exact.  Everything else is computed
numerically: the outer (collapsed) tempered integral by quadrature, and the
boundary values :math:`I^{(1-\alpha,\beta)}(D^{(\alpha,\beta)})^r f(a^+)` by
quadrature at two points next to ``a`` followed by one Richardson step.

Boundary corrections are compared with both signs.  A record states which
sign reproduced the left-hand side (``PropSign`` when
:math:`(1 - I D) f` equals :math:`+e^{-\beta(t-a)}(\dots)`, ``LemmaSign`` for
the opposite sign), or ``Undetermined`` when the correction is too small to
tell them apart.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CostExceeded, DomainError, MonotonicityError, PositivityError, SynchronyError
from .functions import FunctionHandle, Interval, Regularity, as_handle
from .operators import FracParams, tempered_derivative_handle, tempered_integral, tempered_integral_batch
from .quadrature import DEFAULT_SPEC, QuadratureSpec
from .records import SignConvention, TheoremId, VerificationRecord
from .specfun import gamma, gamma_ratio, gamma_star, rgamma

LIMIT_OFFSET = 1e-6
MAX_COMPOSITION = 2


# {{{ closed forms used by the proofs


def unit_integral_closed(p: FracParams, t: float) -> complex:
    r""":math:`I^{(\alpha,\beta)}[1](t) = \gamma(\alpha,\beta t)/(\beta^\alpha\Gamma(\alpha))`, lower limit 0.

    Written as :math:`t^\alpha\gamma^*(\alpha,\beta t)`, which is also the
    correct :math:`\beta \to 0` limit :math:`t^\alpha/\Gamma(\alpha+1)`.
    """
    p.check_integral()
    t = float(t)
    if not t > 0:
        raise DomainError(f"unit integral needs t > 0, got {t}")
    return complex(t**p.alpha * gamma_star(p.alpha, p.beta * t))


def eab_power_integral(gexp, p: FracParams, a: float, t: float) -> complex:
    r""":math:`I^{(\alpha,\beta)}\bigl(e^{-\beta t}(t-a)^{\gamma-1}\bigr)
    = \frac{\Gamma(\gamma)}{\Gamma(\gamma+\alpha)} e^{-\beta t}(t-a)^{\alpha+\gamma-1}`."""
    gexp = complex(gexp)
    if gexp.real <= 0:
        raise DomainError(f"needs Re(gamma) > 0, got {gexp}")
    p.check_integral()
    x = float(t) - float(a)
    if not x > 0:
        raise DomainError("needs t > a")
    return complex(gamma_ratio(gexp, gexp + p.alpha)) * np.exp(-p.beta * t) * x ** (p.alpha + gexp - 1)


def remainder_prefactor(p: FracParams, m: int, a: float, t: float) -> complex:
    r""":math:`\gamma((m+1)\alpha, \beta(t-a)) / (\beta^{(m+1)\alpha}\Gamma((m+1)\alpha))`."""
    if m < 0:
        raise DomainError("m must be non-negative")
    return unit_integral_closed(FracParams((m + 1) * p.alpha, p.beta), float(t) - float(a))


# }}}


# {{{ power-exponential series


def _is_nonneg_int(e: complex) -> bool:
    return e.imag == 0 and e.real >= 0 and float(e.real).is_integer()


@dataclass(frozen=True)
class PowerExpSeries:
    r""":math:`e^{-\beta(t-a)}\sum_k c_k (t-a)^{e_k}` for ``t > a``."""

    beta: complex
    a: float
    exponents: np.ndarray
    coefs: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        e = np.atleast_1d(np.asarray(self.exponents, dtype=complex))
        c = np.atleast_1d(np.asarray(self.coefs, dtype=complex))
        if e.shape != c.shape:
            raise ValueError("exponents and coefficients differ in length")
        keep = c != 0
        near = np.round(e.real)
        snap = (e.imag == 0) & (np.abs(e.real - near) < 1e-12)
        e = np.where(snap, near + 0j, e)
        object.__setattr__(self, "exponents", e[keep])
        object.__setattr__(self, "coefs", c[keep])
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "a", float(self.a))

    @classmethod
    def from_analytic(cls, fn, beta: complex, a: float, span: float, nodes: int = 64,
                      label: str = "") -> PowerExpSeries:
        """Taylor-expand ``e^{beta (t-a)} fn(t)`` about ``a`` by an FFT on the circle of radius ``2 span``.

        ``fn`` must accept complex arrays and be analytic on that disc; the
        expansion is checked against ``fn`` at real points of ``(a, a + span]``.
        """
        if not span > 0:
            raise DomainError("span must be positive")
        beta = complex(beta)
        radius = 2.0 * span
        z = a + radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)
        with np.errstate(all="ignore"):
            g = np.exp(beta * (z - a)) * np.asarray(fn(z), dtype=complex)
        if g.shape != z.shape or not np.all(np.isfinite(g)):
            raise DomainError("function cannot be evaluated on a complex disc around a")
        c = np.fft.fft(g) / nodes
        k = np.arange(3 * nodes // 4)
        scaled = c[k]
        keep = np.abs(scaled) > 1e-14 * np.max(np.abs(g))  # FFT roundoff sits near 1e-16
        pes = cls(beta, a, k[keep].astype(float), scaled[keep] / radius ** k[keep],
                  label or getattr(fn, "label", ""))
        xs = a + span * np.array([0.25, 0.5, 1.0])
        ref = np.asarray(fn(xs.astype(complex)), dtype=complex)
        if np.max(np.abs(pes(xs) - ref)) > 1e-10 * max(1.0, float(np.max(np.abs(ref)))):
            raise DomainError("function is not analytic on the expansion disc")
        return pes

    def __call__(self, t):
        return self.at_gap(np.asarray(t, dtype=float) - self.a)

    def at_gap(self, x):
        """Value at ``a + x``."""
        x = np.asarray(x, dtype=float)
        xc = x.astype(complex)[..., None]
        with np.errstate(divide="ignore", invalid="ignore"):
            s = (self.coefs * xc**self.exponents).sum(axis=-1)
        return np.exp(-self.beta * x) * s

    def leading_exponent(self) -> float:
        return float(np.min(self.exponents.real)) if self.exponents.size else np.inf

    def check_integrable(self, what: str = "function") -> None:
        if self.exponents.size and self.leading_exponent() <= -1:
            raise DomainError(f"{what} is not integrable at a: exponent {self.leading_exponent():g}")

    def integral(self, nu: complex) -> PowerExpSeries:
        nu = complex(nu)
        self.check_integrable()
        e = self.exponents
        c = self.coefs * np.asarray(gamma_ratio(e + 1.0, e + nu + 1.0))
        return PowerExpSeries(self.beta, self.a, e + nu, c, f"I[{self.label}]")

    def derivative(self, nu: complex) -> PowerExpSeries:
        nu = complex(nu)
        self.check_integrable()
        e = self.exponents
        z = e + 1.0 - nu
        # 1/Gamma at a pole: exponents built from float sums of alpha miss it by an ulp
        near = np.round(z.real)
        pole = (near <= 0) & (np.abs(z - near) < 1e-12)
        c = self.coefs * np.asarray(gamma(e + 1.0)) * np.where(pole, 0.0, np.asarray(rgamma(z)))
        return PowerExpSeries(self.beta, self.a, e - nu, c, f"D[{self.label}]")

    def limit_at_a(self) -> complex:
        """Exact value at ``a^+`` (``DomainError`` if it diverges)."""
        e = self.exponents
        if np.any(e.real < 0) or np.any((e.real == 0) & (e.imag != 0)):
            raise DomainError("the a+ limit diverges")
        return complex(self.coefs[e == 0].sum())

    def approach_exponent(self) -> float | None:
        """Smallest power of ``t - a`` in ``g(t) - g(a^+)``, counting the exponential factor."""
        e = self.exponents.real
        cands = list(e[e > 0])
        if np.any(self.exponents == 0) and self.beta != 0:
            cands.append(1.0)
        return min(cands) if cands else None

    def handle(self, b: float = np.inf) -> FunctionHandle:
        smooth = all(_is_nonneg_int(complex(e)) for e in self.exponents)
        return FunctionHandle(
            self, Interval(self.a, b), Regularity.smooth() if smooth else Regularity.integrable(),
            left_exponent=None if smooth else self.leading_exponent(), label=self.label,
            offset=lambda base, r: self.at_gap(r) if base == self.a else None,
        )


def _as_series(f, p: FracParams, a: float, t: float) -> PowerExpSeries:
    if isinstance(f, PowerExpSeries):
        if f.beta != p.beta or f.a != a:
            raise DomainError("series was built for a different beta or lower limit")
        return f
    return PowerExpSeries.from_analytic(f, p.beta, a, float(t) - a)


# }}}


# {{{ identities


def _check_unit_alpha(p: FracParams) -> None:
    if p.alpha.imag != 0 or not 0 < p.alpha.real < 1:
        raise DomainError(f"these identities are checked for real alpha in (0, 1), got {p.alpha}")


def _tempered_at(g: FunctionHandle, nu: complex, beta: complex, a: float, t: float,
                 spec: QuadratureSpec) -> complex:
    """``I^(nu,beta) g(t)``, with order 0 meaning ``g(t)`` itself."""
    if nu == 0:
        return complex(np.asarray(g(np.array([t])))[0])
    return tempered_integral(g, FracParams(nu, beta), a, t, spec).value


def boundary_value(g, p: FracParams, a: float, t: float, spec: QuadratureSpec = DEFAULT_SPEC,
                   approach: float | None = None) -> complex:
    r""":math:`\lim_{s\to a^+} I^{(1-\alpha,\beta)} g(s)` from two quadratures next to ``a``.

    The values at :math:`a+\varepsilon` and :math:`a+\varepsilon/2`,
    :math:`\varepsilon = 10^{-6}(t-a)`, are combined assuming the error
    behaves like :math:`\varepsilon^{q}`; ``approach`` is that power.  If
    ``g`` is a :class:`PowerExpSeries` ``q`` is read off its exponents.
    """
    q = FracParams(1.0 - p.alpha, p.beta)
    if isinstance(g, PowerExpSeries):
        if approach is None:
            approach = g.integral(q.alpha).approach_exponent()
        g = g.handle()
    g = as_handle(g)
    eps = LIMIT_OFFSET * (float(t) - a)
    f1 = tempered_integral(g, q, a, a + eps, spec).value
    f2 = tempered_integral(g, q, a, a + eps / 2, spec).value
    if approach is None:
        return f2
    w = 2.0**approach
    return (w * f2 - f1) / (w - 1.0)


def _signed_record(tid, inputs, measured, corr, scale, tol, lhs, base, details) -> VerificationRecord:
    """Compare ``measured`` with ``+corr`` (PropSign) and ``-corr`` (LemmaSign)."""
    r_prop = abs(measured - corr) / scale
    r_lemma = abs(measured + corr) / scale
    if r_prop <= tol and r_lemma <= tol:
        sign, resid = SignConvention.UNDETERMINED, r_prop
    elif r_prop <= tol:
        sign, resid = SignConvention.PROP_SIGN, r_prop
    elif r_lemma <= tol:
        sign, resid = SignConvention.LEMMA_SIGN, r_lemma
    else:
        sign, resid = SignConvention.UNDETERMINED, min(r_prop, r_lemma)
    s = -1.0 if sign is SignConvention.LEMMA_SIGN else 1.0
    details = dict(details, residual_prop=r_prop, residual_lemma=r_lemma, correction=corr)
    return VerificationRecord.identity(tid, inputs, lhs, base - s * corr, resid, tol,
                                       sign_convention=sign, details=details)


def _inputs(f, p, a, t, **extra) -> dict:
    return dict(alpha=p.alpha, beta=p.beta, a=a, t=t, f=getattr(f, "label", "") or "", **extra)


def inversion_check(f, p: FracParams, a: float, t: float, spec: QuadratureSpec = DEFAULT_SPEC,
                    tol: float = 1e-5) -> VerificationRecord:
    r"""Check :math:`I^{(\alpha,\beta)}D^{(\alpha,\beta)}f = f \mp e^{-\beta(t-a)}
    \frac{(t-a)^{\alpha-1}}{\Gamma(\alpha)} I^{(1-\alpha,\beta)}f(a^+)`.

    A :class:`FunctionHandle` is differentiated numerically (finite
    differences of a quadrature) and then integrated by quadrature, so both
    operators are exercised; a :class:`PowerExpSeries` is differentiated
    exactly.
    """
    _check_unit_alpha(p)
    a, t = float(a), float(t)
    if isinstance(f, PowerExpSeries):
        df = f.derivative(p.alpha).handle()
        fh = f.handle()
        limit = boundary_value(f, p, a, t, spec)
    else:
        fh = as_handle(f)
        df = tempered_derivative_handle(fh, p, a, spec)
        kappa = fh.left_exponent or 0.0
        limit = boundary_value(fh, p, a, t, spec, approach=1.0 - p.alpha.real + kappa)
    # the integrand carries finite-difference noise, so the outer rule may stop short of its tolerance
    outer = tempered_integral_batch(df, p, a, [t], spec, strict=False).report(0)
    lhs = outer.value
    ft = complex(np.asarray(fh(np.array([t])))[0])
    x = t - a
    corr = complex(np.exp(-p.beta * x) * x ** (p.alpha - 1.0) * rgamma(p.alpha)) * limit
    scale = max(1.0, abs(ft))
    return _signed_record(TheoremId.INVERSION, _inputs(f, p, a, t), ft - lhs, corr, scale, tol,
                          lhs, ft, dict(limit=limit, outer_err=outer.err_estimate))


def _check_depth(k: int, what: str) -> None:
    if k < 0:
        raise DomainError(f"{what} must be non-negative")
    if k > MAX_COMPOSITION:
        raise CostExceeded(f"{what} = {k} exceeds the composition budget ({MAX_COMPOSITION})")


def _derivative_powers(pes: PowerExpSeries, alpha: complex, count: int) -> list[PowerExpSeries]:
    out = [pes]
    for _ in range(count):
        out.append(out[-1].derivative(alpha))
    return out


def lemma_composition_check(f, p: FracParams, r: int, a: float, t: float,
                            spec: QuadratureSpec = DEFAULT_SPEC, tol: float = 1e-4) -> VerificationRecord:
    r""":math:`I^rD^rf - I^{r+1}D^{r+1}f = \mp e^{-\beta(t-a)}\frac{(t-a)^{r\alpha+\alpha-1}}{\Gamma(r\alpha+\alpha)}
    I^{(1-\alpha,\beta)}D^rf(a^+)`.

    Powers of the integral are collapsed, :math:`(I^{(\alpha,\beta)})^r = I^{(r\alpha,\beta)}`.
    """
    _check_unit_alpha(p)
    _check_depth(r, "r")
    a, t = float(a), float(t)
    pes = _as_series(f, p, a, t)
    ders = _derivative_powers(pes, p.alpha, r + 1)
    ders[r + 1].check_integrable(f"(D^(alpha,beta))^{r + 1} f")
    left = _tempered_at(ders[r].handle(), r * p.alpha, p.beta, a, t, spec)
    right = _tempered_at(ders[r + 1].handle(), (r + 1) * p.alpha, p.beta, a, t, spec)
    limit = boundary_value(ders[r], p, a, t, spec)
    x = t - a
    corr = complex(np.exp(-p.beta * x) * x ** ((r + 1) * p.alpha - 1.0) * rgamma((r + 1) * p.alpha)) * limit
    measured = left - right
    scale = max(1.0, abs(left), abs(right))
    return _signed_record(TheoremId.LEMMA_COMPOSITION, _inputs(f, p, a, t, r=r), measured, corr, scale,
                          tol, measured, 0.0, dict(limit=limit, limit_exact=ders[r].integral(1 - p.alpha)
                                                   .limit_at_a()))


def taylor_telescope_check(f, p: FracParams, m: int, a: float, t: float,
                           spec: QuadratureSpec = DEFAULT_SPEC, tol: float | None = None) -> VerificationRecord:
    r"""Telescoped Taylor identity with the remainder in integral form:

    .. math::

        f(t) - I^{((m+1)\alpha,\beta)}(D^{(\alpha,\beta)})^{m+1}f(t)
          = \pm e^{-\beta(t-a)}\sum_{r=0}^m \frac{(t-a)^{r\alpha+\alpha-1}}{\Gamma(r\alpha+\alpha)}
            I^{(1-\alpha,\beta)}(D^{(\alpha,\beta)})^r f(a^+).

    ``tol`` defaults to 1e-4 for m <= 1 and 1e-3 for m = 2.
    """
    _check_unit_alpha(p)
    _check_depth(m, "m")
    if tol is None:
        tol = 1e-4 if m <= 1 else 1e-3
    a, t = float(a), float(t)
    pes = _as_series(f, p, a, t)
    ders = _derivative_powers(pes, p.alpha, m + 1)
    ders[m + 1].check_integrable(f"(D^(alpha,beta))^{m + 1} f")
    remainder = _tempered_at(ders[m + 1].handle(), (m + 1) * p.alpha, p.beta, a, t, spec)
    ft = complex(pes(np.array([t]))[0])
    x = t - a
    terms, limits = [], []
    for r in range(m + 1):
        lim = boundary_value(ders[r], p, a, t, spec)
        w = complex(np.exp(-p.beta * x) * x ** ((r + 1) * p.alpha - 1.0) * rgamma((r + 1) * p.alpha))
        limits.append(lim)
        terms.append(w * lim)
    corr = complex(sum(terms))
    details = dict(remainder=remainder, terms=terms, limits=limits,
                   prefactor=remainder_prefactor(p, m, a, t))
    return _signed_record(TheoremId.TAYLOR_TELESCOPE, _inputs(f, p, a, t, m=m), ft - remainder, corr,
                          max(1.0, abs(ft)), tol, ft, remainder, details)


def sign_consistency(records) -> tuple[SignConvention | None, bool]:
    """The single sign convention the determined records agree on, and whether there is exactly one."""
    found = {r.sign_convention for r in records if r.sign_convention is not SignConvention.UNDETERMINED}
    if len(found) == 1:
        return next(iter(found)), True
    return None, False


# }}}


# {{{ inequalities


def _real_values(f: FunctionHandle, grid: np.ndarray, what: str) -> np.ndarray:
    v = np.asarray(f(grid))
    if np.iscomplexobj(v):
        if np.any(np.abs(v.imag) > 1e-14 * np.maximum(1.0, np.abs(v.real))):
            raise DomainError(f"{what} must be real-valued")
        v = v.real
    return v.astype(float)


def synchrony_check(f, g, grid) -> bool:
    r"""True iff :math:`(f(u)-f(v))(g(u)-g(v)) \ge 0` for every pair of grid points."""
    grid = np.asarray(grid, dtype=float)
    fv = _real_values(as_handle(f), grid, "f")
    gv = _real_values(as_handle(g), grid, "g")
    prod = (fv[:, None] - fv[None, :]) * (gv[:, None] - gv[None, :])
    noise = 1e-14 * (np.max(np.abs(fv)) + 1.0) * (np.max(np.abs(gv)) + 1.0)
    return bool(np.all(prod >= -noise))


def _ineq_params(alpha, beta) -> FracParams:
    p = FracParams(alpha, beta)
    if p.alpha.imag != 0 or p.alpha.real <= 0:
        raise DomainError(f"the inequalities need real alpha > 0, got {p.alpha}")
    if p.beta.imag != 0 or p.beta.real <= 0:
        raise DomainError(f"the inequalities need real beta > 0, got {p.beta}")
    return p


def _grid(t: float, n: int = 64) -> np.ndarray:
    return np.linspace(0.0, float(t), n)


def _product(fs: list[FunctionHandle]) -> FunctionHandle:
    def ev(x):
        out = np.ones(np.shape(x))
        for f in fs:
            out = out * f(x)
        return out

    kappas = [f.left_exponent for f in fs]
    kappa = sum(k for k in kappas if k is not None) if any(k is not None for k in kappas) else None
    smooth = all(f.regularity.kind == "smooth" for f in fs)
    return FunctionHandle(ev, Interval(max(f.domain.a for f in fs), min(f.domain.b for f in fs)),
                          Regularity.smooth() if smooth else Regularity.integrable(),
                          left_exponent=kappa, label="*".join(f.label or "f" for f in fs))


def _integral0(f, p: FracParams, t: float, spec: QuadratureSpec) -> float:
    return tempered_integral(f, p, 0.0, t, spec).value.real


def _require_synchronous(f, g, t) -> None:
    if not synchrony_check(f, g, _grid(t)):
        raise SynchronyError(f"f and g are not synchronous on [0, {t}]")


def chebyshev_slack1(f, g, p: FracParams, t: float, spec: QuadratureSpec = DEFAULT_SPEC,
                     tol: float = 1e-8) -> VerificationRecord:
    r"""Slack of :math:`I[fg] \ge \frac{\beta^\alpha\Gamma(\alpha)}{\gamma(\alpha,\beta t)} I[f]\,I[g]` (lower limit 0)."""
    p = _ineq_params(p.alpha, p.beta)
    f, g = as_handle(f), as_handle(g)
    _require_synchronous(f, g, t)
    u = unit_integral_closed(p, t).real
    ifg = _integral0(_product([f, g]), p, t, spec)
    rhs = _integral0(f, p, t, spec) * _integral0(g, p, t, spec) / u
    slack = ifg - rhs
    scale = max(abs(ifg), abs(rhs), np.finfo(float).tiny)
    inputs = dict(alpha=p.alpha, beta=p.beta, t=t, f=f.label, g=g.label)
    return VerificationRecord.inequality(TheoremId.INEQ1, inputs, ifg, rhs, slack, tol * scale,
                                         details=dict(scale=scale, unit=u))


def chebyshev_slack2(f, g, alpha1, alpha2, beta, t: float, spec: QuadratureSpec = DEFAULT_SPEC,
                     tol: float = 1e-8) -> VerificationRecord:
    r"""Slack of the two-order inequality

    .. math::

        U_2 I^{\alpha_1}[fg] + U_1 I^{\alpha_2}[fg] \ge I^{\alpha_1}[f]I^{\alpha_2}[g] + I^{\alpha_1}[g]I^{\alpha_2}[f],

    with :math:`U_i = \gamma(\alpha_i,\beta t)/(\beta^{\alpha_i}\Gamma(\alpha_i))`.
    For :math:`\alpha_1 = \alpha_2` the slack is :math:`2U_1` times the
    slack of :func:`chebyshev_slack1`.
    """
    p1, p2 = _ineq_params(alpha1, beta), _ineq_params(alpha2, beta)
    f, g = as_handle(f), as_handle(g)
    _require_synchronous(f, g, t)
    fg = _product([f, g])
    u1, u2 = unit_integral_closed(p1, t).real, unit_integral_closed(p2, t).real
    lhs = u2 * _integral0(fg, p1, t, spec) + u1 * _integral0(fg, p2, t, spec)
    i1f, i2f = _integral0(f, p1, t, spec), _integral0(f, p2, t, spec)
    i1g, i2g = _integral0(g, p1, t, spec), _integral0(g, p2, t, spec)
    rhs = i1f * i2g + i1g * i2f
    slack = lhs - rhs
    scale = max(abs(lhs), abs(rhs), np.finfo(float).tiny)
    inputs = dict(alpha1=p1.alpha, alpha2=p2.alpha, beta=p1.beta, t=t, f=f.label, g=g.label)
    return VerificationRecord.inequality(TheoremId.INEQ2, inputs, lhs, rhs, slack, tol * scale,
                                         details=dict(scale=scale, unit1=u1, unit2=u2))


def product_slack_n(fs, p: FracParams, t: float, spec: QuadratureSpec = DEFAULT_SPEC,
                    tol: float = 1e-8) -> VerificationRecord:
    r"""Slack of :math:`I[\prod f_i] \ge \bigl(\frac{\beta^\alpha\Gamma(\alpha)}{\gamma(\alpha,\beta t)}\bigr)^{n-1}\prod I[f_i]`.

    Every :math:`f_i` must be non-negative and non-decreasing on [0, t].
    """
    p = _ineq_params(p.alpha, p.beta)
    fs = [as_handle(f) for f in fs]
    if not fs:
        raise DomainError("need at least one function")
    grid = _grid(t)
    for i, f in enumerate(fs):
        v = _real_values(f, grid, f"f{i + 1}")
        if np.any(v < 0):
            raise PositivityError(f"f{i + 1} ({f.label}) takes negative values on [0, {t}]")
        if np.any(np.diff(v) < -1e-14 * (1.0 + np.max(np.abs(v)))):
            raise MonotonicityError(f"f{i + 1} ({f.label}) is not increasing on [0, {t}]")
    u = unit_integral_closed(p, t).real
    singles = [_integral0(f, p, t, spec) for f in fs]
    lhs = singles[0] if len(fs) == 1 else _integral0(_product(fs), p, t, spec)
    rhs = float(np.prod(singles)) / u ** (len(fs) - 1)
    slack = lhs - rhs
    scale = max(abs(lhs), abs(rhs), np.finfo(float).tiny)
    inputs = dict(alpha=p.alpha, beta=p.beta, t=t, n=len(fs), fs=[f.label for f in fs])
    return VerificationRecord.inequality(TheoremId.INEQ3, inputs, lhs, rhs, slack, tol * scale,
                                         details=dict(scale=scale, unit=u))


# }}}


# {{{ randomized suites


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _analytic_family(rng: np.random.Generator, a: float, order: int):
    """A random entire function vanishing to ``order`` at ``a``, with a label."""
    c = float(rng.uniform(0.2, 1.5))
    kind = int(rng.integers(4))
    base = [
        (lambda z: np.exp(c * (z - a)), f"exp({c:.3g}(t-a))"),
        (lambda z: np.cos(c * (z - a)), f"cos({c:.3g}(t-a))"),
        (lambda z: 1 + c * (z - a) + (z - a) ** 3, f"1+{c:.3g}(t-a)+(t-a)^3"),
        (lambda z: np.exp(-c * (z - a) ** 2), f"exp(-{c:.3g}(t-a)^2)"),
    ][kind]
    if order == 0:
        return base
    fn, lab = base
    return (lambda z: (z - a) ** order * fn(z)), f"(t-a)^{order}*{lab}"


def _identity_params(rng: np.random.Generator):
    alpha = float(rng.uniform(0.3, 0.9))
    beta = float(rng.uniform(0.1, 1.5))
    a = float(rng.uniform(-1.0, 1.0))
    t = a + float(rng.uniform(0.2, 1.0))
    return FracParams(alpha, beta), a, t


def _resonant_cases():
    """Instances whose boundary correction is O(1), so they fix the sign convention."""
    return [
        (np.exp, FracParams(0.5, 0.5), 0.0, 0.4, "exp"),
        (lambda z: 1 + 0 * z, FracParams(0.5, 1.0), 0.0, 1.0, "1"),
        (lambda z: np.cos(z), FracParams(1 / 3, 0.7), 0.0, 0.6, "cos"),
    ]


def inversion_suite(seed: int = 0, count: int = 10, spec: QuadratureSpec = DEFAULT_SPEC):
    rng = _rng(seed)
    out = []
    for _ in range(count):
        p, a, t = _identity_params(rng)
        fn, lab = _analytic_family(rng, a, 0)
        fn.label = lab
        out.append(inversion_check(PowerExpSeries.from_analytic(fn, p.beta, a, t - a, label=lab), p, a, t, spec))
    return out


def lemma_suite(seed: int = 0, count: int = 10, spec: QuadratureSpec = DEFAULT_SPEC):
    rng = _rng(seed)
    out = []
    for i in range(count):
        r = i % (MAX_COMPOSITION + 1)
        p, a, t = _identity_params(rng)
        fn, lab = _analytic_family(rng, a, r + 1)
        out.append(lemma_composition_check(PowerExpSeries.from_analytic(fn, p.beta, a, t - a, label=lab),
                                           p, r, a, t, spec))
    for fn, p, a, t, lab in _resonant_cases():
        pes = PowerExpSeries.from_analytic(fn, p.beta, a, t - a, label=lab)
        r = 2 if abs(p.alpha.real - 1 / 3) < 1e-12 else 1
        out.append(lemma_composition_check(pes, p, r, a, t, spec))
    return out


def taylor_suite(seed: int = 0, count: int = 10, spec: QuadratureSpec = DEFAULT_SPEC):
    """``count`` random instances cycling m = 0, 1, 2, then the resonant ones."""
    rng = _rng(seed)
    out = []
    for i in range(count):
        m = i % (MAX_COMPOSITION + 1)
        p, a, t = _identity_params(rng)
        fn, lab = _analytic_family(rng, a, m)
        out.append(taylor_telescope_check(PowerExpSeries.from_analytic(fn, p.beta, a, t - a, label=lab),
                                          p, m, a, t, spec))
    for fn, p, a, t, lab in _resonant_cases():
        pes = PowerExpSeries.from_analytic(fn, p.beta, a, t - a, label=lab)
        out.append(taylor_telescope_check(pes, p, 2, a, t, spec))
    return out


def _monotone_family(rng: np.random.Generator, increasing: bool) -> FunctionHandle:
    """A random non-negative monotone function on [0, inf)."""
    c = float(rng.uniform(0.2, 2.0))
    kind = int(rng.integers(4))
    if increasing:
        fn, lab, kappa = [
            (lambda x: x**c, f"t^{c:.3g}", c),
            (lambda x: np.exp(c * x), f"exp({c:.3g}t)", None),
            (lambda x: np.log1p(c * x), f"log(1+{c:.3g}t)", None),
            (lambda x: c * x / (1 + x), f"{c:.3g}t/(1+t)", None),
        ][kind]
    else:
        fn, lab, kappa = [
            (lambda x: np.exp(-c * x), f"exp(-{c:.3g}t)", None),
            (lambda x: 1 / (1 + c * x), f"1/(1+{c:.3g}t)", None),
            (lambda x: 3 - x**c, f"3-t^{c:.3g}", c),
            (lambda x: 1 / (1 + x) ** c, f"(1+t)^-{c:.3g}", None),
        ][kind]
    smooth = kappa is None or float(kappa).is_integer()
    return FunctionHandle(lambda x: fn(np.asarray(x, dtype=float)), Interval(0.0, np.inf),
                          Regularity.smooth() if smooth else Regularity.integrable(),
                          left_exponent=None if smooth else kappa, label=lab)


def _ineq_draw(rng: np.random.Generator):
    alpha = float(rng.uniform(0.3, 2.0))
    beta = float(rng.uniform(0.1, 2.0))
    t = float(rng.uniform(0.1, 2.0))
    return alpha, beta, t


def ineq1_suite(seed: int = 0, count: int = 70, spec: QuadratureSpec = DEFAULT_SPEC):
    rng = _rng(seed)
    out = []
    for _ in range(count):
        alpha, beta, t = _ineq_draw(rng)
        inc = bool(rng.integers(2))
        out.append(chebyshev_slack1(_monotone_family(rng, inc), _monotone_family(rng, inc),
                                    FracParams(alpha, beta), t, spec))
    return out


def ineq2_suite(seed: int = 0, count: int = 65, spec: QuadratureSpec = DEFAULT_SPEC):
    rng = _rng(seed)
    out = []
    for _ in range(count):
        alpha, beta, t = _ineq_draw(rng)
        alpha2 = float(rng.uniform(0.3, 2.0))
        inc = bool(rng.integers(2))
        out.append(chebyshev_slack2(_monotone_family(rng, inc), _monotone_family(rng, inc),
                                    alpha, alpha2, beta, t, spec))
    return out


def ineq3_suite(seed: int = 0, count: int = 65, spec: QuadratureSpec = DEFAULT_SPEC):
    rng = _rng(seed)
    out = []
    for _ in range(count):
        alpha, beta, t = _ineq_draw(rng)
        n = int(rng.integers(1, 5))
        fs = [_monotone_family(rng, True) for _ in range(n)]
        out.append(product_slack_n(fs, FracParams(alpha, beta), t, spec))
    return out


SUITES = {
    "inversion": inversion_suite,
    "lemma": lemma_suite,
    "taylor": taylor_suite,
    "ineq1": ineq1_suite,
    "ineq2": ineq2_suite,
    "ineq3": ineq3_suite,
}


def run_suite(name: str, seed: int = 0, count: int | None = None,
              spec: QuadratureSpec = DEFAULT_SPEC) -> list[VerificationRecord]:
    """Run a named suite; names are the keys of :data:`SUITES` or ``all``."""
    if name == "all":
        return [r for key in SUITES for r in run_suite(key, seed, count, spec)]
    try:
        fn = SUITES[name]
    except KeyError:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all") from None
    return fn(seed, spec=spec) if count is None else fn(seed, count, spec)


# }}}
