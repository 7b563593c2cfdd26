r"""Special functions with complex parameters, vectorised over numpy arrays.

Only what the operators and closed forms need is here: complete and
incomplete gammas, the hypergeometric series :math:`{}_1F_1`, :math:`{}_2F_1`,
Appell :math:`F_1`, the three-parameter Mittag-Leffler function and the
Kobayashi gamma integral.

Every series stops once two consecutive terms are both below
``tail_tol * |partial sum|``; a single small term is not trusted because
hypergeometric terms can vanish at isolated indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonConvergent, PoleError
from .quadrature import DEFAULT_SPEC, QuadratureSpec, quad_batch, semi_infinite_batch


@dataclass(frozen=True)
class SeriesSpec:
    """Truncation control for every power series in the package."""

    max_terms: int = 500
    tail_tol: float = 1e-16

    def __post_init__(self) -> None:
        if self.max_terms < 16:
            raise ValueError("max_terms must be at least 16")
        if not self.tail_tol > 0:
            raise ValueError("tail_tol must be positive")


DEFAULT_SERIES = SeriesSpec()

EULER_GAMMA = 0.5772156649015329


def _c(z) -> np.ndarray:
    return np.asarray(z, dtype=complex)


def _out(z):
    """Return a Python complex for 0-d input, an array otherwise."""
    z = np.asarray(z)
    return complex(z) if z.ndim == 0 else z


# {{{ gamma family

_LANCZOS_G = 7.0
_LANCZOS = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])


def _is_pole(z: np.ndarray) -> np.ndarray:
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def _lanczos_log(z: np.ndarray) -> np.ndarray:
    """log Gamma(z) for Re(z) >= 0.5 (principal log of each factor)."""
    zm = z - 1.0
    acc = np.full(z.shape, _LANCZOS[0], dtype=complex)
    for k in range(1, _LANCZOS.size):
        acc = acc + _LANCZOS[k] / (zm + k)
    t = zm + _LANCZOS_G + 0.5
    return 0.5 * math.log(2 * math.pi) + (zm + 0.5) * np.log(t) - t + np.log(acc)


def loggamma(z):
    """A logarithm of Gamma(z) (not necessarily the principal branch).

    Meant for ``exp(loggamma(a) - loggamma(b))`` style ratios where the
    individual gammas would overflow.
    """
    z = _c(z)
    if np.any(_is_pole(z)):
        raise PoleError("loggamma has poles at non-positive integers")
    out = np.empty(z.shape, dtype=complex)
    right = z.real >= 0.5
    out[right] = _lanczos_log(z[right])
    zl = z[~right]
    out[~right] = math.log(math.pi) - np.log(np.sin(np.pi * zl)) - _lanczos_log(1.0 - zl)
    return _out(out)


def _gamma_arr(z: np.ndarray) -> np.ndarray:
    out = np.empty(z.shape, dtype=complex)
    right = z.real >= 0.5
    zr = z[right] - 1.0
    acc = np.full(zr.shape, _LANCZOS[0], dtype=complex)
    for k in range(1, _LANCZOS.size):
        acc = acc + _LANCZOS[k] / (zr + k)
    t = zr + _LANCZOS_G + 0.5
    big = np.abs(zr) > 140
    direct = np.empty(zr.shape, dtype=complex)
    ok = ~big
    direct[ok] = math.sqrt(2 * math.pi) * t[ok] ** (zr[ok] + 0.5) * np.exp(-t[ok]) * acc[ok]
    if np.any(big):
        direct[big] = np.exp(_lanczos_log(zr[big] + 1.0))
    out[right] = direct
    zl = z[~right]
    if zl.size:
        out[~right] = np.pi / (np.sin(np.pi * zl) * _gamma_arr(1.0 - zl))
    return out


def gamma(z):
    """Gamma function for complex arguments (Lanczos, g = 7, with reflection)."""
    z = _c(z)
    if np.any(_is_pole(z)):
        raise PoleError(f"gamma has a pole at {z[_is_pole(z)].ravel()[0].real:g}")
    out = _gamma_arr(np.atleast_1d(z)).reshape(z.shape)
    if z.ndim == 0:
        v = complex(out)
        return v
    return out


def rgamma(z):
    """1/Gamma(z), entire: exactly zero at the poles of Gamma."""
    z = _c(z)
    zz = np.atleast_1d(z)
    out = np.zeros(zz.shape, dtype=complex)
    ok = ~_is_pole(zz)
    if np.any(ok):
        zo = zz[ok]
        # avoid overflow for large arguments
        big = zo.real > 150
        vals = np.empty(zo.shape, dtype=complex)
        if np.any(~big):
            vals[~big] = 1.0 / _gamma_arr(zo[~big])
        if np.any(big):
            vals[big] = np.exp(-_lanczos_log(zo[big]))
        out[ok] = vals
    return _out(out.reshape(z.shape))


def gamma_ratio(a, b):
    """Gamma(a)/Gamma(b) without intermediate overflow."""
    a, b = np.broadcast_arrays(_c(a), _c(b))
    if np.any(_is_pole(a)):
        raise PoleError("gamma ratio numerator at a pole")
    small = (np.abs(a) < 100) & (np.abs(b) < 100)
    out = np.empty(a.shape, dtype=complex)
    out[small] = np.asarray(gamma(a[small])) * np.asarray(rgamma(b[small]))
    if np.any(~small):
        out[~small] = np.exp(np.asarray(loggamma(a[~small])) - np.asarray(loggamma(b[~small])))
    return _out(out)


def _log1p_small(u: np.ndarray) -> np.ndarray:
    """log(1 + u) for complex u, accurate also when |u| is tiny."""
    ur, ui = u.real, u.imag
    return 0.5 * np.log1p(ur * (2.0 + ur) + ui * ui) + 1j * np.arctan2(ui, 1.0 + ur)


def shifted_gamma_ratio(z, a, b):
    """Gamma(z + a)/Gamma(z + b), stable when z is large.

    For |z| >= 50 the Stirling forms are subtracted term by term (with
    ``log1p`` for the shifts), so the O(z log z) parts cancel exactly
    instead of in floating point.
    """
    z, a, b = np.broadcast_arrays(_c(z), _c(a), _c(b))
    out = np.empty(z.shape, dtype=complex)
    big = (np.abs(z) >= 50) & (z.real > 0)
    if np.any(~big):
        out[~big] = np.asarray(gamma_ratio(z[~big] + a[~big], z[~big] + b[~big]))
    if np.any(big):
        zb, ab, bb = z[big], a[big], b[big]
        la, lb = _log1p_small(ab / zb), _log1p_small(bb / zb)

        def stirling(w):
            u = 1.0 / w
            u2 = u * u
            return (1.0 / 12 - u2 * (1.0 / 360 - u2 / 1260)) * u

        lr = ((ab - bb) * np.log(zb) + (zb + ab - 0.5) * la - (zb + bb - 0.5) * lb - (ab - bb)
              + stirling(zb + ab) - stirling(zb + bb))
        out[big] = np.exp(lr)
    return _out(out)


def pochhammer(a, m: int):
    """Rising factorial (a)_m by direct product."""
    a = _c(a)
    out = np.ones(a.shape, dtype=complex)
    for k in range(m):
        out = out * (a + k)
    return _out(out)


# }}}


# {{{ incomplete gammas

_CF_MAX = 5000
_TINY = 1e-300


def _check_finite(v: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(v)):
        raise NonConvergent(f"{what} produced a non-finite value")


def _lower_series_scaled(a: np.ndarray, x: np.ndarray, max_terms: int) -> np.ndarray:
    """Sum of x^n/(a)_(n+1); gamma(a, x) = x^a e^-x times this."""
    term = 1.0 / a
    total = term.copy()
    small_run = np.zeros(a.shape, dtype=int)
    for n in range(1, max_terms):
        term = term * x / (a + n)
        total = total + term
        small = np.abs(term) <= 1e-17 * np.abs(total)
        small_run = np.where(small, small_run + 1, 0)
        if np.all(small_run >= 2):
            return total
    raise NonConvergent(f"incomplete gamma series needed more than {max_terms} terms")


def _upper_cf_scaled(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Continued fraction (modified Lentz) for e^x x^-a Gamma(a, x)."""
    b = x + 1.0 - a
    c = np.full(a.shape, 1.0 / _TINY, dtype=complex)
    d = 1.0 / np.where(np.abs(b) < _TINY, _TINY, b)
    h = d.copy()
    done = np.zeros(a.shape, dtype=bool)
    for i in range(1, _CF_MAX):
        an = -i * (i - a)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = b + an / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        delta = d * c
        h = np.where(done, h, h * delta)
        done |= np.abs(delta - 1.0) < 1e-16
        if np.all(done):
            return h
    raise NonConvergent("incomplete gamma continued fraction did not converge")


def _e1_small(x: np.ndarray) -> np.ndarray:
    """Exponential integral E1 by its power series (|x| < 1)."""
    term = np.ones(x.shape, dtype=complex)
    total = np.zeros(x.shape, dtype=complex)
    for k in range(1, 60):
        term = term * (-x) / k
        total = total + term / k
    return -EULER_GAMMA - np.log(x) - total


def _upper_scaled_arr(a: np.ndarray, x: np.ndarray, max_terms: int) -> np.ndarray:
    """e^x Gamma(a, x) on arrays; Re(x) > 0 is assumed checked."""
    out = np.empty(a.shape, dtype=complex)
    ax = np.abs(x)
    nonpos_int = _is_pole(a)
    use_cf = (ax > np.abs(a) + 1.0) | ((a.real <= 0) & (ax >= 1.0))
    if np.any(use_cf):
        aa, xx = a[use_cf], x[use_cf]
        out[use_cf] = xx**aa * _upper_cf_scaled(aa, xx)
    recur = nonpos_int & ~use_cf
    if np.any(recur):
        # E1 series, then Gamma(a-1,x) = (Gamma(a,x) - x^(a-1) e^-x)/(a-1) downwards
        xx = x[recur]
        target = a[recur].real.astype(int)
        cur = _e1_small(xx) * np.exp(xx)
        for k in range(0, int(-target.min())):
            ak = -k
            step = (cur - xx ** (ak - 1.0)) / (ak - 1.0)
            cur = np.where(target <= ak - 1, step, cur)
        out[recur] = cur
    rest = ~use_cf & ~nonpos_int
    if np.any(rest):
        aa, xx = a[rest], x[rest]
        low = xx**aa * _lower_series_scaled(aa, xx, max_terms)
        out[rest] = _gamma_arr(aa) * np.exp(xx) - low
    return out


def _prep(a, x):
    a, x = np.broadcast_arrays(_c(a), _c(x))
    return np.atleast_1d(a).copy(), np.atleast_1d(x).copy(), a.shape


def lower_incomplete_gamma(a, x, spec: SeriesSpec = DEFAULT_SERIES):
    r""":math:`\gamma(a, x) = \int_0^x t^{a-1} e^{-t}\,dt` for Re(a) > 0, Re(x) >= 0."""
    a, x, shape = _prep(a, x)
    if np.any(a.real <= 0):
        raise DomainError("lower incomplete gamma needs Re(a) > 0")
    if np.any(x.real < 0):
        raise DomainError("lower incomplete gamma needs Re(x) >= 0")
    out = np.zeros(a.shape, dtype=complex)
    nz = x != 0
    series = nz & (np.abs(x) <= np.abs(a) + 1.0)
    if np.any(series):
        aa, xx = a[series], x[series]
        out[series] = xx**aa * np.exp(-xx) * _lower_series_scaled(aa, xx, spec.max_terms)
    comp = nz & ~series
    if np.any(comp):
        aa, xx = a[comp], x[comp]
        out[comp] = _gamma_arr(aa) - np.exp(-xx) * _upper_scaled_arr(aa, xx, spec.max_terms)
    _check_finite(out, "lower incomplete gamma")
    return _out(out.reshape(shape))


def gamma_star(a, x, spec: SeriesSpec = DEFAULT_SERIES):
    r"""Tricomi's :math:`\gamma^*(a, x) = x^{-a}\gamma(a, x)/\Gamma(a)`, entire in x.

    Equals :math:`1/\Gamma(a+1)` at x = 0, so expressions like
    :math:`t^\alpha\gamma^*(\alpha, \beta t)` pass smoothly through beta = 0.
    """
    a, x, shape = _prep(a, x)
    if np.any(a.real <= 0):
        raise DomainError("gamma_star needs Re(a) > 0")
    if np.any(x.real < 0):
        raise DomainError("gamma_star needs Re(x) >= 0")
    out = np.empty(a.shape, dtype=complex)
    series = np.abs(x) <= np.abs(a) + 1.0
    if np.any(series):
        aa, xx = a[series], x[series]
        out[series] = np.exp(-xx) * _lower_series_scaled(aa, xx, spec.max_terms) * np.asarray(rgamma(aa))
    if np.any(~series):
        aa, xx = a[~series], x[~series]
        low = np.asarray(lower_incomplete_gamma(aa, xx, spec))
        out[~series] = low * xx ** (-aa) * np.asarray(rgamma(aa))
    _check_finite(out, "gamma_star")
    return _out(out.reshape(shape))


def upper_incomplete_gamma(a, x, spec: SeriesSpec = DEFAULT_SERIES):
    r""":math:`\Gamma(a, x) = \int_x^\infty t^{a-1} e^{-t}\,dt` for Re(x) > 0, any a."""
    a, x, shape = _prep(a, x)
    if np.any(x.real <= 0):
        raise DomainError("upper incomplete gamma needs Re(x) > 0")
    out = np.exp(-x) * _upper_scaled_arr(a, x, spec.max_terms)
    _check_finite(out, "upper incomplete gamma")
    return _out(out.reshape(shape))


def upper_incomplete_gamma_scaled(a, x, spec: SeriesSpec = DEFAULT_SERIES):
    r""":math:`e^{x}\Gamma(a, x)`, which stays bounded where :math:`e^{x}` alone overflows."""
    a, x, shape = _prep(a, x)
    if np.any(x.real <= 0):
        raise DomainError("upper incomplete gamma needs Re(x) > 0")
    out = _upper_scaled_arr(a, x, spec.max_terms)
    _check_finite(out, "scaled upper incomplete gamma")
    return _out(out.reshape(shape))


# }}}


# {{{ hypergeometric series


def _require_not_pole(c, name: str) -> None:
    if np.any(_is_pole(_c(c))):
        raise PoleError(f"{name} must not be a non-positive integer")


def _sum_terms(first, ratio, spec: SeriesSpec, what: str):
    """Sum a series given its first term and a term-ratio callable ``ratio(m)``.

    ``ratio(m)`` returns term[m+1]/term[m]; the two-term rule is applied
    elementwise and the loop ends when every element has stopped.
    """
    term = np.array(first, dtype=complex)
    total = term.copy()
    run = np.zeros(term.shape, dtype=int)
    for m in range(spec.max_terms - 1):
        term = term * ratio(m)
        total = total + term
        small = np.abs(term) <= spec.tail_tol * np.abs(total)
        run = np.where(small, run + 1, 0)
        if np.all(run >= 2):
            return total, m + 2
    raise NonConvergent(f"{what} series not converged after {spec.max_terms} terms")


def hyp1f1_terms(a, c, z, n: int) -> np.ndarray:
    """First ``n`` terms (a)_m/(c)_m z^m/m! (for tests and diagnostics)."""
    a, c, z = complex(a), complex(c), complex(z)
    out = np.empty(n, dtype=complex)
    out[0] = 1.0
    for m in range(n - 1):
        out[m + 1] = out[m] * (a + m) / (c + m) * z / (m + 1)
    return out


def hyp1f1(a, c, z, spec: SeriesSpec = DEFAULT_SERIES):
    r"""Kummer's confluent function :math:`{}_1F_1(a; c; z)`.

    For Re(z) < 0 the series of :math:`e^{z}{}_1F_1(c-a; c; -z)` is summed
    instead; it has the same value and far less cancellation.
    """
    _require_not_pole(c, "c")
    a, c, z = np.broadcast_arrays(_c(a), _c(c), _c(z))
    scalar = z.ndim == 0
    a, c, z = (np.atleast_1d(v) for v in (a, c, z))
    shape = z.shape
    flip = z.real < 0
    aa = np.where(flip, c - a, a)
    zz = np.where(flip, -z, z)
    total, _ = _sum_terms(np.ones(shape), lambda m: (aa + m) / (c + m) * zz / (m + 1), spec, "1F1")
    total = np.where(flip, np.exp(z) * total, total)
    _check_finite(total, "1F1")
    return complex(total[0]) if scalar else total


def hyp2f1_terms(a, b, c, z, n: int) -> np.ndarray:
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    out = np.empty(n, dtype=complex)
    out[0] = 1.0
    for m in range(n - 1):
        out[m + 1] = out[m] * (a + m) * (b + m) / ((c + m) * (m + 1)) * z
    return out


def hyp2f1(a, b, c, z, spec: SeriesSpec = DEFAULT_SERIES):
    r"""Gauss series :math:`{}_2F_1(a, b; c; z)`, restricted to :math:`|z| < 1`."""
    _require_not_pole(c, "c")
    a, b, c, z = np.broadcast_arrays(_c(a), _c(b), _c(c), _c(z))
    scalar = z.ndim == 0
    a, b, c, z = (np.atleast_1d(v) for v in (a, b, c, z))
    if np.any(np.abs(z) >= 1):
        raise DomainError("2F1 series is only implemented for |z| < 1")
    total, _ = _sum_terms(
        np.ones(z.shape), lambda m: (a + m) * (b + m) / ((c + m) * (m + 1)) * z, spec, "2F1"
    )
    return complex(total[0]) if scalar else total


def appell_f1_terms(a, b1, b2, c, x, y, n: int) -> np.ndarray:
    """Matrix of terms T[m, k] of the F1 double series for m, k < n."""
    a, b1, b2, c, x, y = (complex(v) for v in (a, b1, b2, c, x, y))
    p1 = np.ones(n, dtype=complex)
    p2 = np.ones(n, dtype=complex)
    q = np.ones(2 * n, dtype=complex)
    for m in range(n - 1):
        p1[m + 1] = p1[m] * (b1 + m) * x / (m + 1)
        p2[m + 1] = p2[m] * (b2 + m) * y / (m + 1)
    for k in range(2 * n - 1):
        q[k + 1] = q[k] * (a + k) / (c + k)
    idx = np.add.outer(np.arange(n), np.arange(n))
    return q[idx] * np.outer(p1, p2)


def appell_f1(a, b1, b2, c, x, y, spec: SeriesSpec = DEFAULT_SERIES) -> complex:
    r"""Appell's :math:`F_1(a; b_1, b_2; c; x, y)` summed along anti-diagonals.

    Stops when two consecutive anti-diagonals have every term below
    ``tail_tol * |partial sum|``.
    """
    _require_not_pole(c, "c")
    a, b1, b2, c, x, y = (complex(v) for v in (a, b1, b2, c, x, y))
    if abs(x) >= 1 or abs(y) >= 1:
        raise DomainError("Appell F1 series needs |x| < 1 and |y| < 1")
    n = spec.max_terms
    p1 = np.ones(n, dtype=complex)
    p2 = np.ones(n, dtype=complex)
    for m in range(n - 1):
        p1[m + 1] = p1[m] * (b1 + m) * x / (m + 1)
        p2[m + 1] = p2[m] * (b2 + m) * y / (m + 1)
    total = 0j
    q = 1.0 + 0j
    run = 0
    for N in range(n):
        diag = q * p1[: N + 1] * p2[N::-1]
        total += diag.sum()
        small = np.max(np.abs(diag)) <= spec.tail_tol * abs(total)
        run = run + 1 if small else 0
        if run >= 2:
            return total
        q *= (a + N) / (c + N)
    raise NonConvergent(f"Appell F1 not converged after {n} anti-diagonals")


def mittag_leffler3_terms(mu, nu, gp, z, n: int) -> np.ndarray:
    k = np.arange(n)
    poch = np.ones(n, dtype=complex)
    for j in range(n - 1):
        poch[j + 1] = poch[j] * (complex(gp) + j) / (j + 1)
    return poch * np.asarray(rgamma(complex(mu) * k + complex(nu))) * complex(z) ** k


def mittag_leffler3(mu, nu, gp, z, spec: SeriesSpec = DEFAULT_SERIES):
    r"""Prabhakar function :math:`E^{\gamma}_{\mu,\nu}(z) = \sum_k \frac{(\gamma)_k}{k!\,\Gamma(\mu k+\nu)} z^k`.

    ``z`` may be an array.  Terms use ``1/Gamma`` so they never overflow.
    """
    mu, nu, gp = complex(mu), complex(nu), complex(gp)
    if mu.real <= 0 or nu.real <= 0:
        raise DomainError("Mittag-Leffler series needs Re(mu) > 0 and Re(nu) > 0")
    z = _c(z)
    zz = np.atleast_1d(z).ravel()
    n = spec.max_terms
    total = np.zeros(zz.shape, dtype=complex)
    poch = 1.0 + 0j
    zk = np.ones(zz.shape, dtype=complex)
    run = np.zeros(zz.shape, dtype=int)
    # 1/Gamma(mu k + nu) for all k at once
    rg = np.asarray(rgamma(mu * np.arange(n) + nu)).ravel()
    for k in range(n):
        term = poch * rg[k] * zk
        total = total + term
        small = np.abs(term) <= spec.tail_tol * np.abs(total)
        # rgamma vanishing at isolated k must not stop the sum early
        run = np.where(small & (k > 0), run + 1, 0)
        if np.all(run >= 2):
            out = total.reshape(z.shape)
            return _out(out)
        poch = poch * (gp + k) / (k + 1)
        zk = zk * zz
    raise NonConvergent(f"Mittag-Leffler series not converged after {n} terms")


# }}}


# {{{ Kobayashi gamma

_KOBAYASHI_CHUNK = 128


def kobayashi_gamma(m, u, v, spec: QuadratureSpec = DEFAULT_SPEC, strict: bool = True):
    r""":math:`\Gamma_m(u, v) = \int_0^\infty t^{u-1} e^{-t} (t+v)^{-m}\,dt`.

    ``v`` may be an array (evaluated as one batch).  The range is split at
    ``L = max(1, |v|)``: the head uses graded nodes for :math:`t^{u-1}` and
    the tail a semi-infinite rule with unit decay.
    """
    m, u = complex(m), complex(u)
    v = _c(v)
    vv = np.atleast_1d(v).ravel()
    if u.real <= 0:
        raise DomainError("Kobayashi gamma needs Re(u) > 0")
    if np.any(vv.real < 0):
        raise DomainError("Kobayashi gamma needs Re(v) >= 0")
    zero = vv == 0
    if np.any(zero) and (u - m).real <= 0:
        raise DomainError("Kobayashi gamma at v = 0 needs Re(u - m) > 0")
    if np.all(zero):
        out = np.full(vv.shape, gamma(u - m), dtype=complex)
        return _out(out.reshape(v.shape))
    if np.any((vv.real == 0) & ~zero):
        raise DomainError("Kobayashi gamma needs Re(v) > 0 unless v = 0")
    if vv.size > _KOBAYASHI_CHUNK:
        parts = [
            np.atleast_1d(kobayashi_gamma(m, u, vv[i:i + _KOBAYASHI_CHUNK], spec, strict))
            for i in range(0, vv.size, _KOBAYASHI_CHUNK)
        ]
        return _out(np.concatenate(parts).reshape(v.shape))
    L = np.maximum(1.0, np.abs(vv))
    sigma = u.real - 1.0

    hv = ~zero
    vh = vv[hv][:, None]

    def head(s, _r):
        w = np.exp(1j * u.imag * np.log(s)) if u.imag else 1.0
        return np.power(s, sigma) * w * np.exp(-s) * (s + vh) ** (-m)

    out = np.empty(vv.shape, dtype=complex)
    if np.any(zero):
        out[zero] = gamma(u - m)
    # graded even when sigma = 0: (s + v)^-m has a layer of width |v| at 0
    res_h = quad_batch(head, np.zeros(hv.sum()), L[hv], spec, sigma_left=sigma)

    def tail(x):
        t = L[hv][:, None] + x
        return t ** (u - 1.0) * np.exp(-t) * (t + vh) ** (-m)

    res_t = semi_infinite_batch(tail, 1.0, spec, batch=int(hv.sum()))
    if strict and not (res_h.converged and res_t.converged):
        raise NonConvergent("Kobayashi gamma quadrature did not converge")
    out[hv] = res_h.values + res_t.values
    return _out(out.reshape(v.shape))


# }}}
