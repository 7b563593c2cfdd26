r"""Deterministic quadrature and finite-difference engines.

Everything here is built from composite Gauss-Legendre panels.  Endpoint
singularities of the form :math:`s^\sigma` are removed with the substitution
:math:`s = \tau^p`, :math:`p = \lceil 1/(1+\sigma) \rceil`, after which the
panels are graded geometrically (ratio 1/4) towards the endpoint so that any
residual fractional power is resolved to double precision.

Uniform panels are checked by merging every second pair into one; graded
panels, which never refine, by a rule with three quarters of the nodes.

Integrands for finite intervals are vectorised and receive the distances
of the nodes from both ends, two arrays of shape ``(B, N)`` (``B``
independent integrals, ``N`` nodes each), so that a singular factor at
either end can be evaluated without cancellation.  Semi-infinite
integrands receive the nodes themselves.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import CostExceeded, DomainError, NonConvergent

_EPS = np.finfo(float).eps

#: number of geometric levels in a graded segment (4**-29 ~ 3.5e-18)
GRADING_LEVELS = 29
GRADING_RATIO = 0.25


@dataclass(frozen=True)
class QuadratureSpec:
    """Effort budget and tolerances for one quadrature."""

    nodes_per_panel: int = 32
    max_panels: int = 1024
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    semi_infinite_cutoff_growth: float = 2.0

    def __post_init__(self) -> None:
        if self.nodes_per_panel < 1 or self.max_panels < 1:
            raise ValueError("nodes_per_panel and max_panels must be positive")
        if self.rel_tol < 100 * _EPS or self.abs_tol < 100 * _EPS:
            raise ValueError("tolerances must be at least 100 * machine epsilon")
        if not self.semi_infinite_cutoff_growth > 1:
            raise ValueError("semi_infinite_cutoff_growth must exceed 1")

    def tolerance(self, value) -> np.ndarray:
        return np.maximum(self.abs_tol, self.rel_tol * np.abs(value))


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class EvalReport:
    """A computed value with an error estimate and the effort spent on it."""

    value: complex
    err_estimate: float
    effort: int
    converged: bool

    def __complex__(self) -> complex:
        return complex(self.value)

    @property
    def real(self) -> float:
        return float(np.real(self.value))

    @property
    def imag(self) -> float:
        return float(np.imag(self.value))


@dataclass(frozen=True)
class BatchResult:
    """Vector counterpart of :class:`EvalReport` used internally."""

    values: np.ndarray
    errors: np.ndarray
    effort: int
    converged: bool

    def report(self, i: int = 0) -> EvalReport:
        v = complex(self.values.ravel()[i])
        return EvalReport(v, float(self.errors.ravel()[i]), int(self.effort), bool(self.converged))


# {{{ rules


@lru_cache(maxsize=None)
def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


@lru_cache(maxsize=64)
def gauss_jacobi_unit(n: int, c: float) -> tuple[np.ndarray, np.ndarray]:
    r"""Nodes and weights for :math:`\int_0^1 w^c g(w)\,dw`, ``c > -1`` (Golub-Welsch)."""
    if not c > -1:
        raise DomainError(f"Jacobi weight exponent must exceed -1, got {c}")
    # Jacobi polynomials P^(0, c) on [-1, 1]
    k = np.arange(n, dtype=float)
    s2 = 2.0 * k + c
    with np.errstate(divide="ignore", invalid="ignore"):
        diag = np.where(s2 + 2.0 == 0, 0.0, c * c / (s2 * (s2 + 2.0)))
    diag[0] = c / (c + 2.0)
    k1 = k[1:]
    s1 = 2.0 * k1 + c
    off = np.sqrt(4.0 * k1 * k1 * (k1 + c) ** 2 / (s1 * s1 * (s1 + 1.0) * (s1 - 1.0)))
    z, v = np.linalg.eigh(np.diag(diag) + np.diag(off, 1) + np.diag(off, -1))
    mu0 = 2.0 ** (c + 1.0) / (c + 1.0)
    w = mu0 * v[0] ** 2
    return (z + 1.0) / 2.0, w / 2.0 ** (c + 1.0)


def grading_power(sigma: float) -> int:
    """Smallest integer ``p`` with ``p * (1 + sigma) >= 1``."""
    if not sigma > -1:
        raise DomainError(f"endpoint exponent must exceed -1, got {sigma}")
    return max(1, math.ceil(1.0 / (1.0 + sigma) - 1e-12))


# A panel is (lo, hi, p, side) in substituted coordinates: the physical
# node is x = tau**p (side=+1, measured from 0) or x = L - tau**p (side=-1).


def _graded_panels(length: float, sigma: float, side: int, end: float) -> list[tuple]:
    p = grading_power(sigma)
    tmax = length ** (1.0 / p)
    cuts = [0.0] + [tmax * GRADING_RATIO**k for k in range(GRADING_LEVELS, -1, -1)]
    return [(lo, hi, p, side, end) for lo, hi in zip(cuts[:-1], cuts[1:])]


def _panels_to_rule(
    panels: list[tuple], n: int, graded_n: int | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes as (distance from 0, distance from 1) plus weights.

    ``graded_n`` overrides the node count on graded panels.
    """
    dls, drs, ws = [], [], []
    for lo, hi, p, side, end in panels:
        gx, gw = _gauss_legendre(graded_n if (graded_n and p != 1) else n)
        tau = lo + (hi - lo) * gx
        wt = (hi - lo) * gw
        if p == 1:
            x, jac = tau, wt
        else:
            x, jac = tau**p, wt * p * tau ** (p - 1)
        if side > 0:
            dl = end + x
            dr = 1.0 - dl
        else:
            dr = (1.0 - end) + x
            dl = 1.0 - dr
        dls.append(dl)
        drs.append(dr)
        ws.append(jac)
    tiny = np.finfo(float).tiny
    return (
        np.maximum(np.concatenate(dls), tiny),
        np.maximum(np.concatenate(drs), tiny),
        np.concatenate(ws),
    )


def _merge_pairs(panels: list[tuple]) -> list[tuple]:
    out = []
    i = 0
    while i < len(panels):
        a = panels[i]
        b = panels[i + 1] if i + 1 < len(panels) else None
        if b is not None and a[2:] == b[2:] and (a[1] == b[0] or a[0] == b[1]):
            out.append((min(a[0], b[0]), max(a[1], b[1])) + a[2:])
            i += 2
        else:
            out.append(panels[i])
            i += 1
    return out


@lru_cache(maxsize=512)
def unit_rule(
    sigma_left: float | None, sigma_right: float | None, m: int, n: int
) -> tuple[tuple, tuple, int]:
    """Fine and merged rules for :math:`\\int_0^1`.

    ``sigma_left``/``sigma_right`` are the endpoint exponents to grade for
    (``None`` means the integrand is smooth there).  ``m`` is the number of
    uniform top-level pieces; every ungraded piece is split into two panels
    so that the merged rule always differs from the fine one.  Graded panels
    do not refine with ``m``; their error is estimated against a lower-order (3n/4 node)
    rule on the same panels instead of by merging.

    Returns ``(fine, coarse, panel_count)`` where each rule is a triple
    ``(distance_from_0, distance_from_1, weights)``.
    """
    graded = (sigma_left is not None) + (sigma_right is not None)
    m = max(m, graded)
    cuts = np.linspace(0.0, 1.0, m + 1)
    panels: list[tuple] = []
    for i in range(m):
        lo, hi = float(cuts[i]), float(cuts[i + 1])
        if i == 0 and sigma_left is not None:
            panels.extend(_graded_panels(hi - lo, sigma_left, +1, lo))
        elif i == m - 1 and sigma_right is not None:
            right = _graded_panels(hi - lo, sigma_right, -1, hi)
            panels.extend(right[::-1])
        else:
            mid = 0.5 * (lo + hi)
            panels.extend([(lo, mid, 1, 1, 0.0), (mid, hi, 1, 1, 0.0)])
    fine = _panels_to_rule(panels, n)
    uniform = [pn for pn in panels if pn[2] == 1]
    graded_only = [pn for pn in panels if pn[2] != 1]
    coarse = _panels_to_rule(_merge_pairs(uniform) + graded_only, n, graded_n=(3 * n) // 4)
    return fine, coarse, len(panels)


_BUDGET: contextvars.ContextVar[list | None] = contextvars.ContextVar("tfc_budget", default=None)


@contextlib.contextmanager
def effort_budget(max_nodes: int | None):
    """Cap the integrand evaluations (nodes times batch size) spent inside the block.

    Exceeding the cap raises :class:`CostExceeded`.  ``None`` means no cap.
    The budget follows the current context, so threads do not share it.
    """
    token = _BUDGET.set(None if max_nodes is None else [int(max_nodes), 0])
    try:
        yield
    finally:
        _BUDGET.reset(token)


def effort_spent() -> int:
    """Evaluations charged so far to the innermost :func:`effort_budget`."""
    b = _BUDGET.get()
    return 0 if b is None else b[1]


def _charge(n: int) -> None:
    b = _BUDGET.get()
    if b is None:
        return
    b[1] += n
    if b[1] > b[0]:
        raise CostExceeded(f"quadrature effort {b[1]} exceeds the budget of {b[0]} evaluations")


def quad_batch(
    integrand: Callable[[np.ndarray], np.ndarray],
    lo,
    hi,
    spec: QuadratureSpec = DEFAULT_SPEC,
    sigma_left: float | None = None,
    sigma_right: float | None = None,
    m0: int = 1,
) -> BatchResult:
    """Integrate ``integrand`` over ``[lo_i, hi_i]`` for every batch entry.

    The integrand is called as ``integrand(dl, dr)`` with two arrays of
    shape ``(B, N)``: the distance of every node from ``lo`` and from ``hi``.
    Both are accurate down to the smallest graded node, which matters for
    integrands singular at either end.  The uniform piece count is doubled
    until every entry meets its tolerance or the panel budget is exhausted
    (then ``converged`` is false).
    """
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    lo, hi = np.broadcast_arrays(lo, hi)
    length = (hi - lo)[:, None]
    m = max(1, m0)
    effort = 0

    def apply(rule):
        dl, dr, w = rule
        return (integrand(length * dl, length * dr) * w).sum(axis=-1) * length[:, 0]

    while True:
        fine, coarse, npanels = unit_rule(sigma_left, sigma_right, m, spec.nodes_per_panel)
        _charge((fine[2].size + coarse[2].size) * lo.size)
        vf = apply(fine)
        vc = apply(coarse)
        effort += fine[2].size + coarse[2].size
        if not np.all(np.isfinite(vf)):
            raise NonConvergent("integrand produced non-finite values")
        err = np.abs(vf - vc)
        ok = bool(np.all(err <= spec.tolerance(vf)))
        if ok or 2 * npanels > spec.max_panels:
            return BatchResult(vf, err, effort, ok)
        m *= 2


# }}}


# {{{ public operations


def integrate_weighted_left(
    g,
    T: float,
    sigma: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    right_exponent: float | None = None,
    strict: bool = True,
    two_sided: bool = False,
) -> EvalReport:
    r"""Compute :math:`\int_0^T s^\sigma g(s)\,\mathrm{d}s`.

    The weight is handled by the graded substitution, never by sampling at
    :math:`s = 0`.  ``right_exponent`` optionally declares a
    :math:`(T - s)^\kappa` behaviour of ``g`` at the upper end; with
    ``two_sided=True`` ``g`` is called as ``g(s, T - s)`` so it can use the
    accurately computed distance to the upper end.
    """
    if not sigma > -1:
        raise DomainError(f"weight exponent must satisfy sigma > -1, got {sigma}")
    if not T > 0:
        raise DomainError(f"integration length must be positive, got {T}")

    def integrand(s, r):
        return np.power(s, sigma) * (g(s, r) if two_sided else g(s))

    res = quad_batch(integrand, 0.0, T, spec, sigma_left=sigma, sigma_right=right_exponent)
    if strict and not res.converged:
        raise NonConvergent(
            f"weighted integral not converged: err {res.errors[0]:.3e} with {spec.max_panels} panels"
        )
    return res.report()


def semi_infinite_batch(
    integrand: Callable[[np.ndarray], np.ndarray],
    decay_hint: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    start: float = 0.0,
    sigma_left: float | None = None,
    batch: int = 1,
) -> BatchResult:
    """Vector version of :func:`integrate_semi_infinite` over ``[start, inf)``.

    Unlike :func:`quad_batch`, ``integrand`` here takes a single array of
    absolute abscissae.
    """
    if not decay_hint > 0:
        raise DomainError(f"decay_hint must be positive, got {decay_hint}")
    growth = spec.semi_infinite_cutoff_growth
    lo = start
    hi = start + 2.0 / decay_hint
    total = np.zeros(batch, dtype=complex)
    errs = np.zeros(batch)
    effort = 0
    converged = True
    max_doublings = min(spec.max_panels, 200)
    for k in range(max_doublings):
        # keep panels a few decay lengths wide so the exponential is resolved
        m0 = max(1, math.ceil((hi - lo) * decay_hint / 8.0))
        res = quad_batch(
            lambda dl, dr, lo=lo: integrand(lo + dl), np.full(batch, lo), np.full(batch, hi), spec,
            sigma_left=sigma_left if k == 0 else None, m0=m0,
        )
        total = total + res.values
        errs = errs + res.errors
        effort += res.effort
        converged &= res.converged
        # tail bound C e^{-d T}/d with C e^{-d T} ~ |g| near the cutoff
        probe_pts = np.full((batch, 3), hi) + np.array([0.0, 0.5, 1.0]) / decay_hint
        probe = np.abs(integrand(probe_pts))
        tail = probe.max(axis=-1) / decay_hint
        if np.all(tail <= spec.abs_tol):
            return BatchResult(total, errs + tail, effort, converged)
        lo, hi = hi, start + (hi - start) * growth
    return BatchResult(total, errs, effort, False)


def integrate_semi_infinite(
    g,
    decay_hint: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    left_exponent: float | None = None,
    strict: bool = True,
) -> EvalReport:
    r"""Compute :math:`\int_0^\infty g(t)\,\mathrm{d}t` for exponentially decaying ``g``.

    The cutoff grows geometrically until the tail bound
    :math:`C e^{-dT}/d` falls below ``abs_tol``.
    """
    res = semi_infinite_batch(g, decay_hint, spec, sigma_left=left_exponent)
    if strict and not res.converged:
        raise NonConvergent("semi-infinite integral did not converge within the cutoff budget")
    return res.report()


def _stencil(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Offsets (in units of h) and weights of the k-th central difference."""
    j = np.arange(k + 1)
    offsets = k / 2.0 - j
    weights = np.array([(-1) ** int(i) * math.comb(k, int(i)) for i in j], dtype=float)
    return offsets, weights


def finite_diff_batch(
    g: Callable[[np.ndarray], np.ndarray], t, k: int, h, return_error: bool = False
):
    """k-th derivative at every entry of ``t`` with one Richardson level.

    ``g`` is called once on all stencil points (shape ``(B, 2(k+1))``), so a
    vectorised ``g`` sees one consistent discretisation for the whole stencil.
    With ``return_error`` the size of the Richardson correction is returned
    as well; it bounds the error of the step-``h/2`` difference.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    h = np.broadcast_to(np.asarray(h, dtype=float), t.shape)
    if k == 0:
        v = g(t[:, None])[:, 0]
        return (v, np.zeros(t.shape)) if return_error else v
    off, wts = _stencil(k)
    pts = np.concatenate([off, off / 2.0])
    vals = g(t[:, None] + h[:, None] * pts[None, :])
    n = off.size
    d1 = (vals[:, :n] * wts).sum(axis=-1) / h**k
    d2 = (vals[:, n:] * wts).sum(axis=-1) / (h / 2.0) ** k
    rich = (4.0 * d2 - d1) / 3.0
    if return_error:
        return rich, np.abs(rich - d2)
    return rich


def finite_diff(g, t: float, k: int, h: float, domain=None) -> complex:
    """Central finite difference of order ``k`` at ``t`` with step ``h``.

    One Richardson level combines the steps ``h`` and ``h/2``.  If a
    ``domain`` (anything with ``a``/``b``) is supplied, the stencil must stay
    inside it.
    """
    if k < 1:
        raise DomainError("derivative order must be a positive integer")
    if not h > 0:
        raise DomainError("step must be positive")
    if domain is None:
        domain = getattr(g, "domain", None)
    if domain is not None:
        reach = (k / 2.0) * h
        if t - reach < domain.a or t + reach > domain.b:
            raise DomainError(
                f"finite-difference stencil [{t - reach}, {t + reach}] leaves the domain "
                f"[{domain.a}, {domain.b}]"
            )
    return complex(finite_diff_batch(lambda x: np.asarray(g(x)), t, k, h)[0])


# }}}
