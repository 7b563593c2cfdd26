"""Function handles: vectorised integrands with a declared domain and regularity."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, RegularityError

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Interval:
    """A closed real interval ``[a, b]`` with ``a < b``."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not self.a < self.b:
            raise DomainError(f"interval needs a < b, got [{self.a}, {self.b}]")

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.a - slack <= x <= self.b + slack


@dataclass(frozen=True)
class Regularity:
    """Declared smoothness of a function: integrable, ``C^n`` or smooth.

    Regularity is caller-asserted; nothing here checks it numerically.
    """

    kind: str = "integrable"
    order: int = 0

    _KINDS = ("integrable", "continuous", "smooth")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown regularity kind {self.kind!r}")

    @classmethod
    def integrable(cls) -> Regularity:
        return cls("integrable", 0)

    @classmethod
    def continuous(cls, n: int) -> Regularity:
        return cls("continuous", int(n))

    @classmethod
    def smooth(cls) -> Regularity:
        return cls("smooth", 0)

    def at_least(self, n: int) -> bool:
        if self.kind == "smooth":
            return True
        if self.kind == "continuous":
            return self.order >= n
        return False

    def __str__(self) -> str:
        if self.kind == "continuous":
            return f"C{self.order}"
        return self.kind


@dataclass(frozen=True)
class FunctionHandle:
    r"""A real-argument, complex-valued function together with its metadata.

    ``evaluator`` must accept a numpy array of any shape and return an array
    of the same shape; it is called concurrently and must be re-entrant.

    ``left_exponent`` is an optional hint :math:`\kappa` that the function
    behaves like :math:`(u - a)^\kappa` near the lower end of its domain. It
    only steers node grading in the quadrature; it never changes a value.

    ``offset`` optionally evaluates ``f(base + r)`` from ``(base, r)`` without
    forming the sum, for functions singular at ``base`` where ``base + r``
    would round back to ``base``.
    """

    evaluator: Evaluator
    domain: Interval = field(default_factory=lambda: Interval(0.0, np.inf))
    regularity: Regularity = field(default_factory=Regularity.integrable)
    left_exponent: float | None = None
    label: str = ""
    offset: Callable | None = None

    def __call__(self, t):
        return self.evaluator(np.asarray(t, dtype=float if np.isrealobj(t) else complex))

    def at_offset(self, base: float, r):
        """``f(base + r)``, exact in ``r`` when the handle knows how."""
        if self.offset is not None:
            out = self.offset(base, np.asarray(r, dtype=float))
            if out is not None:
                return out
        return self(base + np.asarray(r, dtype=float))

    def require(self, n: int) -> None:
        """Raise :class:`RegularityError` unless the handle is at least ``C^n``."""
        if not self.regularity.at_least(n):
            raise RegularityError(
                f"operation needs a C^{n} function, got {self.regularity} ({self.label or 'f'})"
            )

    def grading_hint(self) -> float | None:
        """Exponent used for endpoint grading, or ``None`` for a smooth endpoint."""
        if self.left_exponent is not None:
            return float(self.left_exponent)
        return None if self.regularity.kind == "smooth" else 0.0

    def with_evaluator(self, evaluator: Evaluator, **changes) -> FunctionHandle:
        kw = dict(
            evaluator=evaluator,
            domain=self.domain,
            regularity=self.regularity,
            left_exponent=self.left_exponent,
            label=self.label,
        )
        kw.update(changes)
        return FunctionHandle(**kw)


def as_handle(f, domain: Interval | None = None, regularity: Regularity | None = None) -> FunctionHandle:
    """Wrap a plain callable (or pass a handle through unchanged)."""
    if isinstance(f, FunctionHandle):
        return f
    if not callable(f):
        raise TypeError(f"expected a callable, got {type(f).__name__}")
    return FunctionHandle(
        evaluator=lambda x: np.broadcast_to(f(x), np.shape(x)),
        domain=domain or Interval(-np.inf, np.inf),
        regularity=regularity or Regularity.smooth(),
    )


def constant(c: complex, domain: Interval | None = None) -> FunctionHandle:
    c = complex(c)
    val = c.real if c.imag == 0 else c
    return FunctionHandle(
        evaluator=lambda x: np.full(np.shape(x), val),
        domain=domain or Interval(0.0, np.inf),
        regularity=Regularity.smooth(),
        label=f"{c.real:g}" if c.imag == 0 else f"{c}",
    )


def power(lam: complex, a: float = 0.0, domain: Interval | None = None) -> FunctionHandle:
    """The monomial :math:`(t - a)^\\lambda` on ``[a, ...)``."""
    lam = complex(lam)
    p = lam.real if lam.imag == 0 else lam

    def ev(x):
        return np.power(np.asarray(x) - a, p, dtype=complex if lam.imag else float)

    def off(base, r):
        return np.power(r, p, dtype=complex if lam.imag else float) if base == a else None

    integer = lam.imag == 0 and lam.real >= 0 and float(lam.real).is_integer()
    return FunctionHandle(
        evaluator=ev,
        domain=domain or Interval(a, np.inf),
        regularity=Regularity.smooth() if integer else Regularity.continuous(1),
        left_exponent=None if integer else lam.real,
        label=f"(t-{a})^{lam}",
        offset=off,
    )
