"""Verification records shared by the series and theorem checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class TheoremId(str, Enum):
    INVERSION = "Inversion"
    LEMMA_COMPOSITION = "LemmaComposition"
    TAYLOR_TELESCOPE = "TaylorTelescope"
    INEQ1 = "Ineq1"
    INEQ2 = "Ineq2"
    INEQ3 = "Ineq3"
    PROPORTIONAL_STEP = "ProportionalStep"


class SignConvention(str, Enum):
    """Which sign of the boundary correction reproduced the left-hand side."""

    PROP_SIGN = "PropSign"
    LEMMA_SIGN = "LemmaSign"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class VerificationRecord:
    """One checked instance of an identity or inequality.

    For identities ``residual_or_slack`` is a residual and ``passed`` means it
    is at most ``tol``; for inequalities it is a slack and ``passed`` means it
    is at least ``-tol``.
    """

    theorem_id: TheoremId
    inputs: dict
    lhs: complex
    rhs: complex
    residual_or_slack: float
    tol: float
    passed: bool
    sign_convention: SignConvention = SignConvention.UNDETERMINED
    details: dict = field(default_factory=dict)

    @classmethod
    def identity(cls, tid, inputs, lhs, rhs, residual, tol, **kw) -> VerificationRecord:
        return cls(tid, inputs, complex(lhs), complex(rhs), float(residual), tol,
                   bool(residual <= tol), **kw)

    @classmethod
    def inequality(cls, tid, inputs, lhs, rhs, slack, tol, **kw) -> VerificationRecord:
        return cls(tid, inputs, complex(lhs), complex(rhs), float(slack), tol,
                   bool(slack >= -tol), **kw)
