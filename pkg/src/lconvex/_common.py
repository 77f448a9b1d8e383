"""Exceptions, verdicts and budget defaults shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

# Enumeration caps. Exceeding one raises BudgetExceeded instead of sampling.
SCAN_BUDGET = 10**6          # |L|^|X| style scans
FAMILY_BUDGET = 5000         # size of a generated convex family
SCOTT_BUDGET = 10**7         # |L|^(2|P|) for Scott structures


class LConvexError(Exception):
    """Base class. ``witness`` holds the offending tuple when there is one."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class NotALattice(LConvexError):
    pass


class NotAMonoid(LConvexError):
    pass


class NotDistributive(LConvexError):
    pass


class InvalidSize(LConvexError):
    pass


class LatticeMismatch(LConvexError):
    pass


class CarrierMismatch(LConvexError):
    pass


class E1Violation(LConvexError):
    pass


class E2Violation(LConvexError):
    pass


class E3Violation(LConvexError):
    pass


class NotConvex(LConvexError):
    pass


class NotS0(LConvexError):
    pass


class NotSober(LConvexError):
    pass


class NotConvexityPreserving(LConvexError):
    pass


class BudgetExceeded(LConvexError):
    def __init__(self, message: str, needed: int | None = None, budget: int | None = None):
        super().__init__(message, witness=needed)
        self.needed = needed
        self.budget = budget


class InvariantViolation(LConvexError):
    """A proved statement failed on a concrete instance: a library bug."""


class EquivalenceViolation(InvariantViolation):
    """Two sides of a proved equivalence disagree."""


class FileFormatError(LConvexError):
    pass


def check_budget(needed: int, budget: int | None, what: str) -> None:
    if budget is not None and needed > budget:
        raise BudgetExceeded(f"{what}: needs {needed} > budget {budget}", needed, budget)


@dataclass(frozen=True)
class Verdict:
    """A boolean answer with an optional witness explaining a failure."""

    holds: bool
    witness: Any = None
    note: str = ""
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds
