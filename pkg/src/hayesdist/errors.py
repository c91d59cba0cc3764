"""Shared exception types and enumeration budgets.

Budgets guard the full-enumeration code paths.  The defaults can be raised
or lowered through environment variables so that scripted runs fail fast
instead of grinding through an oversized field.
"""

from __future__ import annotations

import os

DEFAULT_ENUMERATION_BUDGET = int(os.environ.get("HAYESDIST_MAX_ENUM", "10000000"))
DEFAULT_CLASS_BUDGET = int(os.environ.get("HAYESDIST_MAX_CLASSES", "4096"))


class ValidationError(ValueError):
    """Input violates a documented precondition (bad D, bad config, ...)."""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured budget."""

    def __init__(self, what: str, value: int, budget: int):
        self.what = what
        self.value = value
        self.budget = budget
        super().__init__(f"{what} = {value} exceeds budget {budget}")


class HypothesisError(ValueError):
    """A bound was requested outside the hypotheses under which it holds."""


def check_budget(what: str, value: int, budget: int | None = None) -> None:
    """Raise BudgetExceededError when `value` exceeds the budget."""
    limit = DEFAULT_ENUMERATION_BUDGET if budget is None else budget
    if value > limit:
        raise BudgetExceededError(what, value, limit)
