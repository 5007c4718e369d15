"""Exception types and the enumeration budget.

Exit codes follow the CLI contract: 64 for parse errors, 65 for
validation errors, 69 for an exceeded enumeration budget.
"""

import os


class SdcatError(Exception):
    exit_code = 65


class ParseError(SdcatError):
    exit_code = 64


class ValidationError(SdcatError):
    exit_code = 65


class DomainMismatch(ValidationError):
    """Composed or compared maps whose presentations do not line up."""


class BudgetExceeded(SdcatError):
    exit_code = 69


DEFAULT_BUDGET = 500_000

_budget_override: int | None = None


def budget() -> int:
    if _budget_override is not None:
        return _budget_override
    try:
        return int(os.environ.get("SDCAT_BUDGET", DEFAULT_BUDGET))
    except ValueError:
        return DEFAULT_BUDGET


def set_budget(value: int | None) -> None:
    """Process-wide override, mainly for tests."""
    global _budget_override
    _budget_override = value


def check_budget(size: int, what: str) -> None:
    if size > budget():
        raise BudgetExceeded(f"{what}: size {size} exceeds budget {budget()}")
