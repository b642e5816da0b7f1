"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented precondition or schema."""


class BudgetError(RuntimeError):
    """Raised when a request exceeds the exact-enumeration budgets."""
