"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when arguments fail a precondition (bad shapes, ranges, sizes)."""


class DegenerateVolatilityError(ValidationError):
    """Raised when a return window has zero volatility, so the Sharpe ratio
    is undefined."""


class DataError(RuntimeError):
    """Raised when an input file cannot be parsed or fails a consistency
    check (malformed rows, duplicate or non-increasing dates, missing
    risk-free coverage)."""
