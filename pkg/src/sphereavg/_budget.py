import os

DEFAULT_BUDGET = 10**8


def budget() -> int:
    """Work/output cap, overridable through ``SPHEREAVG_BUDGET``."""
    raw = os.environ.get("SPHEREAVG_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(float(raw))
    except ValueError:
        raise ValueError(f"SPHEREAVG_BUDGET must be a number, got {raw!r}") from None
    if value <= 0:
        raise ValueError("SPHEREAVG_BUDGET must be positive")
    return value
