"""Precision configuration shared by every module.

The cap is read once from ``SKEWPS_MAX_PREC`` and is meant to be fixed before
any computation starts; ``set_max_precision`` exists for tests and the CLI.
"""

import os

DEFAULT_PRECISION = 16
HARD_MAX_PRECISION = 512

_max_precision = None


def max_precision():
    global _max_precision
    if _max_precision is None:
        raw = os.environ.get("SKEWPS_MAX_PREC", str(HARD_MAX_PRECISION))
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"SKEWPS_MAX_PREC must be an integer, got {raw!r}")
        _max_precision = max(1, min(value, HARD_MAX_PRECISION))
    return _max_precision


def set_max_precision(value):
    global _max_precision
    if not 1 <= value <= HARD_MAX_PRECISION:
        raise ValueError(f"precision cap must lie in 1..{HARD_MAX_PRECISION}")
    _max_precision = value


def check_precision(n):
    """Validate a user-requested working precision against the cap."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"precision must be a positive integer, got {n!r}")
    if n > max_precision():
        raise ValueError(f"precision {n} exceeds the cap {max_precision()}")
    return n
