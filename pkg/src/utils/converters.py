"""Utility functions for exact rationals and comma-separated lists."""

import re
from fractions import Fraction

from ..errors import UsageError

_FRACTION = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_fraction(text):
    """Parse a rational written as ``p/q`` or ``p``.

    Args:
        text (str): e.g. ``"3/4"``, ``"-1/8"``, ``"2"``

    Returns:
        Fraction: reduced value
    """
    m = _FRACTION.match(text.strip())
    if not m:
        raise UsageError(f"expected a rational p/q, got {text!r}")
    numerator = int(m.group(1))
    denominator = int(m.group(2)) if m.group(2) is not None else 1
    if denominator == 0:
        raise UsageError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def format_fraction(value):
    """Format a rational as ``p/q`` (gcd-reduced, q >= 1) or ``p`` when integral."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_int_list(text):
    """Parse ``"1,2, 5"`` into ``[1, 2, 5]``; an empty string gives an empty list."""
    items = [tok.strip() for tok in text.split(",") if tok.strip()]
    try:
        return [int(tok) for tok in items]
    except ValueError as e:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from e


def format_int_list(values, sep=" "):
    return sep.join(str(v) for v in values)
