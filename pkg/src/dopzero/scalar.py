"""Exact rationals and checked doubles.

Exact values are :class:`fractions.Fraction` (always canonical, denominator
positive).  Floating values are plain Python floats that are checked to be
finite at public boundaries.  Functions elsewhere in the package accept either
kind and stay exact whenever every input is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import MagnitudeError

ExactScalar = Fraction
RealScalar = float
Scalar = Union[Fraction, int, float]


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"``, an integer, or a decimal string into an exact rational.

    Decimal strings keep their written value, so ``"0.3"`` is exactly 3/10.
    """
    s = text.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(value: Scalar) -> str:
    """Inverse of :func:`parse_rational` for exact values."""
    if isinstance(value, float):
        return repr(value)
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_exact(*values: Scalar) -> bool:
    return all(isinstance(v, Rational) for v in values)


def sign(value: Scalar) -> int:
    """Exact sign of a rational (or the sign of a float) as -1, 0 or +1."""
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def to_real(value: Scalar) -> float:
    """Nearest double to ``value``; raises :class:`MagnitudeError` on overflow."""
    try:
        out = float(value)
    except OverflowError as exc:
        raise MagnitudeError(f"value does not fit in a double: {value}") from exc
    return finite(out)


def finite(value: float) -> float:
    if not math.isfinite(value):
        raise MagnitudeError(f"non-finite floating value: {value}")
    return value


def rationalize(value: Scalar) -> Fraction:
    """Exact rational equal to ``value`` (floats convert without rounding)."""
    if isinstance(value, float):
        finite(value)
        return Fraction(value)
    return Fraction(value)


def floor(value: Scalar) -> int:
    return math.floor(value)


def ceil(value: Scalar) -> int:
    return math.ceil(value)
