"""Exact scalar arithmetic.

Rationals are :class:`fractions.Fraction` (always canonical: positive
denominator, reduced).  Square roots are never materialised; anything that
compares against ``sqrt(s)`` goes through :func:`compare_affine_sqrt`.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

_LITERAL = re.compile(r"-?\d+(?:/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` (optional leading minus, ``q > 0``)."""
    if not _LITERAL.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def compare_affine_sqrt(a, b, s) -> int:
    """Return the sign of ``a + b*sqrt(s)`` exactly."""
    a, b, s = Fraction(a), Fraction(b), Fraction(s)
    if s < 0:
        raise ValueError("s must be non-negative")
    sa = _sign(a)
    sb = _sign(b) if s else 0
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger magnitude wins
    return _sign(a * a - b * b * s) * sa


def ceil_div_by_sqrt(v, s) -> int:
    """Smallest integer ``z`` with ``z >= v / sqrt(s)``."""
    v, s = Fraction(v), Fraction(s)
    if s <= 0:
        raise ValueError("s must be positive")
    # (v / sqrt(s))**2 = num / den, all in integers
    num = v.numerator * v.numerator * s.denominator
    den = v.denominator * v.denominator * s.numerator
    t = math.isqrt(num // den)  # floor(|v| / sqrt(s))
    if v < 0:
        return -t
    return t if t * t * den == num else t + 1
