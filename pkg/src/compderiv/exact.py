"""Exact scalar arithmetic: arbitrary-precision rationals and the
combinatorial integers (factorials, binomials, falling factorials) that
every derivative route consumes.

The coefficient field is ``fractions.Fraction``, re-exported as
``Rational``.  Fractions are always stored reduced with a positive
denominator, which makes equality structural: every cross-route check in
this package is a plain ``==``.  There is no floating point anywhere in
the computational core.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

__all__ = [
    "Rational",
    "factorial",
    "binomial",
    "falling_factorial",
    "parse_rational",
    "format_rational",
    "as_rational",
]

# Text form is "p/q" or "p" (q=1 elided) with an optional leading minus.
_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def factorial(l: int) -> int:
    """Return l! = 1 * 2 * ... * l, with 0! = 1.  Requires l >= 0."""
    if l < 0:
        raise ValueError(f"factorial requires a non-negative argument, got {l}")
    return math.factorial(l)


def binomial(a: int, b: int) -> int:
    """Return the binomial coefficient C(a, b).

    Out-of-range b (b < 0 or b > a) yields 0 rather than an error, which
    is the convention the determinant construction relies on.
    """
    if a < 0:
        raise ValueError(f"binomial requires a non-negative first argument, got {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def falling_factorial(m: int, p: int) -> int:
    """Return m * (m-1) * ... * (m-p+1), the product of p descending factors.

    Defined for any integer m; the empty product (p = 0) is 1.  For
    0 <= m < p the result is 0 because one factor is 0.
    """
    if p < 0:
        raise ValueError(f"falling_factorial requires p >= 0, got {p}")
    result = 1
    for i in range(p):
        result *= m - i
    return result


def parse_rational(text: str) -> Fraction:
    """Parse the canonical rational text form "p/q" or "p".

    The value is reduced on construction, so "4/6" parses to 2/3.
    Raises ValueError for anything outside the grammar (decimals,
    whitespace inside the token, zero denominators).
    """
    match = _RATIONAL_RE.match(text.strip())
    if match is None:
        raise ValueError(f"not a rational literal (expected 'p' or 'p/q'): {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError(f"zero denominator in rational literal: {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Emit the canonical text form: "p/q", or just "p" when q = 1."""
    return str(Fraction(value))


def as_rational(value: Fraction | int | str) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact Fraction.

    Floats are rejected on purpose: this package has no inexact mode.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")
