"""
Rational scalars and their literal syntax.

The only scalar type in the system is fractions.Fraction. Literals are
written "p/q" (q > 1, reduced) or "p" when the denominator is 1; the sign
sits on the numerator.
"""

import numbers
import re
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, int]

_LITERAL = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or canonical literal to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, numbers.Rational):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def parse_rational(text: str) -> Fraction:
    """
    Parse a canonical rational literal.

    Args:
        text: "p" or "p/q"

    Returns:
        The Fraction

    Raises:
        ValueError: if the literal is malformed or not in lowest terms
    """
    match = _LITERAL.match(text)
    if match is None:
        raise ValueError(f"malformed rational literal {text!r}")
    sign, num, den = match.groups()
    if sign and num == "0":
        raise ValueError("negative zero is not a canonical literal")
    if den is None:
        return Fraction(int(sign + num))
    q = Fraction(int(sign + num), int(den))
    if q.denominator != int(den) or den == "1":
        raise ValueError(f"rational literal {text!r} is not in lowest terms")
    return q


def format_rational(value: Scalar) -> str:
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
