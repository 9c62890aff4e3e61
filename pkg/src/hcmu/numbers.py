"""Exact-or-float numbers and their text form.

Rationals ("1/3", "2", JSON integers) become Fraction; decimals become
float. Output uses "p/q" for Fractions and 17 significant digits for
floats so that every value survives a write/read cycle.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

_RATIONAL = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")


def parse_number(value):
    """Convert a JSON scalar or string to Fraction (exact) or float."""
    if isinstance(value, bool):
        raise ValueError(f"expected a number, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite number {value!r}")
        return value
    if isinstance(value, str):
        text = value.strip()
        if _RATIONAL.match(text):
            num = Fraction(text.replace(" ", ""))
            return num
        try:
            out = float(text)
        except ValueError:
            raise ValueError(f"not a rational or decimal number: {value!r}") from None
        if not math.isfinite(out):
            raise ValueError(f"non-finite number {value!r}")
        return out
    raise ValueError(f"expected a number, got {type(value).__name__}")


def format_number(value):
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return format(float(value), ".17g")


def is_integer(value):
    if isinstance(value, Fraction):
        return value.denominator == 1
    if isinstance(value, int):
        return True
    return float(value).is_integer()


def unify(values):
    """All Fractions if every input is exact, otherwise all floats."""
    values = list(values)
    if all(isinstance(v, (int, Fraction)) for v in values):
        return [Fraction(v) for v in values]
    return [float(v) for v in values]


def pi_label(angle):
    """Cone angle ``2*pi*angle`` written as a multiple of pi, e.g. "4π"."""
    mult = 2 * angle
    if isinstance(mult, Fraction):
        num = "" if mult.numerator == 1 else str(mult.numerator)
        den = "" if mult.denominator == 1 else f"/{mult.denominator}"
        return f"{num}π{den}"
    return f"{float(mult):.6g}π"
