"""Exact rational values and non-negative counts.

Every threshold decision in the package (``avg < 14/5`` and friends) goes
through :class:`fractions.Fraction`; floats only ever appear in rendered
output, and always next to the exact value.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction

Rational = Fraction

__all__ = [
    "Rational",
    "Ordering",
    "ZeroDenominatorError",
    "ArithmeticOverflow",
    "rational_make",
    "rational_compare",
    "rational_arith",
    "parse_rational",
    "render_decimal",
    "rational_to_json",
    "rational_from_json",
    "checked_count",
]


class ZeroDenominatorError(ZeroDivisionError):
    pass


class ArithmeticOverflow(OverflowError):
    pass


# signed 128-bit magnitude; anything larger is reported instead of promoted
MAGNITUDE = 2**127


def _check(v: int, what: str) -> int:
    if not -MAGNITUDE <= v < MAGNITUDE:
        raise ArithmeticOverflow(f"{what} exceeds the 128-bit range")
    return v


def _checked(x: Fraction) -> Fraction:
    _check(x.numerator, "numerator")
    _check(x.denominator, "denominator")
    return x


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def rational_make(a: int, b: int = 1) -> Fraction:
    if not isinstance(a, int) or not isinstance(b, int):
        raise TypeError("rational_make takes two integers")
    if b == 0:
        raise ZeroDenominatorError(f"zero denominator in {a}/{b}")
    _check(a, "numerator")
    _check(b, "denominator")
    return Fraction(a, b)


def rational_compare(x: Fraction, y: Fraction) -> Ordering:
    # cross-multiplication on exact integers
    lhs = _check(x.numerator * y.denominator, "cross product")
    rhs = _check(y.numerator * x.denominator, "cross product")
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


_OPS = {
    "add": lambda x, y: x + y,
    "sub": lambda x, y: x - y,
    "mul": lambda x, y: x * y,
    "div": lambda x, y: x / y,
}


def rational_arith(x: Fraction, y: Fraction, op: str) -> Fraction:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    if op == "div" and y == 0:
        raise ZeroDenominatorError("division by zero")
    return _checked(Fraction(fn(_checked(Fraction(x)), _checked(Fraction(y)))))


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"``; decimal notation is rejected on purpose."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not an exact rational (use a/b): {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return rational_make(num, den)


def render_decimal(x: Fraction, digits: int = 6) -> str:
    """Decimal approximation with ``digits`` places, computed exactly."""
    scale = 10**digits
    num, den = x.numerator, x.denominator
    sign = "-" if num < 0 else ""
    q, r = divmod(abs(num) * scale, den)
    if 2 * r >= den:
        q += 1
    whole, frac = divmod(q, scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def rational_to_json(x: Fraction, approx: bool = True) -> dict:
    out = {"num": x.numerator, "den": x.denominator}
    if approx:
        out["approx"] = render_decimal(x)
    return out


def rational_from_json(obj: dict) -> Fraction:
    return rational_make(int(obj["num"]), int(obj["den"]))


def checked_count(value: int) -> int:
    """Validate a count (orders, psi, n_k) against the 128-bit range."""
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"count must be an int, got {type(value).__name__}")
    if value < 0:
        raise ValueError(f"count must be non-negative, got {value}")
    return _check(value, "count")
