"""Exact rational scalars and their text formats.

Every coordinate, breakpoint and distance in this package is a
``gmpy2.mpq``: arbitrary-precision, always in lowest terms, with exact
arithmetic and comparison.  ``Rational(x)`` accepts ints, other
rationals, ``fractions.Fraction`` and strings; use :func:`parse_rational`
for text from files (it reports what went wrong instead of raising
``gmpy2``'s terse errors).

Python floats are deliberately rejected everywhere a coordinate enters
the system: ``0.1`` the float is not ``1/10``, and silently converting
it would defeat the exactness guarantees.  Write ``"0.1"`` or
``Rational(1, 10)`` instead.
"""

from __future__ import annotations

import re
from decimal import Decimal, getcontext
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from gmpy2 import mpq as Rational

RationalLike = Union[Rational, int, str, Fraction]

_DECIMAL_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_RATIO_RE = re.compile(r"^([+-]?\d+)\s*/\s*(\d+)$")


def to_rational(value: RationalLike) -> Rational:
    """Convert ``value`` to an exact rational, rejecting floats."""
    if isinstance(value, float):
        raise TypeError(
            f"refusing to convert float {value!r}; pass a string or Fraction "
            "for an exact value"
        )
    if isinstance(value, (int, _RationalABC)):
        return Rational(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Rational:
    """Parse a decimal (``-3.25``, ``1e-3``) or ratio (``-13/4``) literal."""
    s = text.strip()
    if not s:
        raise ValueError("empty rational literal")
    m = _RATIO_RE.match(s)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Rational(num, den)
    if _DECIMAL_RE.match(s):
        # Fraction parses decimal/scientific notation exactly.
        return Rational(Fraction(s))
    raise ValueError(f"malformed rational literal {text!r}")


def format_rational(q: Rational) -> str:
    """Render ``q`` as ``p`` or ``p/q``; inverse of :func:`parse_rational`."""
    return str(Rational(q))


def rational_to_decimal(q: Rational, digits: int = 15) -> str:
    """Render ``q`` in decimal with ``digits`` significant digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    ctx = getcontext().copy()
    ctx.prec = digits
    d = ctx.divide(Decimal(int(q.numerator)), Decimal(int(q.denominator)))
    return format(d, "f") if -6 < d.adjusted() < digits else format(d, "e")
