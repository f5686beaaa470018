"""Exact rational helpers and lexicographic vector comparison.

Rationals are plain :class:`fractions.Fraction` values: arbitrary precision,
always reduced, denominator positive.  A "lex vector" is a tuple of
Fractions, one entry per belief level.
"""
from __future__ import annotations

import enum
import re
from fractions import Fraction
from typing import Sequence, Union

Rational = Fraction
LexVector = tuple

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class ContractError(ValueError):
    """A caller broke an operation's precondition."""


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def parse_rational(text: Union[str, int]) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction.

    Integers are accepted too.  Floats are rejected on purpose: a JSON float
    has already lost exactness by the time it reaches us.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def lex_compare(a: Sequence[Fraction], b: Sequence[Fraction]) -> Ordering:
    if len(a) != len(b):
        raise ContractError(f"lex vectors differ in length: {len(a)} vs {len(b)}")
    for x, y in zip(a, b):
        if x > y:
            return Ordering.GREATER
        if x < y:
            return Ordering.LESS
    return Ordering.EQUAL


def format_vector(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(format_rational(x) for x in v) + ")"
