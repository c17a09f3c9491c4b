"""Exact integers, rationals and rational intervals.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`;
both are arbitrary precision and already canonical (``Fraction`` keeps
``gcd(num, den) == 1`` and ``den > 0``).  This module adds the thin layer the
rest of the package relies on: checked construction, a total-order
comparison, text round-tripping and :class:`RationalInterval`.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "Scalar",
    "ZeroDenominatorError",
    "Ordering",
    "make_rational",
    "as_rational",
    "normalize",
    "rat_arith",
    "rat_cmp",
    "int_gcd",
    "parse_rational",
    "format_rational",
    "RationalInterval",
]


class ZeroDenominatorError(ZeroDivisionError):
    """A rational with denominator zero was requested."""


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def make_rational(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise ZeroDenominatorError(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


def as_rational(x: Union[int, Fraction, str]) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def normalize(x: Scalar) -> Scalar:
    """Collapse integral fractions to ``int`` (cheaper arithmetic downstream)."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def rat_arith(a: Fraction, b: Fraction, op: str) -> Fraction:
    a, b = as_rational(a), as_rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDenominatorError(f"division of {a} by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rat_cmp(a: Fraction, b: Fraction) -> Ordering:
    a, b = as_rational(a), as_rational(b)
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


def int_gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` exactly."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return make_rational(num, den)


def format_rational(x: Scalar) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RationalInterval:
    """An interval with rational (or infinite) endpoints.

    ``None`` stands for an infinite endpoint (``-inf`` on the left, ``inf`` on
    the right); infinite endpoints are always open.
    """

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if self.lo is not None:
            object.__setattr__(self, "lo", as_rational(self.lo))
        elif self.lo_closed:
            raise ValueError("an infinite endpoint cannot be closed")
        if self.hi is not None:
            object.__setattr__(self, "hi", as_rational(self.hi))
        elif self.hi_closed:
            raise ValueError("an infinite endpoint cannot be closed")
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @classmethod
    def open(cls, lo, hi) -> "RationalInterval":
        return cls(lo, hi, False, False)

    @classmethod
    def closed(cls, lo, hi) -> "RationalInterval":
        return cls(lo, hi, True, True)

    @classmethod
    def point(cls, x) -> "RationalInterval":
        return cls(x, x, True, True)

    @classmethod
    def real_line(cls) -> "RationalInterval":
        return cls(None, None)

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    @property
    def width(self) -> Fraction:
        if not self.bounded:
            raise ValueError("unbounded interval has no width")
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        if not self.bounded:
            raise ValueError("unbounded interval has no midpoint")
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        x = as_rational(x)
        if self.lo is not None:
            if x < self.lo or (x == self.lo and not self.lo_closed):
                return False
        if self.hi is not None:
            if x > self.hi or (x == self.hi and not self.hi_closed):
                return False
        return True

    def is_subset_of(self, other: "RationalInterval") -> bool:
        if other.lo is not None:
            if self.lo is None or self.lo < other.lo:
                return False
            if self.lo == other.lo and self.lo_closed and not other.lo_closed:
                return False
        if other.hi is not None:
            if self.hi is None or self.hi > other.hi:
                return False
            if self.hi == other.hi and self.hi_closed and not other.hi_closed:
                return False
        return True

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        lo = "-inf" if self.lo is None else format_rational(self.lo)
        hi = "inf" if self.hi is None else format_rational(self.hi)
        return f"{left}{lo},{hi}{right}"

    @classmethod
    def parse(cls, text: str) -> "RationalInterval":
        """Parse ``"(lo,hi)"``, ``"[lo,hi]"`` or mixed brackets; ``inf`` tokens allowed."""
        s = "".join(text.split())
        if len(s) < 5 or s[0] not in "([" or s[-1] not in ")]" or "," not in s:
            raise ValueError(f"not an interval: {text!r}")
        lo_txt, _, hi_txt = s[1:-1].partition(",")
        lo = None if lo_txt in ("-inf", "-oo") else parse_rational(lo_txt)
        hi = None if hi_txt in ("inf", "+inf", "oo") else parse_rational(hi_txt)
        if lo_txt in ("inf", "+inf") or hi_txt == "-inf":
            raise ValueError(f"misplaced infinity in {text!r}")
        return cls(lo, hi, s[0] == "[" and lo is not None, s[-1] == "]" and hi is not None)
