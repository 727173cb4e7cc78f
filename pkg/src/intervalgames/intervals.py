"""Exact closed-interval arithmetic over the rationals.

Endpoints are :class:`fractions.Fraction`; nothing in this module rounds.
Moore subtraction and partial subtraction are deliberately separate
functions and there is no ``-`` operator on :class:`Interval`, so call
sites always say which one they mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import DivisionByZeroInterval, PartialSubtractionUndefined

RationalLike = Union[int, Fraction, str]


def to_rational(value) -> Fraction:
    """Convert ``value`` to a Fraction without any loss of precision.

    Strings may be ``"p/q"`` (optionally signed) or decimal literals such as
    ``"0.5"``.  Floats are refused: their binary value is rarely what the
    caller meant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational exactly")


def format_rational(q: Fraction) -> str:
    """Canonical ``p/q`` text, always with an explicit denominator."""
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __init__(self, lo: RationalLike, hi: RationalLike | None = None):
        lo = to_rational(lo)
        hi = lo if hi is None else to_rational(hi)
        if lo > hi:
            raise ValueError(f"empty interval: lower bound {lo} exceeds upper bound {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value: RationalLike) -> Interval:
        return cls(value, value)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, value) -> bool:
        return self.lo <= to_rational(value) <= self.hi

    def __add__(self, other: Interval) -> Interval:
        if not isinstance(other, Interval):
            return NotImplemented
        return add(self, other)

    def scale(self, factor: RationalLike) -> Interval:
        """Multiply by a scalar; negative factors swap the endpoints."""
        f = to_rational(factor)
        a, b = self.lo * f, self.hi * f
        return Interval(min(a, b), max(a, b))

    def __repr__(self) -> str:
        return f"Interval({self.lo}, {self.hi})"

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


ZERO = Interval(0, 0)


def add(x: Interval, y: Interval) -> Interval:
    return Interval(x.lo + y.lo, x.hi + y.hi)


def moore_sub(x: Interval, y: Interval) -> Interval:
    """Moore subtraction: ``[x.lo - y.hi, x.hi - y.lo]``.  Widths add."""
    return Interval(x.lo - y.hi, x.hi - y.lo)


def partial_sub(x: Interval, y: Interval) -> Interval:
    """Endpoint-wise subtraction, defined only when ``y`` is no wider than ``x``.

    Raises :class:`PartialSubtractionUndefined` carrying both operands otherwise.
    """
    lo, hi = x.lo - y.lo, x.hi - y.hi
    if lo > hi:
        raise PartialSubtractionUndefined(x, y)
    return Interval(lo, hi)


def multiply(x: Interval, y: Interval) -> Interval:
    products = (x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi)
    return Interval(min(products), max(products))


def divide(x: Interval, z: Interval) -> Interval:
    if z.lo <= 0 <= z.hi:
        raise DivisionByZeroInterval(z)
    quotients = (x.lo / z.hi, x.hi / z.lo, x.lo / z.lo, x.hi / z.hi)
    return Interval(min(quotients), max(quotients))


def weakly_better(i: Interval, j: Interval) -> bool:
    return i.lo >= j.lo and i.hi >= j.hi


def strictly_better(i: Interval, j: Interval) -> bool:
    return weakly_better(i, j) and i != j


def indifferent(i: Interval, j: Interval) -> bool:
    return i.lo + i.hi == j.lo + j.hi


def length(x: Interval) -> Fraction:
    return x.length


def interval_sum(intervals) -> Interval:
    lo = hi = Fraction(0)
    for x in intervals:
        lo += x.lo
        hi += x.hi
    return Interval(lo, hi)
