"""Exact rational helpers: Bernoulli numbers and the field Q(sqrt(-3)).

Rationals are plain :class:`fractions.Fraction` values. ``QuadExt`` stores
``re + im*s`` with ``s**2 == -3`` and never touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational as _RationalABC

from .errors import InvalidInputError

Rational = Fraction

__all__ = [
    "Rational",
    "QuadExt",
    "bernoulli",
    "bernoulli_poly_third",
    "as_fraction",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@lru_cache(maxsize=None)
def _bernoulli_any(n: int) -> Fraction:
    # Akiyama-Tanigawa; yields B_1 = +1/2, callers only use even indices here
    a = [Fraction(1, m + 1) for m in range(n + 1)]
    for m in range(n + 1):
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def bernoulli(n: int) -> Fraction:
    """Return the Bernoulli number ``B_n`` for even ``n >= 2`` (``B_2 = 1/6``)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 2 or n % 2:
        raise InvalidInputError(f"bernoulli expects an even integer >= 2, got {n!r}")
    return _bernoulli_any(n)


def _bernoulli_signed(j: int) -> Fraction:
    if j == 1:
        return Fraction(-1, 2)
    if j % 2 and j > 1:
        return Fraction(0)
    return _bernoulli_any(j)


@lru_cache(maxsize=None)
def bernoulli_poly_third(m: int) -> Fraction:
    """Value of the Bernoulli polynomial ``B_m(x)`` at ``x = 1/3`` for odd ``m``."""
    if not isinstance(m, int) or isinstance(m, bool) or m < 1 or m % 2 == 0:
        raise InvalidInputError(f"bernoulli_poly_third expects an odd integer >= 1, got {m!r}")
    x = Fraction(1, 3)
    return sum((comb(m, j) * _bernoulli_signed(j) * x ** (m - j) for j in range(m + 1)), Fraction(0))


class QuadExt:
    """Element ``re + im*s`` of Q(s), ``s**2 = -3``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @staticmethod
    def coerce(x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return QuadExt(as_fraction(x), 0)

    def __add__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.re * o.re - 3 * self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + 3 * self.im * self.im

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.re, -self.im)

    def __truediv__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(-3))")
        p = self * o.conjugate()
        return QuadExt(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return QuadExt.coerce(other) / self

    def __eq__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_rational(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"QuadExt({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*s"
        sign = "-" if self.im < 0 else "+"
        return f"({self.re} {sign} {abs(self.im)}*s)"
