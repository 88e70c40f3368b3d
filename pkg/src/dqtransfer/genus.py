"""Elliptic genus and Todd series of a quaternionic line as series in ``c2``.

The closed forms are built in generator coordinates and expanded. The
level-3 oracle exponentiates ``6 * sum (-1)^n c2^n/(2n)! G*_2n`` using
level-1 Eisenstein series only, so it shares nothing with the closed form
beyond :func:`eisenstein_G`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import InvalidInputError, UnsupportedDegreeError
from .exactmath import QuadExt, bernoulli, bernoulli_poly_third
from .modforms import (
    ModularForm,
    check_level,
    eisenstein_G,
    eisenstein_G_form,
    expand,
    level_generator,
)
from .qseries import QUADRATIC, QSeries, substitute_qpow


@dataclass(frozen=True)
class C2Series:
    level: int
    coeffs: tuple[QSeries, ...]

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, a: int) -> QSeries:
        return self.coeffs[a]


def _check_deg(deg, minimum=1):
    if not isinstance(deg, int) or deg < minimum:
        raise InvalidInputError(f"degree must be an integer >= {minimum}, got {deg!r}")


def ell_coefficient_form(level: int, j: int) -> ModularForm:
    """Coefficient of ``c2**j`` in ``Ell(lambda_H)`` as a form of weight ``2j``."""
    check_level(level)
    if j == 0:
        return ModularForm.constant(level, 1)
    if j == 1:
        if level == 3:
            return ModularForm.generator(3, "E1") ** 2 * Fraction(-1, 4)
        return ModularForm.generator(2, "delta") * Fraction(-2, 3)
    return eisenstein_G_form(2 * j, level) * Fraction(2 * (-1) ** j, factorial(2 * j - 2))


def ell_closed(level: int, deg: int, P: int) -> C2Series:
    _check_deg(deg)
    return C2Series(level, tuple(expand(ell_coefficient_form(level, j), P) for j in range(deg + 1)))


def ell_const(level: int, deg: int) -> list[Fraction]:
    """Constant q-terms of the closed form (the stable chi_{-zeta} genus)."""
    check_level(level)
    _check_deg(deg)
    out = [Fraction(1), Fraction(-1, 4) if level == 3 else Fraction(-1, 6)]
    for k in range(2, deg + 1):
        out.append((-1) ** k * (-bernoulli(2 * k) / (4 * k)) * Fraction(2, factorial(2 * k - 2)))
    return out


def _exp(series: Sequence, one) -> list:
    """Formal exponential of ``sum_{j>=1} series[j] t^j`` truncated at ``len(series)``."""
    out = [one]
    for a in range(1, len(series)):
        acc = None
        for j in range(1, a + 1):
            term = (series[j] * out[a - j]).scale(j)
            acc = term if acc is None else acc + term
        out.append(acc.scale(Fraction(1, a)))
    return out


def g_star(two_n: int, P: int) -> QSeries:
    """``G_2n(tau) - 3^(2n-1) G_2n(3 tau)``."""
    g = eisenstein_G(two_n, P)
    return g - substitute_qpow(g, 3).scale(3 ** (two_n - 1))


def ell_oracle_level3(deg: int, P: int) -> C2Series:
    _check_deg(deg)
    s = [QSeries.zero(P)]
    for n in range(1, deg + 1):
        s.append(g_star(2 * n, P).scale(Fraction(6 * (-1) ** n, factorial(2 * n))))
    return C2Series(3, tuple(_exp(s, QSeries.constant(1, P))))


def odd_eisenstein_level3(weight: int, P: int) -> QSeries:
    """``G_{2k+1}^{(-omega)}`` for weights 1 and 3, with ``e^w - e^-w = s``."""
    if weight not in (1, 3):
        raise UnsupportedDegreeError("odd level-3 Eisenstein data is available for weights 1 and 3 only")
    k = (weight - 1) // 2
    factor = QuadExt(0, Fraction(1, 2)) * (Fraction(3 ** (2 * k)) * bernoulli_poly_third(weight) / weight)
    gen = level_generator(3, "E1" if weight == 1 else "E3", P)
    return gen.scale(factor)


def char_series_level3(xdeg: int, P: int) -> list[QSeries]:
    """Coefficients of ``x^0..x^xdeg`` in the level-3 characteristic series."""
    if not isinstance(xdeg, int) or xdeg < 0:
        raise InvalidInputError(f"x-degree must be a nonnegative integer, got {xdeg!r}")
    if xdeg > 4:
        raise UnsupportedDegreeError("the characteristic series is only available to x^4")
    s: list[QSeries] = [QSeries.zero(P, QUADRATIC)]
    for j in range(1, xdeg + 1):
        if j % 2 == 0:
            term = g_star(j, P).scale(Fraction(3, factorial(j))).to_domain(QUADRATIC)
        else:
            term = odd_eisenstein_level3(j, P).scale(Fraction(-2, factorial(j)))
        s.append(term)
    return _exp(s, QSeries.constant(1, P).to_domain(QUADRATIC))


def char_product_level3(xdeg: int, P: int) -> list[QSeries]:
    """Coefficients of ``Q(x) Q(-x)`` up to ``x^xdeg``."""
    q = char_series_level3(xdeg, P)
    out = []
    for m in range(xdeg + 1):
        acc = QSeries.zero(P, QUADRATIC)
        for i in range(m + 1):
            j = m - i
            acc = acc + (q[i] * q[j]).scale((-1) ** j)
        out.append(acc)
    return out


def todd_series(deg: int) -> list[Fraction]:
    """Coefficients of ``c2^k`` in ``Td(lambda_H)``, ``k = 0..deg``."""
    _check_deg(deg, 0)
    return [Fraction(1)] + [
        (-1) ** (k + 1) * bernoulli(2 * k) / (2 * k) / factorial(2 * k - 2) for k in range(1, deg + 1)
    ]
