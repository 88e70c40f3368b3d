"""Truncated q-expansions with exact coefficients.

A :class:`QSeries` of precision ``P`` is known modulo ``q**P``. Binary
operations truncate to the smaller precision of their operands.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import InvalidInputError, UnsupportedDomainError
from .exactmath import QuadExt, as_fraction

RATIONAL = "Q"
QUADRATIC = "Q(sqrt-3)"


def _coerce(c, domain):
    if domain == QUADRATIC:
        return QuadExt.coerce(c)
    if isinstance(c, QuadExt):
        if not c.is_rational():
            raise UnsupportedDomainError("irrational coefficient in a rational series")
        return c.re
    return as_fraction(c)


def _join_domain(a: "QSeries", b: "QSeries") -> str:
    return QUADRATIC if QUADRATIC in (a.domain, b.domain) else RATIONAL


def _to_ints(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def convolve_ints(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two integer sequences."""
    out = [0] * n
    nb = min(len(b), n)
    for i in range(min(len(a), n)):
        x = a[i]
        if not x:
            continue
        for j in range(min(nb, n - i)):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


class QSeries:
    __slots__ = ("coeffs", "domain")

    def __init__(self, coeffs: Iterable = (), precision: int | None = None, domain: str | None = None):
        coeffs = list(coeffs)
        if domain is None:
            domain = QUADRATIC if any(isinstance(c, QuadExt) and not c.is_rational() for c in coeffs) else RATIONAL
        if domain not in (RATIONAL, QUADRATIC):
            raise InvalidInputError(f"unknown coefficient domain {domain!r}")
        if precision is not None:
            if precision < 0:
                raise InvalidInputError("precision must be nonnegative")
            coeffs = coeffs[:precision] + [0] * (precision - len(coeffs))
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "coeffs", tuple(_coerce(c, domain) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def constant(cls, c, precision: int) -> "QSeries":
        return cls([c], precision)

    @classmethod
    def zero(cls, precision: int, domain: str = RATIONAL) -> "QSeries":
        return cls([], precision, domain)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, j):
        return self.coeffs[j]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, precision: int) -> "QSeries":
        if precision > self.precision:
            raise InvalidInputError(f"cannot raise precision {self.precision} to {precision}")
        return QSeries(self.coeffs[:precision], domain=self.domain)

    def to_domain(self, domain: str) -> "QSeries":
        return QSeries(self.coeffs, domain=domain)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def real_part(self) -> "QSeries":
        if self.domain == RATIONAL:
            return self
        return QSeries([c.re for c in self.coeffs], domain=RATIONAL)

    def imag_part(self) -> "QSeries":
        if self.domain == RATIONAL:
            return QSeries.zero(self.precision)
        return QSeries([c.im for c in self.coeffs], domain=RATIONAL)

    # arithmetic ------------------------------------------------------------
    def _binary(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction, QuadExt)) and not isinstance(other, bool):
            return QSeries.constant(other, self.precision)
        return None

    def __add__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        p = min(self.precision, o.precision)
        return QSeries([self.coeffs[j] + o.coeffs[j] for j in range(p)], domain=_join_domain(self, o))

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], domain=self.domain)

    def __sub__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        domain = QUADRATIC if isinstance(c, QuadExt) and not c.is_rational() else self.domain
        c = _coerce(c, domain)
        return QSeries([c * x for x in self.coeffs], domain=domain)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction, QuadExt)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, QSeries):
            return NotImplemented
        return self.scale(1 / as_fraction(c) if not isinstance(c, QuadExt) else QuadExt(1) / c)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise InvalidInputError("only nonnegative integer powers are supported")
        result = QSeries.constant(1, self.precision).to_domain(self.domain)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.precision == other.precision and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QSeries({render(self)})"

    def __str__(self):
        return render(self)

    def substitute_qpow(self, t: int) -> "QSeries":
        return substitute_qpow(self, t)

    def is_N_integral(self, N: int) -> bool:
        return is_N_integral(self, N)


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product truncated at ``min(a.precision, b.precision)``."""
    p = min(a.precision, b.precision)
    if a.domain == RATIONAL and b.domain == RATIONAL:
        ai, ad = _to_ints(a.coeffs[:p])
        bi, bd = _to_ints(b.coeffs[:p])
        d = ad * bd
        return QSeries([Fraction(x, d) for x in convolve_ints(ai, bi, p)])
    out = []
    for n in range(p):
        acc = QuadExt(0)
        for i in range(n + 1):
            x = a.coeffs[i]
            if x:
                acc = acc + x * b.coeffs[n - i]
        out.append(acc)
    return QSeries(out, domain=QUADRATIC)


def linear_combine(terms: Sequence[tuple[object, QSeries]]) -> QSeries:
    """Exact linear combination ``sum(c * s for c, s in terms)``."""
    terms = list(terms)
    if not terms:
        raise InvalidInputError("linear_combine needs at least one term")
    p = min(s.precision for _, s in terms)
    domains = {s.domain for _, s in terms}
    if len(domains) > 1:
        raise UnsupportedDomainError("linear_combine needs a common coefficient domain")
    acc = terms[0][1].truncate(p).scale(terms[0][0])
    for c, s in terms[1:]:
        acc = acc + s.scale(c)
    return acc


def substitute_qpow(a: QSeries, t: int) -> QSeries:
    """Replace ``q`` by ``q**t``; the precision is kept."""
    if not isinstance(t, int) or t < 1:
        raise InvalidInputError(f"q-power substitution needs t >= 1, got {t!r}")
    out = [0] * a.precision
    for j in range(0, (a.precision + t - 1) // t):
        out[j * t] = a.coeffs[j]
    return QSeries(out, domain=a.domain)


def _is_power_of(d: int, N: int) -> bool:
    while d % N == 0:
        d //= N
    return d == 1


def is_N_integral(a: QSeries, N: int) -> bool:
    """True iff every coefficient lies in Z[1/N].

    Rational coefficients only: Z[zeta_N, 1/N] meets Q in Z[1/N].
    """
    if N not in (2, 3):
        raise InvalidInputError(f"level must be 2 or 3, got {N!r}")
    if a.domain != RATIONAL:
        raise UnsupportedDomainError("integrality is only decided for rational series")
    return all(_is_power_of(c.denominator, N) for c in a.coeffs)


def _fmt_coeff(c) -> str:
    return str(c)


def render(a: QSeries) -> str:
    """Text form ``c0 + c1*q + ... + O(q^P)`` with exact fractions."""
    parts: list[str] = []
    for j, c in enumerate(a.coeffs):
        if not c:
            continue
        mon = "" if j == 0 else ("q" if j == 1 else f"q^{j}")
        if isinstance(c, QuadExt) and not c.is_rational():
            if c.re:
                body, sign = f"({c.re} + {c.im}*s)", "+"
            else:
                sign = "-" if c.im < 0 else "+"
                body = "s" if abs(c.im) == 1 else f"{abs(c.im)}*s"
            text = body if not mon else f"{body}*{mon}"
        else:
            c = c.re if isinstance(c, QuadExt) else c
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mon and mag == 1:
                text = mon
            elif mon:
                text = f"{mag}*{mon}"
            else:
                text = str(mag)
        if not parts:
            parts.append(text if sign == "+" else f"-{text}")
        else:
            parts.append(f"{sign} {text}")
    parts.append(("+ " if parts else "") + f"O(q^{a.precision})")
    return " ".join(parts)
