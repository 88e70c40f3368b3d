"""Integral cohomology of the quaternionic flag manifold Sp(n)/Sp(1)^n.

The ring is ``Z[t_1..t_n]`` modulo the positive-degree symmetric
polynomials, ``t_i = c_2`` of the i-th tautological line (cohomological
degree 4; all degrees below are polynomial degrees in the ``t_i``).

Normal forms use the Groebner basis ``h_k(t_1, ..., t_{n-k+1})``,
``k = 1..n``, for lex order with ``t_n > ... > t_1``; the leading term of
``h_k`` is ``t_{n-k+1}^k``, so normal monomials satisfy ``a_i <= n - i``.
The fundamental class is oriented so that ``t_1^(n-1) t_2^(n-2) ... t_(n-1)``
pairs to +1.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Mapping

from .errors import InvalidInputError

Monomial = tuple[int, ...]


class CoinvariantPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, int] | None = None):
        if not isinstance(n, int) or n < 1:
            raise InvalidInputError(f"number of variables must be a positive integer, got {n!r}")
        clean: dict[Monomial, int] = {}
        for mon, c in (terms or {}).items():
            mon = tuple(int(e) for e in mon)
            if len(mon) != n or min(mon, default=0) < 0:
                raise InvalidInputError(f"bad exponent tuple {mon} for n={n}")
            if not isinstance(c, int):
                raise InvalidInputError("coefficients must be integers")
            c = clean.get(mon, 0) + c
            if c:
                clean[mon] = c
            else:
                clean.pop(mon, None)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", dict(sorted(clean.items(), reverse=True)))

    def __setattr__(self, name, value):
        raise AttributeError("CoinvariantPoly is immutable")

    @classmethod
    def monomial(cls, n: int, exps: Monomial, coeff: int = 1) -> "CoinvariantPoly":
        return cls(n, {tuple(exps): coeff})

    @classmethod
    def variable(cls, n: int, i: int) -> "CoinvariantPoly":
        if not 1 <= i <= n:
            raise InvalidInputError(f"variable index {i} out of range 1..{n}")
        return cls.monomial(n, tuple(1 if j == i - 1 else 0 for j in range(n)))

    def __add__(self, other):
        if not isinstance(other, CoinvariantPoly) or other.n != self.n:
            return NotImplemented
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return CoinvariantPoly(self.n, t)

    def __neg__(self):
        return CoinvariantPoly(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return CoinvariantPoly(self.n, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, CoinvariantPoly) or other.n != self.n:
            return NotImplemented
        t: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                t[m] = t.get(m, 0) + c1 * c2
        return CoinvariantPoly(self.n, t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = CoinvariantPoly.monomial(self.n, (0,) * self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, CoinvariantPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree_set(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"CoinvariantPoly(n={self.n}, {format_poly(self)})"


def _complete_homogeneous_tail(i: int, k: int) -> list[Monomial]:
    """Monomials of ``h_k(t_1..t_i)`` other than ``t_i^k`` (exponents on t_1..t_i)."""
    out = []
    for combo in combinations_with_replacement(range(i), k):
        e = [0] * i
        for v in combo:
            e[v] += 1
        if e[i - 1] != k:
            out.append(tuple(e))
    return out


@lru_cache(maxsize=None)
def _normal_form(n: int, mon: Monomial) -> tuple[tuple[Monomial, int], ...]:
    # largest variable first: t_n > ... > t_1
    for i in range(n, 0, -1):
        bound = n - i
        if mon[i - 1] > bound:
            k = bound + 1
            rest = list(mon)
            rest[i - 1] -= k
            acc: dict[Monomial, int] = {}
            for tail in _complete_homogeneous_tail(i, k):
                new = tuple(rest[j] + (tail[j] if j < i else 0) for j in range(n))
                for m, c in _normal_form(n, new):
                    acc[m] = acc.get(m, 0) - c
            return tuple((m, c) for m, c in acc.items() if c)
    return ((mon, 1),)


def reduce(p: CoinvariantPoly) -> CoinvariantPoly:
    """Normal form modulo the symmetric ideal."""
    acc: dict[Monomial, int] = {}
    for mon, c in p.terms.items():
        for m, d in _normal_form(p.n, mon):
            acc[m] = acc.get(m, 0) + c * d
    return CoinvariantPoly(p.n, acc)


def is_normal(p: CoinvariantPoly) -> bool:
    return all(all(m[i] <= p.n - 1 - i for i in range(p.n)) for m in p.terms)


def top_monomial(n: int) -> Monomial:
    return tuple(n - 1 - i for i in range(n))


def top_degree(n: int) -> int:
    return n * (n - 1) // 2


def top_pairing(p: CoinvariantPoly) -> int:
    """Evaluation on the fundamental class (0 off the top degree)."""
    return reduce(p).terms.get(top_monomial(p.n), 0)


def elementary_symmetric(n: int, k: int) -> CoinvariantPoly:
    from itertools import combinations

    terms = {}
    for idx in combinations(range(n), k):
        terms[tuple(1 if j in idx else 0 for j in range(n))] = 1
    return CoinvariantPoly(n, terms)


@dataclass(frozen=True)
class ChernGrid:
    """Pairings ``<eta^a omega^(n-a), [B]>`` for ``a = 0..n`` on a base of dimension ``4n``."""

    n_formula: int
    pairings: tuple[int, ...]
    level: int = 3

    def __post_init__(self):
        if not isinstance(self.n_formula, int) or isinstance(self.n_formula, bool) or self.n_formula < 0:
            raise InvalidInputError(f"n must be a nonnegative integer, got {self.n_formula!r}")
        if self.level not in (2, 3):
            raise InvalidInputError(f"level must be 2 or 3, got {self.level!r}")
        pairings = tuple(self.pairings)
        if len(pairings) != self.n_formula + 1:
            raise InvalidInputError(f"expected {self.n_formula + 1} pairings, got {len(pairings)}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in pairings):
            raise InvalidInputError("pairings must be integers")
        object.__setattr__(self, "pairings", pairings)

    @property
    def base_dimension(self) -> int:
        return 4 * self.n_formula


def taut_chern_grid(n: int, i: int, j: int, level: int = 3) -> ChernGrid:
    """Chern grid of the tautological lines ``(eta, omega) = (t_i, t_j)`` on Sp(n)/Sp(1)^n."""
    if not isinstance(n, int) or n < 2:
        raise InvalidInputError(f"flag size must be an integer >= 2, got {n!r}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise InvalidInputError(f"line indices must lie in 1..{n}")
    if i == j:
        raise InvalidInputError("the two tautological lines must be distinct")
    m = top_degree(n)
    ti = CoinvariantPoly.variable(n, i)
    tj = CoinvariantPoly.variable(n, j)
    return ChernGrid(m, tuple(top_pairing(ti**a * tj ** (m - a)) for a in range(m + 1)), level)


# ---------------------------------------------------------------------------
# text form: "t1*t2^2 - 3*t1^2*t2 + 2"

_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(n: int, text: str) -> CoinvariantPoly:
    text = text.strip()
    if not text:
        raise InvalidInputError("empty polynomial")
    total = CoinvariantPoly(n)
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise InvalidInputError(f"cannot parse polynomial near {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign
        exps = [0] * n
        for factor in m.group(2).split("*"):
            factor = factor.strip()
            if not factor:
                raise InvalidInputError(f"empty factor in {m.group(2)!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            fm = re.fullmatch(r"t(\d+)(?:\^(\d+))?", factor)
            if not fm:
                raise InvalidInputError(f"bad factor {factor!r}")
            idx = int(fm.group(1))
            if not 1 <= idx <= n:
                raise InvalidInputError(f"variable t{idx} out of range for n={n}")
            exps[idx - 1] += int(fm.group(2) or 1)
        total = total + CoinvariantPoly.monomial(n, tuple(exps), coeff)
        pos = m.end()
    return total


def format_poly(p: CoinvariantPoly) -> str:
    if not p.terms:
        return "0"
    out = []
    for mon, c in p.terms.items():
        factors = [f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}" for i, e in enumerate(mon) if e]
        mag = abs(c)
        body = "*".join(([str(mag)] if mag != 1 or not factors else []) + factors)
        sign = "-" if c < 0 else "+"
        out.append(body if not out and sign == "+" else (f"-{body}" if not out else f"{sign} {body}"))
    return " ".join(out)
