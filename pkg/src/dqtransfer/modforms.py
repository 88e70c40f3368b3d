"""Modular forms for Gamma_1(2) and Gamma_1(3) in generator coordinates.

Level 3 forms are polynomials in ``E1`` (weight 1) and ``E3`` (weight 3).
Level 2 forms are polynomials in ``delta`` (weight 2, with ``4*delta``
having constant term 1) and ``epsilon`` (weight 4). A monomial is stored as
its exponent pair ``(a, b)``: ``E1**a * E3**b`` or ``delta**a * epsilon**b``.
"""
from __future__ import annotations

import contextlib
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterator, Mapping

from .errors import InsufficientPrecisionError, InvalidInputError, NotAModularFormError
from .exactmath import as_fraction, bernoulli
from .linalg import solve_rational
from .qseries import QSeries, convolve_ints

LEVELS = (2, 3)
GENERATOR_NAMES = {3: ("E1", "E3"), 2: ("delta4", "epsilon")}
GENERATOR_WEIGHTS = {3: (1, 3), 2: (2, 4)}

# name -> {index: delta}; test harness hook, see perturbed_generator()
_PERTURBATIONS: dict[str, dict[int, int]] = {}


def check_level(level) -> int:
    if level not in LEVELS:
        raise InvalidInputError(f"level must be 2 or 3, got {level!r}")
    return level


def _chi3(d: int) -> int:
    r = d % 3
    return 0 if r == 0 else (1 if r == 1 else -1)


def _divisors(n: int) -> Iterator[int]:
    d = 1
    while d * d <= n:
        if n % d == 0:
            yield d
            if d * d != n:
                yield n // d
        d += 1


def sigma(k: int, n: int) -> int:
    return sum(d**k for d in _divisors(n))


def _raw_generator(name: str, P: int) -> list[int]:
    if name == "E1":
        c = [1] + [6 * sum(_chi3(d) for d in _divisors(n)) for n in range(1, P)]
    elif name == "E3":
        c = [1] + [-9 * sum(_chi3(d) * d * d for d in _divisors(n)) for n in range(1, P)]
    elif name == "delta4":
        c = [1] + [24 * sum(d for d in _divisors(n) if d % 2) for n in range(1, P)]
    elif name == "epsilon":
        c = [0] + [sum(d**3 for d in _divisors(n) if (n // d) % 2) for n in range(1, P)]
    else:
        raise InvalidInputError(f"unknown generator {name!r}")
    return c[:P]


@lru_cache(maxsize=None)
def _generator_ints(name: str, P: int) -> tuple[int, ...]:
    c = _raw_generator(name, P)
    for j, d in _PERTURBATIONS.get(name, {}).items():
        if j < P:
            c[j] += d
    return tuple(c)


def level_generator(level: int, name: str, P: int) -> QSeries:
    """q-expansion of a level generator: E1, E3 (level 3); delta4, epsilon (level 2).

    ``delta4`` is ``4*delta``; ``epsilon`` is ``eta(2 tau)^16 / eta(tau)^8``.
    """
    check_level(level)
    if name not in GENERATOR_NAMES[level]:
        raise InvalidInputError(f"generator {name!r} does not belong to level {level}")
    return QSeries(_generator_ints(name, P))


def eisenstein_G(two_k: int, P: int) -> QSeries:
    """``G_2k = -B_2k/(4k) + sum_n sigma_{2k-1}(n) q^n``."""
    if not isinstance(two_k, int) or two_k < 2 or two_k % 2:
        raise InvalidInputError(f"Eisenstein weight must be even and >= 2, got {two_k!r}")
    const = -bernoulli(two_k) / (2 * two_k)
    return QSeries([const] + [sigma(two_k - 1, n) for n in range(1, P)], P)


def eisenstein_E(two_k: int, P: int) -> QSeries:
    """Normalized Eisenstein series with constant term 1."""
    g = eisenstein_G(two_k, P)
    return g.scale(-2 * two_k / bernoulli(two_k))


# ---------------------------------------------------------------------------
# monomials


def monomial_weight(level: int, mon: tuple[int, int]) -> int:
    wa, wb = GENERATOR_WEIGHTS[level]
    return wa * mon[0] + wb * mon[1]


@lru_cache(maxsize=None)
def _power_ints(name: str, e: int, P: int) -> tuple[int, ...]:
    if e == 0:
        return (1,) + (0,) * (P - 1) if P else ()
    if e == 1:
        return _generator_ints(name, P)
    half = _power_ints(name, e // 2, P)
    sq = convolve_ints(half, half, P)
    if e % 2:
        sq = convolve_ints(sq, _generator_ints(name, P), P)
    return tuple(sq)


@lru_cache(maxsize=None)
def _monomial_ints(level: int, mon: tuple[int, int], P: int) -> tuple[tuple[int, ...], int]:
    """Expansion of a monomial as (integer coefficients, common denominator)."""
    ga, gb = GENERATOR_NAMES[level]
    a, b = mon
    c = convolve_ints(_power_ints(ga, a, P), _power_ints(gb, b, P), P)
    den = 4**a if level == 2 else 1
    return tuple(c), den


_DEPENDENT_CACHES: list = []


def register_cache(fn):
    """Register an ``lru_cache``-wrapped function that depends on generator expansions."""
    _DEPENDENT_CACHES.append(fn)
    return fn


def _clear_caches() -> None:
    for f in (_generator_ints, _power_ints, _monomial_ints, level1_form, *_DEPENDENT_CACHES):
        f.cache_clear()


@contextlib.contextmanager
def perturbed_generator(name: str, index: int, delta: int = 1):
    """Temporarily corrupt one coefficient of a generator expansion.

    Fault-injection hook for exercising the verification suite.
    """
    prev = dict(_PERTURBATIONS.get(name, {}))
    _PERTURBATIONS.setdefault(name, {})[index] = _PERTURBATIONS.get(name, {}).get(index, 0) + delta
    _clear_caches()
    try:
        yield
    finally:
        if prev:
            _PERTURBATIONS[name] = prev
        else:
            _PERTURBATIONS.pop(name, None)
        _clear_caches()


class ModularForm:
    """Rational polynomial in the level generators (possibly of mixed weight)."""

    __slots__ = ("level", "terms")

    def __init__(self, level: int, terms: Mapping[tuple[int, int], object] | None = None):
        check_level(level)
        clean: dict[tuple[int, int], Fraction] = {}
        for mon, c in (terms or {}).items():
            a, b = mon
            if a < 0 or b < 0:
                raise InvalidInputError(f"negative exponent in monomial {mon}")
            c = as_fraction(c)
            if c:
                clean[(int(a), int(b))] = c
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: (kv[0][1], kv[0][0]))))

    def __setattr__(self, name, value):
        raise AttributeError("ModularForm is immutable")

    @classmethod
    def constant(cls, level: int, c) -> "ModularForm":
        return cls(level, {(0, 0): c})

    @classmethod
    def generator(cls, level: int, name: str) -> "ModularForm":
        """``E1``, ``E3``, ``delta`` or ``epsilon``; ``delta4`` gives ``4*delta``."""
        check_level(level)
        table = {
            3: {"E1": ((1, 0), 1), "E3": ((0, 1), 1)},
            2: {"delta": ((1, 0), 1), "delta4": ((1, 0), 4), "epsilon": ((0, 1), 1)},
        }[level]
        if name not in table:
            raise InvalidInputError(f"generator {name!r} does not belong to level {level}")
        mon, c = table[name]
        return cls(level, {mon: c})

    def weights(self) -> list[int]:
        return sorted({monomial_weight(self.level, m) for m in self.terms})

    def component(self, weight: int) -> "ModularForm":
        return ModularForm(self.level, {m: c for m, c in self.terms.items() if monomial_weight(self.level, m) == weight})

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def is_zero(self) -> bool:
        return not self.terms

    def _same_level(self, other: "ModularForm"):
        if other.level != self.level:
            raise InvalidInputError("cannot combine forms of different levels")

    def _lift(self, other):
        if isinstance(other, ModularForm):
            self._same_level(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ModularForm.constant(self.level, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            terms[m] = terms.get(m, 0) + c
        return ModularForm(self.level, terms)

    __radd__ = __add__

    def __neg__(self):
        return ModularForm(self.level, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = as_fraction(other)
            return ModularForm(self.level, {m: c * v for m, v in self.terms.items()})
        if not isinstance(other, ModularForm):
            return NotImplemented
        self._same_level(other)
        terms: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                terms[k] = terms.get(k, 0) + c1 * c2
        return ModularForm(self.level, terms)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / as_fraction(c))

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise InvalidInputError("only nonnegative integer powers are supported")
        out = ModularForm.constant(self.level, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, ModularForm):
            return NotImplemented
        return self.level == other.level and self.terms == other.terms

    def __hash__(self):
        return hash((self.level, tuple(self.terms.items())))

    def expand(self, P: int) -> QSeries:
        return expand(self, P)

    def monomial_name(self, mon: tuple[int, int]) -> str:
        return monomial_name(self.level, mon)

    def to_json(self) -> dict[str, str]:
        return {monomial_name(self.level, m): str(c) for m, c in self.terms.items()}

    def __repr__(self):
        if not self.terms:
            return f"ModularForm(level={self.level}, 0)"
        body = " + ".join(f"({c})*{monomial_name(self.level, m)}" for m, c in self.terms.items())
        return f"ModularForm(level={self.level}, {body})"


def monomial_name(level: int, mon: tuple[int, int]) -> str:
    names = ("E1", "E3") if level == 3 else ("delta", "epsilon")
    parts = []
    for g, e in zip(names, mon):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts) if parts else "1"


def monomial_basis(weight: int, level: int) -> list[ModularForm]:
    """Monomials of the given weight, ordered lexicographically in ``(b, a)``."""
    check_level(level)
    if not isinstance(weight, int) or weight < 0:
        raise InvalidInputError(f"weight must be a nonnegative integer, got {weight!r}")
    return [ModularForm(level, {mon: 1}) for mon in basis_monomials(weight, level)]


def basis_monomials(weight: int, level: int) -> list[tuple[int, int]]:
    wa, wb = GENERATOR_WEIGHTS[check_level(level)]
    out = []
    for b in range(weight // wb + 1):
        rest = weight - wb * b
        if rest % wa == 0:
            out.append((rest // wa, b))
    return out


def monomial_expansion(level: int, mon: tuple[int, int], P: int) -> QSeries:
    ints, den = _monomial_ints(level, mon, P)
    return QSeries([Fraction(x, den) for x in ints])


def expand(f: ModularForm, P: int) -> QSeries:
    """q-expansion of ``f`` to precision ``P``."""
    if not f.terms:
        return QSeries.zero(P)
    data = [(c, *_monomial_ints(f.level, m, P)) for m, c in f.terms.items()]
    D = lcm(*(c.denominator * den for c, _, den in data))
    acc = [0] * P
    for c, ints, den in data:
        mult = c.numerator * (D // (c.denominator * den))
        for j, x in enumerate(ints):
            if x:
                acc[j] += mult * x
    return QSeries([Fraction(x, D) for x in acc])


def sturm_precision(weight: int) -> int:
    return 2 * weight + 8


def embed_level1(target: QSeries, weight: int, level: int, P: int | None = None) -> ModularForm:
    """Express ``target`` (a q-expansion) as a weight-``weight`` form at ``level``."""
    check_level(level)
    need = sturm_precision(weight)
    if P is None:
        P = need
    if P < need:
        raise InsufficientPrecisionError(f"embedding weight {weight} needs precision >= {need}, got {P}")
    if target.precision < P:
        raise InsufficientPrecisionError(f"target known to O(q^{target.precision}) only, need {P}")
    mons = basis_monomials(weight, level)
    if not mons:
        if target.truncate(P).is_zero():
            return ModularForm(level)
        raise NotAModularFormError(f"no nonzero forms of weight {weight} at level {level}")
    cols = [monomial_expansion(level, m, P).coeffs for m in mons]
    x, rank, ok = solve_rational(cols, target.truncate(P).coeffs)
    if not ok:
        raise NotAModularFormError(f"series is not a weight-{weight} form for Gamma_1({level})")
    if rank < len(mons):
        raise InsufficientPrecisionError(f"precision {P} does not separate the weight-{weight} basis")
    return ModularForm(level, dict(zip(mons, x)))


@lru_cache(maxsize=None)
def level1_form(two_k: int, level: int) -> ModularForm:
    """The normalized Eisenstein series ``E_2k`` in level generators."""
    P = sturm_precision(two_k)
    return embed_level1(eisenstein_E(two_k, P), two_k, level, P)


def eisenstein_G_form(two_k: int, level: int) -> ModularForm:
    """``G_2k = -B_2k/(4k) E_2k`` in level generators (``2k >= 4``)."""
    return level1_form(two_k, level) * (-bernoulli(two_k) / (2 * two_k))
