"""Divided congruences and reduction modulo the f-invariant indeterminacy.

An element ``h`` of filtration ``k`` is a sum of forms of weight at most
``k``. It is *trivial* when ``h - c - m`` expands in ``Z[1/N][[q]]`` for
some rational constant ``c`` and some ``m`` in ``M_k`` (tensored with Q).

Decision procedure: put the expansions of ``1`` and of the weight-``k``
monomials into the columns of an integer matrix, append the scaled
expansion of ``h``, and bring the left block to integral echelon form with
unimodular row operations. The rows below the rank then hold the image of
``h`` under a surjection ``Z^P -> Z^(P - rank)`` whose kernel is the span of
the columns, so ``h`` is trivial iff those entries lie in ``Z[1/N]`` and the
order of ``h`` is the least common ``N``-free denominator. Every verdict is
recomputed at precision ``2P``; a disagreement raises
:class:`PrecisionUnstableError`, as does a precision too small for the
truncated expansion to determine a form of weight ``<= k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Mapping

from .errors import InvalidInputError, PrecisionUnstableError
from .linalg import echelon_with_rhs, solve_rational
from .modforms import (
    ModularForm,
    _monomial_ints,
    basis_monomials,
    check_level,
    expand,
    monomial_expansion,
    register_cache,
)
from .qseries import QSeries, _to_ints


def default_precision(k: int) -> int:
    return max(48, 8 * (k + 1))


class FilteredElement:
    """Inhomogeneous sum of forms of weights ``0..filtration``, stored per weight."""

    __slots__ = ("level", "filtration", "components")

    def __init__(self, level: int, filtration: int, components: Mapping[int, ModularForm] | None = None):
        check_level(level)
        if not isinstance(filtration, int) or filtration < 1:
            raise InvalidInputError(f"filtration must be a positive integer, got {filtration!r}")
        comps: dict[int, ModularForm] = {}
        for w, f in (components or {}).items():
            if f.level != level:
                raise InvalidInputError("component level does not match")
            if f.is_zero():
                continue
            if f.weights() != [w]:
                raise InvalidInputError(f"component stored at weight {w} has weights {f.weights()}")
            if w > filtration:
                raise InvalidInputError(f"weight {w} exceeds filtration {filtration}")
            comps[w] = f
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "filtration", filtration)
        object.__setattr__(self, "components", dict(sorted(comps.items())))

    def __setattr__(self, name, value):
        raise AttributeError("FilteredElement is immutable")

    @classmethod
    def from_form(cls, form: ModularForm, filtration: int) -> "FilteredElement":
        return cls(form.level, filtration, {w: form.component(w) for w in form.weights()})

    @classmethod
    def zero(cls, level: int, filtration: int) -> "FilteredElement":
        return cls(level, filtration)

    def as_form(self) -> ModularForm:
        out = ModularForm(self.level)
        for f in self.components.values():
            out = out + f
        return out

    def is_zero(self) -> bool:
        return not self.components

    def weights(self) -> list[int]:
        return list(self.components)

    def _check(self, other: "FilteredElement"):
        if not isinstance(other, FilteredElement):
            raise InvalidInputError("expected a FilteredElement")
        if (other.level, other.filtration) != (self.level, self.filtration):
            raise InvalidInputError("elements must share level and filtration")

    def __add__(self, other):
        if not isinstance(other, FilteredElement):
            return NotImplemented
        self._check(other)
        return FilteredElement.from_form(self.as_form() + other.as_form(), self.filtration)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        if not isinstance(other, FilteredElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
            return FilteredElement(self.level, self.filtration, {w: f * c for w, f in self.components.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FilteredElement):
            return NotImplemented
        return (self.level, self.filtration, self.components) == (other.level, other.filtration, other.components)

    def __hash__(self):
        return hash((self.level, self.filtration, tuple(self.components.items())))

    def __repr__(self):
        return f"FilteredElement(level={self.level}, k={self.filtration}, {self.as_form()!r})"

    def to_json(self, terms: int = 12) -> dict:
        return {
            "level": self.level,
            "filtration": self.filtration,
            "components": {
                str(w): {"generators": f.to_json(), "q_expansion": [str(c) for c in expand(f, terms)]}
                for w, f in self.components.items()
            },
        }


def total_expansion(h: FilteredElement, P: int) -> QSeries:
    return expand(h.as_form(), P)


# ---------------------------------------------------------------------------
# lattice reduction


def _n_free(d: int, N: int) -> int:
    while d % N == 0:
        d //= N
    return d


@dataclass
class _Reduction:
    P: int
    rows: list
    pivots: list
    scales: list  # column j's integer vector times scales[j] is basis vector j
    rhs_den: int
    monomials: list  # None for the constant column

    def quotient(self) -> list[Fraction]:
        r = len(self.scales)
        return [Fraction(row[r], self.rhs_den) for row in self.rows[len(self.pivots):]]


def _reduce(h: FilteredElement, P: int) -> _Reduction:
    k = h.filtration
    mons = basis_monomials(k, h.level)
    spanning = [QSeries.constant(1, P)] + [monomial_expansion(h.level, m, P) for m in mons]
    cols, scales = [], []
    for s in spanning:
        ints, den = _to_ints(s.coeffs)
        cols.append(ints)
        scales.append(Fraction(1, den))
    v = total_expansion(h, P)
    vi, vden = _to_ints(v.coeffs)
    rows, pivots = echelon_with_rhs(cols, vi)
    if len(pivots) < len(cols):
        raise PrecisionUnstableError(
            f"precision {P} does not separate the {len(cols)} indeterminacy generators at weight {k}"
        )
    return _Reduction(P, rows, pivots, scales, vden, [None] + mons)


_RANK_PRIME = (1 << 61) - 1


def _rank_mod_p(vectors: list[list[int]], p: int) -> int:
    rows = [[x % p for x in v] for v in vectors]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        sel = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        piv = [(x * inv) % p for x in rows[rank]]
        rows[rank] = piv
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], piv)]
        rank += 1
        if rank == len(rows):
            break
    return rank


@register_cache
@lru_cache(maxsize=None)
def separates_filtration(level: int, k: int, P: int) -> bool:
    """True iff truncation at ``q^P`` is injective on forms of weight ``<= k``."""
    vecs = []
    for w in range(k + 1):
        for m in basis_monomials(w, level):
            ints, _ = _monomial_ints(level, m, P)
            vecs.append(list(ints))
    if len(vecs) > P:
        return False
    if _rank_mod_p(vecs, _RANK_PRIME) == len(vecs):
        return True
    _, rank, _ = solve_rational(vecs, [0] * P)
    return rank == len(vecs)


def _order_at(h: FilteredElement, P: int) -> int:
    if h.is_zero():
        return 1
    if not separates_filtration(h.level, h.filtration, P):
        raise PrecisionUnstableError(
            f"precision {P} does not determine forms of weight <= {h.filtration}; verdict underdetermined"
        )
    red = _reduce(h, P)
    return lcm(1, *(_n_free(x.denominator, h.level) for x in red.quotient()))


def _precision(h: FilteredElement, P: int | None) -> int:
    if P is None:
        return default_precision(h.filtration)
    if not isinstance(P, int) or isinstance(P, bool) or P < 1:
        raise InvalidInputError(f"precision must be a positive integer, got {P!r}")
    return P


def _stable_order(h: FilteredElement, P: int | None) -> tuple[int, int]:
    P = _precision(h, P)
    first = _order_at(h, P)
    second = _order_at(h, 2 * P)
    if first != second:
        raise PrecisionUnstableError(
            f"order {first} at precision {P} but {second} at precision {2 * P}"
        )
    return first, P


def torsion_order(h: FilteredElement, P: int | None = None) -> int:
    """Least ``t >= 1`` with ``t*h`` in the indeterminacy."""
    return _stable_order(h, P)[0]


def in_indeterminacy(h: FilteredElement, P: int | None = None) -> bool:
    P = _precision(h, P)
    first = _order_at(h, P) == 1
    second = _order_at(h, 2 * P) == 1
    if first != second:
        raise PrecisionUnstableError(f"membership {first} at precision {P} but {second} at {2 * P}")
    return first


def congruent(f: FilteredElement, g: FilteredElement, P: int | None = None) -> bool:
    f._check(g)
    return in_indeterminacy(f - g, P)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    trivial: bool
    precision: int
    constant: Fraction | None = None
    top_form: ModularForm | None = None
    remainder: list[Fraction] = field(default_factory=list)
    obstruction: tuple[int, Fraction] | None = None

    def to_json(self) -> dict:
        out: dict = {"trivial": self.trivial, "precision": self.precision}
        if self.trivial:
            out["constant"] = str(self.constant)
            out["top_weight_form"] = self.top_form.to_json()
            out["integral_remainder_head"] = [str(c) for c in self.remainder]
        else:
            idx, val = self.obstruction
            out["obstruction"] = {"quotient_coordinate": idx, "value": str(val)}
        return out


def certificate(h: FilteredElement, P: int | None = None, head: int = 8) -> Certificate:
    """Witness for the verdict of :func:`in_indeterminacy` at precision ``P``.

    On success returns ``c`` and ``m`` with ``h - c - m`` N-integral (checked
    directly on the expansion); otherwise the first quotient coordinate whose
    denominator is not a power of ``N``.
    """
    P = _precision(h, P)
    trivial = in_indeterminacy(h, P)
    if h.is_zero():
        return Certificate(True, P, Fraction(0), ModularForm(h.level), [Fraction(0)] * min(head, P))
    red = _reduce(h, P)
    r = len(red.scales)
    if not trivial:
        for i, x in enumerate(red.quotient()):
            if _n_free(x.denominator, h.level) != 1:
                return Certificate(False, P, obstruction=(i, x))
        raise AssertionError("nontrivial verdict without obstruction")
    # back substitution on the pivot block: H lam = y_top
    lam = [Fraction(0)] * r
    for i in range(len(red.pivots) - 1, -1, -1):
        row = red.rows[i]
        col = red.pivots[i]
        acc = Fraction(row[r], red.rhs_den) - sum(row[j] * lam[j] for j in range(col + 1, r))
        lam[col] = acc / row[col]
    coeffs = [lam[j] / red.scales[j] for j in range(r)]
    constant = coeffs[0]
    top = ModularForm(h.level, {m: c for m, c in zip(red.monomials[1:], coeffs[1:])})
    rem = total_expansion(h, P) - constant - expand(top, P)
    if not rem.is_N_integral(h.level):
        raise AssertionError("certificate remainder is not integral")
    return Certificate(True, P, constant, top, list(rem.coeffs[:head]))
