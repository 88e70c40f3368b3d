"""f-invariant of the double quaternionic transfer and e-invariant of the single one.

``f_formula`` evaluates the closed Bernoulli/Eisenstein sum from a Chern
grid. ``f_oracle`` instead multiplies the two genus series directly (the
full elliptic genus on ``omega``, its constant term on ``eta``) and keeps
the extremal terms the closed sum drops; the two agree modulo the
indeterminacy whenever the grid satisfies the index-theoretic divisibility.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .divcong import (
    FilteredElement,
    congruent,
    default_precision,
    in_indeterminacy,
    torsion_order,
)
from .errors import InvalidInputError, OutOfScopeError
from .exactmath import bernoulli
from .flagcohom import ChernGrid, taut_chern_grid
from .genus import ell_coefficient_form, ell_const
from .modforms import ModularForm, eisenstein_G_form, level1_form

LABEL_ZERO = "0"
LABEL_B44 = "beta_4/4"
LABEL_B42 = "beta_4/2"
LABEL_B422 = "beta_4/2,2"
UNRECOGNIZED = "unrecognized"


def filtration_for(n: int) -> int:
    return 2 * n + 4


def _check_grid(grid: ChernGrid) -> int:
    if not isinstance(grid, ChernGrid):
        raise InvalidInputError("expected a ChernGrid")
    if grid.n_formula == 0:
        raise OutOfScopeError("a zero-dimensional base is not covered by the transfer formula")
    return grid.n_formula


def f_formula(grid: ChernGrid) -> FilteredElement:
    """Closed-form representative of the f-invariant, filtration ``2n + 4``."""
    n = _check_grid(grid)
    out = ModularForm(grid.level)
    for k in range(1, n):
        p = grid.pairings[k]
        if not p:
            continue
        c = (-1) ** (n + 1) * bernoulli(2 * k + 2) / (k + 1) / (factorial(2 * k) * factorial(2 * n - 2 * k)) * p
        out = out + eisenstein_G_form(2 * n - 2 * k + 2, grid.level) * c
    return FilteredElement.from_form(out, filtration_for(n))


def f_oracle(grid: ChernGrid) -> FilteredElement:
    """Product of ``(Ell(omega)-1)/omega`` and ``(Ell_0(eta)-1)/eta`` paired with [B]."""
    n = _check_grid(grid)
    consts = ell_const(grid.level, n + 1)
    out = ModularForm(grid.level)
    for a in range(n + 1):
        p = grid.pairings[a]
        if not p:
            continue
        out = out + ell_coefficient_form(grid.level, n - a + 1) * (consts[a + 1] * p)
    return FilteredElement.from_form(out, filtration_for(n))


def e_single(n: int, index: int) -> Fraction:
    """e-invariant of the single quaternionic transfer on a 4n-dimensional base, in [0, 1)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    if not isinstance(index, int):
        raise InvalidInputError("the twisted Dirac index must be an integer")
    return (bernoulli(2 * n + 2) / (4 * n + 4) * index) % 1


@dataclass(frozen=True)
class Finding:
    kind: str  # "violation" or "warning"
    message: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "message": self.message}


def validate_divisibility(grid: ChernGrid) -> list[Finding]:
    """Index-theoretic divisibility constraints a geometric grid must satisfy."""
    n = grid.n_formula
    out: list[Finding] = []
    if n == 0:
        return out
    d = factorial(2 * n) // 2
    for a, name in ((0, "omega^n"), (n, "eta^n")):
        p = grid.pairings[a]
        if p % d:
            out.append(Finding("violation", f"<{name},[B]> = {p} is not divisible by (2n)!/2 = {d}"))
        elif n % 2 == 0 and (p // d) % 2:
            out.append(Finding("warning", f"twisted Dirac index {p // d} from <{name},[B]> is odd although n is even"))
    if n == 3:
        s = grid.pairings[1] + grid.pairings[2]
        if s % 12:
            out.append(Finding("violation", f"<eta^2 omega + eta omega^2,[B]> = {s} is not divisible by 12"))
    return out


# ---------------------------------------------------------------------------
# reference representatives (level 3)


def beta_4_4() -> FilteredElement:
    g = (level1_form(4, 3) - 1) / 240
    return FilteredElement.from_form(g * g / 2, 8)


def beta_4_2_2() -> FilteredElement:
    x = (ModularForm.generator(3, "E1") ** 2 - 1) / 4
    return FilteredElement.from_form(x**4 / 4 + x**3 / 2, 10)


def beta_4_2() -> FilteredElement:
    return beta_4_2_2() * 2


@dataclass(frozen=True)
class BetaEntry:
    label: str
    filtration: int
    order: int
    signed: bool

    def representative(self) -> FilteredElement:
        return {LABEL_B44: beta_4_4, LABEL_B422: beta_4_2_2, LABEL_B42: beta_4_2}[self.label]()


BETA_TABLE = (
    BetaEntry(LABEL_B44, 8, 2, False),
    BetaEntry(LABEL_B422, 10, 4, True),
    BetaEntry(LABEL_B42, 10, 2, False),
)


def classify(h: FilteredElement, P: int | None = None) -> str | None:
    """Match ``h`` against 0 and +-(table entries); ``None`` at level 2 when nontrivial.

    Signed labels carry a ``+``/``-`` prefix; order-two classes do not.
    """
    if in_indeterminacy(h, P):
        return LABEL_ZERO
    if h.level != 3:
        return None
    for entry in BETA_TABLE:
        if entry.filtration != h.filtration:
            continue
        rep = entry.representative()
        if congruent(h, rep, P):
            return f"+{entry.label}" if entry.signed else entry.label
        if entry.signed and congruent(h, -rep, P):
            return f"-{entry.label}"
    return UNRECOGNIZED


def unsigned(label: str | None) -> str | None:
    return label.lstrip("+-") if label else label


@dataclass
class TransferResult:
    grid: ChernGrid
    representative: FilteredElement
    classification: str | None
    torsion_order: int
    validation: list[Finding] = field(default_factory=list)
    oracle_agrees: bool | None = None
    precision_used: int = 0
    stable_under_doubling: bool = True

    def to_json(self) -> dict:
        return {
            "input": {"n": self.grid.n_formula, "level": self.grid.level, "pairings": list(self.grid.pairings)},
            "representative": self.representative.to_json(),
            "filtration": self.representative.filtration,
            "classification": self.classification,
            "torsion_order": self.torsion_order,
            "oracle_agrees": self.oracle_agrees,
            "validation": [f.to_json() for f in self.validation],
            "precision_used": self.precision_used,
            "stable_under_doubling": self.stable_under_doubling,
            "orientation": "<t1^(n-1) t2^(n-2) ... t(n-1), [B]> = +1",
        }


def transfer_report(grid: ChernGrid, P: int | None = None) -> TransferResult:
    """Validate, evaluate, cross-check against the oracle, classify and order."""
    validation = validate_divisibility(grid)
    rep = f_formula(grid)
    if P is None:
        P = default_precision(rep.filtration)
    agrees = None
    if not any(f.kind == "violation" for f in validation):
        agrees = congruent(f_oracle(grid), rep, P)
    return TransferResult(
        grid=grid,
        representative=rep,
        classification=classify(rep, P),
        torsion_order=torsion_order(rep, P),
        validation=validation,
        oracle_agrees=agrees,
        precision_used=P,
        stable_under_doubling=True,
    )


def flag_report(n: int, i: int, j: int, level: int = 3, P: int | None = None) -> TransferResult:
    """Transfer along the tautological lines ``eta = t_i``, ``omega = t_j`` of Sp(n)/Sp(1)^n."""
    return transfer_report(taut_chern_grid(n, i, j, level), P)
