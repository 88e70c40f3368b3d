"""Reproduction suite: every published congruence, identity and example as a check."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .divcong import FilteredElement, congruent, in_indeterminacy, torsion_order
from .errors import DQError, PrecisionUnstableError
from .flagcohom import ChernGrid, CoinvariantPoly, parse_poly, reduce
from .genus import char_product_level3, ell_closed, ell_oracle_level3, g_star
from .modforms import ModularForm, eisenstein_E, level1_form, level_generator
from .transfer import (
    LABEL_B44,
    LABEL_B422,
    LABEL_ZERO,
    beta_4_2_2,
    beta_4_4,
    classify,
    f_formula,
    f_oracle,
    flag_report,
    unsigned,
    validate_divisibility,
)

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class VerificationItem:
    id: str
    paper_anchor: str
    status: str
    details: str

    def to_json(self) -> dict:
        return {"id": self.id, "paper_anchor": self.paper_anchor, "status": self.status, "details": self.details}


def _level3_symbols():
    E1 = ModularForm.generator(3, "E1")
    E3 = ModularForm.generator(3, "E3")
    E4 = level1_form(4, 3)
    E6 = level1_form(6, 3)
    return {
        "E1": E1,
        "E3": E3,
        "X": (E1**2 - 1) / 4,
        "Y": (E1**4 - 1) / 8,
        "Z": E1**4 - E1 * E3,
        "A": (E4 - 1) / 16,
        "B": (E6 - 1) / 8,
        "E4": E4,
        "E6": E6,
    }


def _dim12(s, p1, p2):
    return ((s["E6"] - 1) / (240 * 504) * p1 + (s["E4"] - 1) / (504 * 240) * p2) / 12


def _start(s):
    return (s["B"] / 16 - s["A"] / 8) / 4


def _bracket(s):
    X, Y, Z = s["X"], s["Y"], s["Z"]
    return X**4 + X**3 + X**2 / 4 + Y * Z / 2 + Z**2 / 4


# (id, description, builder) with builder(symbols) -> (lhs, rhs); all at filtration 10.
# Symbols: X = (E1^2-1)/4, Y = (E1^4-1)/8, Z = E1^4 - E1 E3, A = (E4-1)/16, B = (E6-1)/8.
CONGRUENCE_CHAIN = [
    ("reduce-to-eta2omega", "(1/12)(...<eta omega^2> + ...<eta^2 omega>) with pairings (-1, 1)",
     lambda s: (_dim12(s, -1, 1), _start(s))),
    ("reduce-to-eta2omega-11", "same reduction with <eta omega^2> = 11, <eta^2 omega> = 1",
     lambda s: (_dim12(s, 11, 1), _start(s))),
    ("E6-to-product", "(1/4)(B/16 - A/8) = -(1/4) A B - (1/2)(A/8)",
     lambda s: (_start(s), -s["A"] * s["B"] / 4 - s["A"] / 16)),
    ("product-to-square", "-(1/4) A B - (1/2)(A/8) = (1/4) A^2 - (1/2)(A/8)",
     lambda s: (-s["A"] * s["B"] / 4 - s["A"] / 16, s["A"] ** 2 / 4 - s["A"] / 16)),
    ("square-in-E1E3", "(1/4) A^2 = (1/4)[(1/4)Y^2 + (1/2)Y Z + (1/4)Z^2]",
     lambda s: (s["A"] ** 2 / 4, (s["Y"] ** 2 / 4 + s["Y"] * s["Z"] / 2 + s["Z"] ** 2 / 4) / 4)),
    ("square-in-X", "(1/4)Y^2 = X^4 + X^3 + (1/4)X^2",
     lambda s: ((s["Y"] ** 2 / 4 + s["Y"] * s["Z"] / 2 + s["Z"] ** 2 / 4) / 4, _bracket(s) / 4)),
    ("multiply-E1^2", "(1/4)[...] = (E1^2/4)[...]",
     lambda s: (_bracket(s) / 4, s["E1"] ** 2 * _bracket(s) / 4)),
    ("collapse", "(E1^2/4)[...] = (1/4)X^4 + (1/4)X^3 + (1/16)E1^2 X^2 - (1/32)E1 E3",
     lambda s: (s["E1"] ** 2 * _bracket(s) / 4,
                s["X"] ** 4 / 4 + s["X"] ** 3 / 4 + s["E1"] ** 2 * s["X"] ** 2 / 16 - s["E1"] * s["E3"] / 32)),
    ("rewrite-E1^2", "... = (1/4)X^4 + (1/2)X^3 + (1/16)X^2 - (1/32)E1 E3",
     lambda s: (s["X"] ** 4 / 4 + s["X"] ** 3 / 4 + s["E1"] ** 2 * s["X"] ** 2 / 16 - s["E1"] * s["E3"] / 32,
                s["X"] ** 4 / 4 + s["X"] ** 3 / 2 + s["X"] ** 2 / 16 - s["E1"] * s["E3"] / 32)),
    ("aux-1", "(1/8) Y (E1^6 - E1^3 E3) = (1/64)(E1^3 E3 - 1) - (1/16)(E1^6-1)/4",
     lambda s: (s["Y"] * (s["E1"] ** 6 - s["E1"] ** 3 * s["E3"]) / 8,
                (s["E1"] ** 3 * s["E3"] - 1) / 64 - (s["E1"] ** 6 - 1) / 64)),
    ("aux-2", "... = (1/64)(E1^3 E3 - 1) + (1/4)(E4-1)/16",
     lambda s: ((s["E1"] ** 3 * s["E3"] - 1) / 64 - (s["E1"] ** 6 - 1) / 64,
                (s["E1"] ** 3 * s["E3"] - 1) / 64 + s["A"] / 4)),
    ("aux-3", "... = (1/64)(E1^3 E3 - 1)",
     lambda s: ((s["E1"] ** 3 * s["E3"] - 1) / 64 + s["A"] / 4, (s["E1"] ** 3 * s["E3"] - 1) / 64)),
    ("aux-4", "(1/64)(E1^3 E3 - 1) = -(1/4) A E1^3 E3",
     lambda s: ((s["E1"] ** 3 * s["E3"] - 1) / 64, -s["A"] * s["E1"] ** 3 * s["E3"] / 4)),
    ("aux-5", "-(1/4) A E1^3 E3 = -(1/4) A E1 E3",
     lambda s: (-s["A"] * s["E1"] ** 3 * s["E3"] / 4, -s["A"] * s["E1"] * s["E3"] / 4)),
    ("aux-6", "-(1/4) A E1 E3 = (1/4) B E1 E3",
     lambda s: (-s["A"] * s["E1"] * s["E3"] / 4, s["B"] * s["E1"] * s["E3"] / 4)),
    ("aux-7", "(1/4) B E1 E3 = -(1/32) E1 E3",
     lambda s: (s["B"] * s["E1"] * s["E3"] / 4, -s["E1"] * s["E3"] / 32)),
    ("linear-1", "(1/16) A = (1/32)(Y + Z)",
     lambda s: (s["A"] / 16, (s["Y"] + s["Z"]) / 32)),
    ("linear-2", "(1/32)(Y + Z) = (1/32) Y - (1/32) E1 E3",
     lambda s: ((s["Y"] + s["Z"]) / 32, s["Y"] / 32 - s["E1"] * s["E3"] / 32)),
    ("linear-3", "(1/32) Y = (1/32)(Y - X)",
     lambda s: (s["Y"] / 32 - s["E1"] * s["E3"] / 32, (s["Y"] - s["X"]) / 32 - s["E1"] * s["E3"] / 32)),
    ("linear-4", "(1/32)(Y - X) = (1/16) X^2",
     lambda s: ((s["Y"] - s["X"]) / 32 - s["E1"] * s["E3"] / 32, s["X"] ** 2 / 16 - s["E1"] * s["E3"] / 32)),
    ("conclusion", "(1/4)(B/16 - A/8) = (1/4)X^4 + (1/2)X^3",
     lambda s: (_start(s), s["X"] ** 4 / 4 + s["X"] ** 3 / 2)),
]


def congruence_chain() -> list[tuple[str, str, ModularForm, ModularForm]]:
    s = _level3_symbols()
    return [(sid, text, *build(s)) for sid, text, build in CONGRUENCE_CHAIN]


def _check(fn: Callable[[], tuple[bool, str]]) -> tuple[str, str]:
    try:
        ok, details = fn()
    except PrecisionUnstableError as exc:
        return ERROR, f"precision-unstable: {exc}"
    except DQError as exc:
        return FAIL, f"{type(exc).__name__}: {exc}"
    return (PASS if ok else FAIL), details


def _items(P: int | None) -> list[tuple[str, str, Callable[[], tuple[bool, str]]]]:
    items = []

    def b44_identity():
        g = (level1_form(4, 3) - 1) / 240
        ok = congruent(FilteredElement.from_form(g / 240, 8), beta_4_4(), P)
        return ok, "(1/240)(E4-1)/240 vs (1/2)((E4-1)/240)^2 at filtration 8"

    items.append(("A1-beta44-identity", "identification of f(beta_4/4)", b44_identity))

    for sid, text, build in CONGRUENCE_CHAIN:
        def step(build=build, text=text):
            lhs, rhs = build(_level3_symbols())
            ok = congruent(FilteredElement.from_form(lhs, 10), FilteredElement.from_form(rhs, 10), P)
            return ok, text
        items.append((f"A2-chain-{sid}", "congruence chain for beta_4/2,2", step))

    def orders():
        o422 = torsion_order(beta_4_2_2(), P)
        o44 = torsion_order(beta_4_4(), P)
        return (o422, o44) == (4, 2), f"order(beta_4/2,2) = {o422}, order(beta_4/4) = {o44}"

    items.append(("A3-torsion-orders", "orders of beta_4/2,2 and beta_4/4", orders))

    def product_grids():
        c1 = classify(f_formula(ChernGrid(2, (0, 1, 0))), P)
        c2 = classify(f_formula(ChernGrid(2, (0, 2, 0))), P)
        return (c1, c2) == (LABEL_B44, LABEL_ZERO), f"[0,1,0] -> {c1}, [0,2,0] -> {c2}"

    items.append(("A4-product-grids", "transfer over HP^1 x HP^1 product data", product_grids))

    def flag_sp3():
        r = flag_report(3, 1, 2, 3, P)
        ok = unsigned(r.classification) == LABEL_B422 and r.torsion_order == 4
        return ok, f"Sp(3)/Sp(1)^3 lines (1,2): {r.classification}, order {r.torsion_order}"

    items.append(("A5-flag-sp3", "tautological lines on Sp(3)/Sp(1)^3", flag_sp3))

    def flag_vanishing():
        bad = []
        for n in (4, 5):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i != j and not flag_report(n, i, j, 3, P).representative.is_zero():
                        bad.append((n, i, j))
        r1 = reduce(parse_poly(4, "t1^4")).is_zero()
        r2 = reduce(parse_poly(4, "t1^3*t2^3")).is_zero()
        ok = not bad and r1 and r2
        return ok, f"nonzero representatives: {bad}; t1^4 -> 0: {r1}; t1^3 t2^3 -> 0: {r2}"

    items.append(("A6-flag-vanishing", "tautological lines on Sp(4)/Sp(1)^4 and Sp(5)/Sp(1)^5", flag_vanishing))

    def genus_oracle():
        same = ell_oracle_level3(6, 48) == ell_closed(3, 6, 48)
        prod = char_product_level3(4, 48)
        closed = ell_closed(3, 2, 48)
        imag = all(c.imag_part().is_zero() for c in prod)
        odd = all(prod[m].is_zero() for m in (1, 3))
        real = all(prod[2 * a].real_part() == closed[a].scale((-1) ** a) for a in range(3))
        ok = same and imag and odd and real
        return ok, f"oracle==closed: {same}; sqrt(-3) parts vanish: {imag}; even part matches: {real and odd}"

    items.append(("A7-genus-oracle", "elliptic genus of a quaternionic line", genus_oracle))

    def eisenstein():
        P64 = 64
        E1 = level_generator(3, "E1", P64)
        E3 = level_generator(3, "E3", P64)
        i1 = E1 * E1 == g_star(2, P64).scale(12)
        i2 = eisenstein_E(4, P64) == (E1**4).scale(9) - (E1 * E3).scale(8)
        return i1 and i2, f"E1^2 = 12 G2*: {i1}; E4 = 9E1^4 - 8E1E3: {i2}"

    items.append(("A8-eisenstein-identities", "level-3 generators and E4", eisenstein))

    def degeneracies():
        z = f_formula(ChernGrid(1, (5, 7))).is_zero()
        g2 = ChernGrid(2, (12, 1, 12))
        g3 = ChernGrid(3, (0, -1, 1, 0))
        c2 = congruent(f_oracle(g2), f_formula(g2), P)
        c3 = congruent(f_oracle(g3), f_formula(g3), P)
        v = not any(f.kind == "violation" for g in (g2, g3) for f in validate_divisibility(g))
        return z and c2 and c3 and v, f"n=1 empty: {z}; oracle ~ formula n=2: {c2}, n=3: {c3}; grids valid: {v}"

    items.append(("A9-formula-degeneracies", "transfer formula: empty sum and oracle agreement", degeneracies))

    def properties():
        rng = random.Random(20240601)
        X = (ModularForm.generator(3, "E1") ** 2 - 1) / 4
        base = beta_4_2_2()
        for _ in range(12):
            c = Fraction(rng.randint(-50, 50), rng.choice([1, 2, 7, 240]))
            top = sum((m * Fraction(rng.randint(-9, 9), rng.choice([1, 5, 8])) for m in _basis10()),
                      ModularForm(3))
            integral = X ** rng.randint(1, 4) * rng.randint(-3, 3)
            shift = FilteredElement.from_form(top + integral + c, 10)
            if not in_indeterminacy(shift, P) or torsion_order(base + shift, P) != 4:
                return False, "absorption property violated"
        for n in range(2, 5):
            for exps in _monomials(n):
                p = CoinvariantPoly.monomial(n, exps)
                if reduce(reduce(p)) != reduce(p):
                    return False, f"reduce not idempotent on {p}"
        return True, "absorption of constants/top-weight/integral terms; idempotent reduction"

    items.append(("A10-property-sample", "absorption and idempotent reduction (sampled)", properties))
    return items


def _basis10():
    from .modforms import monomial_basis

    return monomial_basis(10, 3)


def _monomials(n: int):
    from itertools import product

    for exps in product(range(n + 1), repeat=n):
        if sum(exps) <= n * (n - 1) // 2 + 1:
            yield exps


def run_verify_paper(P: int | None = None) -> list[VerificationItem]:
    out = []
    for item_id, anchor, fn in _items(P):
        status, details = _check(fn)
        out.append(VerificationItem(item_id, anchor, status, details))
    return sorted(out, key=lambda it: it.id)


def exit_code(items: list[VerificationItem]) -> int:
    if any(it.status == ERROR for it in items):
        return 1
    if any(it.status == FAIL for it in items):
        return 3
    return 0
