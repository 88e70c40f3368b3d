from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dqtransfer.divcong import congruent, torsion_order
from dqtransfer.errors import InvalidInputError, OutOfScopeError
from dqtransfer.flagcohom import ChernGrid
from dqtransfer.transfer import (
    BETA_TABLE,
    beta_4_2,
    beta_4_2_2,
    beta_4_4,
    classify,
    e_single,
    f_formula,
    f_oracle,
    filtration_for,
    flag_report,
    transfer_report,
    unsigned,
    validate_divisibility,
)


def test_filtration():
    assert filtration_for(2) == 8
    assert filtration_for(3) == 10
    assert f_formula(ChernGrid(3, (0, -1, 1, 0))).filtration == 10


def test_empty_sum_for_n1():
    assert f_formula(ChernGrid(1, (5, 7))).is_zero()
    with pytest.raises(OutOfScopeError):
        f_formula(ChernGrid(0, (1,)))


@pytest.mark.parametrize("middle,label", [(1, "beta_4/4"), (2, "0"), (3, "beta_4/4"), (-4, "0")])
def test_parity_of_middle_pairing(middle, label):
    assert classify(f_formula(ChernGrid(2, (0, middle, 0)))) == label


def test_beta_4_2_2_signs():
    assert classify(f_formula(ChernGrid(3, (0, -1, 1, 0)))) == "+beta_4/2,2"
    assert classify(f_formula(ChernGrid(3, (0, 1, -1, 0)))) == "-beta_4/2,2"
    assert classify(beta_4_2()) == "beta_4/2"
    assert classify(beta_4_2_2() * 3) == "-beta_4/2,2"
    assert unsigned("-beta_4/2,2") == "beta_4/2,2"


def test_table_orders():
    for entry in BETA_TABLE:
        assert torsion_order(entry.representative()) == entry.order
    assert torsion_order(beta_4_4()) == 2


def test_level2_reports_are_trivial():
    r = transfer_report(ChernGrid(3, (0, -1, 1, 0), level=2))
    assert r.classification == "0"
    assert r.torsion_order == 1


def test_flag_reports():
    r = flag_report(3, 1, 2)
    assert unsigned(r.classification) == "beta_4/2,2" and r.torsion_order == 4
    assert r.oracle_agrees is True
    r2 = flag_report(2, 1, 2)
    assert r2.representative.is_zero()
    for n in (4, 5):
        assert flag_report(n, 2, 4).representative.is_zero()


def test_report_json_shape():
    data = transfer_report(ChernGrid(2, (12, 1, 12))).to_json()
    assert data["classification"] == "beta_4/4"
    assert data["oracle_agrees"] is True
    assert [f["kind"] for f in data["validation"]] == ["warning", "warning"]
    assert data["filtration"] == 8 and data["stable_under_doubling"] is True


def test_validation_findings():
    kinds = [f.kind for f in validate_divisibility(ChernGrid(2, (5, 1, 12)))]
    assert kinds == ["violation", "warning"]
    assert validate_divisibility(ChernGrid(3, (0, -1, 1, 0))) == []
    bad = validate_divisibility(ChernGrid(3, (0, 1, 1, 0)))
    assert [f.kind for f in bad] == ["violation"]
    r = transfer_report(ChernGrid(3, (0, 1, 1, 0)))
    assert r.oracle_agrees is None


def test_e_invariants():
    assert e_single(1, 1) == Fraction(239, 240)
    assert e_single(2, 2) == Fraction(1, 252)
    assert e_single(3, 0) == 0
    with pytest.raises(InvalidInputError):
        e_single(0, 1)
    with pytest.raises(InvalidInputError):
        e_single(1, Fraction(1, 2))


@st.composite
def valid_grids(draw):
    n = draw(st.sampled_from([2, 3]))
    d = factorial(2 * n) // 2
    ends = [d * draw(st.integers(-3, 3)) for _ in range(2)]
    mid = draw(st.lists(st.integers(-30, 30), min_size=n - 1, max_size=n - 1))
    if n == 3:
        mid[1] -= (mid[0] + mid[1]) % 12
    level = draw(st.sampled_from([2, 3]))
    return ChernGrid(n, (ends[0], *mid, ends[1]), level)


@given(valid_grids())
def test_oracle_agrees_with_formula_on_valid_grids(grid):
    assert not any(f.kind == "violation" for f in validate_divisibility(grid))
    assert congruent(f_oracle(grid), f_formula(grid))


@given(st.lists(st.integers(-20, 20), min_size=4, max_size=4), st.lists(st.integers(-20, 20), min_size=4, max_size=4))
def test_formula_is_linear(a, b):
    g = ChernGrid(3, tuple(x + y for x, y in zip(a, b)))
    assert f_formula(g) == f_formula(ChernGrid(3, tuple(a))) + f_formula(ChernGrid(3, tuple(b)))


@pytest.mark.parametrize("pairings", [(1, 0, 0), (0, 0, 1), (1, 0, 0, 0)])
def test_oracle_detects_non_geometric_grids(pairings):
    grid = ChernGrid(len(pairings) - 1, pairings)
    assert any(f.kind == "violation" for f in validate_divisibility(grid))
    assert not congruent(f_oracle(grid), f_formula(grid))
