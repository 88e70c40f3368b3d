from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dqtransfer.errors import (
    InsufficientPrecisionError,
    InvalidInputError,
    NotAModularFormError,
)
from dqtransfer.modforms import (
    ModularForm,
    basis_monomials,
    eisenstein_E,
    eisenstein_G,
    embed_level1,
    expand,
    level1_form,
    level_generator,
    monomial_basis,
    perturbed_generator,
)
from dqtransfer.qseries import QSeries, substitute_qpow

P = 40


def poly_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return out


def eta_power(exp, step, n):
    """prod_{m>=1} (1 - q^(step*m))^exp as an integer list of length n (exp may be negative)."""
    out = [1] + [0] * (n - 1)
    for m in range(step, n, step):
        if exp >= 0:
            factor = [1] + [0] * (n - 1)
            factor[m] = -1
        else:
            # 1/(1 - q^m) = sum_j q^(jm)
            factor = [1 if j % m == 0 else 0 for j in range(n)]
        for _ in range(abs(exp)):
            out = poly_mul(out, factor, n)
    return out


def shift(series, k, n):
    return ([0] * k + list(series))[:n]


def test_E1_is_hexagonal_theta():
    theta = [0] * P
    r = int(P**0.5) + 2
    for m in range(-r, r + 1):
        for n in range(-r, r + 1):
            v = m * m + m * n + n * n
            if v < P:
                theta[v] += 1
    assert list(level_generator(3, "E1", P)) == theta


def test_E3_is_eta_quotient():
    # eta(tau)^9 / eta(3 tau)^3; the q-powers cancel
    expected = poly_mul(eta_power(9, 1, P), eta_power(-3, 3, P), P)
    assert list(level_generator(3, "E3", P)) == expected


def test_epsilon_is_eta_quotient():
    # eta(2 tau)^16 / eta(tau)^8 = q prod (1-q^2m)^16 / (1-q^m)^8
    expected = shift(poly_mul(eta_power(16, 2, P), eta_power(-8, 1, P), P), 1, P)
    assert list(level_generator(2, "epsilon", P)) == expected


def test_delta4_from_E2():
    e2 = eisenstein_E(2, P)
    assert level_generator(2, "delta4", P) == substitute_qpow(e2, 2).scale(2) - e2


def test_eisenstein_G_values():
    g4 = eisenstein_G(4, 5)
    assert list(g4) == [Fraction(1, 240), 1, 9, 28, 73]
    assert list(eisenstein_E(6, 3)) == [1, -504, -16632]
    with pytest.raises(InvalidInputError):
        eisenstein_G(3, 5)


def test_E4_identities():
    E1, E3 = ModularForm.generator(3, "E1"), ModularForm.generator(3, "E3")
    assert level1_form(4, 3) == 9 * E1**4 - 8 * E1 * E3
    d, e = ModularForm.generator(2, "delta"), ModularForm.generator(2, "epsilon")
    assert level1_form(4, 2) == 16 * d**2 + 192 * e
    for level in (2, 3):
        assert expand(level1_form(4, level), 64) == eisenstein_E(4, 64)


@pytest.mark.parametrize("two_k", [4, 6, 8, 10, 12])
@pytest.mark.parametrize("level", [2, 3])
def test_level1_embedding_roundtrip(two_k, level):
    f = level1_form(two_k, level)
    assert f.weights() == [two_k]
    assert expand(f, 3 * two_k + 20) == eisenstein_E(two_k, 3 * two_k + 20)


def test_E1_squared_is_G2_star():
    g2 = eisenstein_G(2, 64)
    star = g2 - substitute_qpow(g2, 3).scale(3)
    assert level_generator(3, "E1", 64) ** 2 == star.scale(12)


def test_embed_rejects_non_forms():
    bad = eisenstein_E(4, 20) + QSeries([0] * 5 + [1] + [0] * 14)
    with pytest.raises(NotAModularFormError):
        embed_level1(bad, 4, 3)
    with pytest.raises(InsufficientPrecisionError):
        embed_level1(eisenstein_E(4, 20), 4, 3, P=6)
    with pytest.raises(InsufficientPrecisionError):
        embed_level1(eisenstein_E(4, 10), 4, 3)
    with pytest.raises(NotAModularFormError):
        embed_level1(eisenstein_E(4, 30), 5, 2)


@pytest.mark.parametrize("w", range(0, 16))
def test_basis_dimensions(w):
    assert len(monomial_basis(w, 3)) == w // 3 + 1
    assert len(basis_monomials(w, 2)) == (w // 4 + 1 if w % 2 == 0 else 0)


def test_generator_names_and_levels():
    with pytest.raises(InvalidInputError):
        level_generator(2, "E1", 5)
    with pytest.raises(InvalidInputError):
        level_generator(5, "E1", 5)
    with pytest.raises(InvalidInputError):
        ModularForm.generator(3, "epsilon")


def test_form_json_and_weights():
    E1, E3 = ModularForm.generator(3, "E1"), ModularForm.generator(3, "E3")
    f = E1**4 * E3 / 2 - 1
    assert f.weights() == [0, 7]
    assert not f.is_homogeneous()
    assert f.to_json() == {"1": "-1", "E1^4*E3": "1/2"}
    assert f.component(7).is_homogeneous()


def test_perturbation_hook_restores():
    clean = level_generator(3, "E3", 10)
    with perturbed_generator("E3", 5):
        assert level_generator(3, "E3", 10)[5] == clean[5] + 1
    assert level_generator(3, "E3", 10) == clean


small = st.fractions(min_value=-9, max_value=9, max_denominator=6)
forms3 = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 2)), small, max_size=4).map(
    lambda t: ModularForm(3, t))
forms2 = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 2)), small, max_size=4).map(
    lambda t: ModularForm(2, t))


@given(st.one_of(st.tuples(forms3, forms3), st.tuples(forms2, forms2)))
def test_expansion_is_ring_homomorphism(pair):
    f, g = pair
    assert expand(f * g, 24) == expand(f, 24) * expand(g, 24)
    assert expand(f - g, 24) == expand(f, 24) - expand(g, 24)


@given(forms3)
def test_components_sum_to_form(f):
    total = ModularForm(3)
    for w in f.weights():
        total = total + f.component(w)
    assert total == f
