"""Exact f-invariants of double quaternionic transfers.

Evaluates the transfer formula from Chern-number data, reduces the result
modulo the divided-congruence indeterminacy for Gamma_1(2) and Gamma_1(3),
and classifies it against the known beta-family representatives.
"""
from .divcong import (
    FilteredElement,
    certificate,
    congruent,
    in_indeterminacy,
    torsion_order,
    total_expansion,
)
from .errors import (
    DQError,
    InsufficientPrecisionError,
    InvalidInputError,
    NotAModularFormError,
    OutOfScopeError,
    PrecisionUnstableError,
    UnsupportedDegreeError,
    UnsupportedDomainError,
)
from .exactmath import QuadExt, bernoulli, bernoulli_poly_third
from .flagcohom import ChernGrid, CoinvariantPoly, reduce, taut_chern_grid, top_pairing
from .modforms import (
    ModularForm,
    eisenstein_E,
    eisenstein_G,
    embed_level1,
    expand,
    level_generator,
    monomial_basis,
)
from .qseries import QSeries
from .transfer import (
    classify,
    e_single,
    f_formula,
    f_oracle,
    flag_report,
    transfer_report,
    validate_divisibility,
)

__version__ = "0.1.0"

__all__ = [
    "ChernGrid",
    "CoinvariantPoly",
    "DQError",
    "FilteredElement",
    "InsufficientPrecisionError",
    "InvalidInputError",
    "ModularForm",
    "NotAModularFormError",
    "OutOfScopeError",
    "PrecisionUnstableError",
    "QSeries",
    "QuadExt",
    "UnsupportedDegreeError",
    "UnsupportedDomainError",
    "bernoulli",
    "bernoulli_poly_third",
    "certificate",
    "classify",
    "congruent",
    "e_single",
    "eisenstein_E",
    "eisenstein_G",
    "embed_level1",
    "expand",
    "f_formula",
    "f_oracle",
    "flag_report",
    "in_indeterminacy",
    "level_generator",
    "monomial_basis",
    "reduce",
    "taut_chern_grid",
    "top_pairing",
    "torsion_order",
    "total_expansion",
    "transfer_report",
    "validate_divisibility",
]
