from fractions import Fraction as F

import pytest

from qmlde.deligne import (
    CAND2,
    LABELS,
    character_closed_form,
    character_via_mlde,
    deligne_dim,
    dim_l2theta,
    entry,
    registry,
    verify_character,
)
from qmlde.mlde import apply_mlde, deligne_mlde

import oracles

DIMS = {"A1": 3, "A2": 8, "G2": 14, "D4": 28, "F4": 52, "E6": 78, "E7": 133, "E8": 248}


def test_registry_entries():
    a1, e8 = entry("A1"), entry("E8")
    assert (a1.h_dual, a1.level, a1.central_charge, a1.dim_g) == (2, F(-4, 3), -6, 3)
    assert (e8.h_dual, e8.level, e8.central_charge, e8.dim_g) == (30, -6, -62, 248)
    assert entry("F4").admissible and not entry("D4").admissible
    assert [e.label for e in registry()] == list(LABELS)
    with pytest.raises(KeyError):
        entry("B2")


@pytest.mark.parametrize("e", registry(), ids=lambda e: e.label)
def test_entry_invariants(e):
    assert e.central_charge == -2 * e.h_dual - 2
    assert e.exponent == -e.central_charge / 24
    assert e.level == F(-e.h_dual, 6) - 1
    assert e.dim_g == DIMS[e.label]
    assert e.quasi_modular_depth_positive == (not e.admissible)
    assert F(e.h_dual - 1) in CAND2


def test_dimension_formulas():
    assert deligne_dim(2) == 3 and deligne_dim(12) == 78 and deligne_dim(30) == 248
    assert dim_l2theta(2) == 5 and dim_l2theta(4) == 77 and dim_l2theta(30) == 27000
    with pytest.raises(ZeroDivisionError):
        deligne_dim(-6)
    with pytest.raises(ZeroDivisionError):
        dim_l2theta(-12)


def test_a1_closed_form_against_partition_oracle():
    # eta(3t)^3/eta(t)^3 = q^{1/4} prod(1-q^{3n})^3 / prod(1-q^n)^3
    n = 12
    inv = oracles.colored_partitions(3, n)
    num = [0] * (n + 1)
    for i, c in enumerate(oracles.pentagonal_eta(n // 3)):
        num[3 * i] = c
    num3 = [1] + [0] * n
    for _ in range(3):
        num3 = [sum(num3[j] * num[i - j] for j in range(i + 1)) for i in range(n + 1)]
    expected = [sum(num3[j] * inv[i - j] for j in range(i + 1)) for i in range(n + 1)]
    cf = character_closed_form("A1", n)
    assert cf.lead_exp == F(1, 4)
    assert list(cf.coeffs) == expected
    assert expected[:4] == [1, 3, 9, 19]


def test_d4_leading_terms():
    cf = character_closed_form("D4", 5)
    assert cf.lead_exp == F(7, 12)
    assert cf.coeffs[:2] == (1, 28)


def test_e6_cancellation_normalizes_to_one():
    cf = character_closed_form("E6", 5)
    assert cf.lead_exp == F(13, 12)
    assert cf.coeffs[:2] == (1, 78)


@pytest.mark.parametrize("label,expected", [("G2", (1, 14, 92)), ("A2", (1, 8)), ("E7", (1, 133))])
def test_character_via_mlde(label, expected):
    assert character_via_mlde(label, len(expected) - 1).coeffs == expected


@pytest.mark.parametrize("label", LABELS)
def test_closed_form_matches_mlde_order_60(label):
    rep = verify_character(label, 60)
    assert rep.agrees
    assert rep.leading_coefficient == 1
    assert rep.first_coefficient == DIMS[label]
    assert rep.closed_form == rep.mlde_solution.series()


@pytest.mark.parametrize("label", LABELS)
def test_closed_form_solves_mlde(label):
    cf = character_closed_form(label, 60)
    res = apply_mlde(deligne_mlde(entry(label).h_dual), cf)
    assert res.is_zero and res.zero_to == cf.end


def test_f4_full_order():
    rep = verify_character("F4", 200)
    assert rep.agree_to_order == 200 and rep.first_coefficient == 52


def test_g2_variants():
    rep = verify_character("G2", 200)
    assert rep.agree_to_order == 200
    assert rep.variant_agreement == {"eisenstein": 200, "printed": 1}
    assert rep.variant_coefficients["printed"][2] == 110
    assert rep.variant_coefficients["eisenstein"][2] == 92
    printed = verify_character("G2", 10, "printed")
    assert printed.agree_to_order == 1 and not printed.agrees
    assert printed.e1l3_variant_used == "printed"


def test_unknown_variant():
    with pytest.raises(ValueError):
        character_closed_form("G2", 3, "other")


@pytest.mark.parametrize("label", LABELS)
def test_coefficients_are_nonnegative_integers(label):
    sol = character_via_mlde(label, 200)
    assert all(c.denominator == 1 and c >= 0 for c in sol.coeffs)
