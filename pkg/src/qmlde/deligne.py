"""Deligne exceptional series at level -h/6 - 1: registry and vacuum characters.

Each character is built two ways: from its closed eta/Eisenstein formula and
as the Frobenius solution of the weight-0 second-order MLDE at exponent
``(h + 1)/12``.  :func:`verify_character` compares them exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactq import QSeries, TruncationExceeded, as_fraction
from .mlde import FrobeniusSolution, deligne_mlde, frobenius_solve
from .modforms import delta, e1_level3, e1_level3_printed, e2_level2, e4, e6, eta

LABELS = ("A1", "A2", "G2", "D4", "F4", "E6", "E7", "E8")
H_DUAL = {"A1": 2, "A2": 3, "G2": 4, "D4": 6, "F4": 9, "E6": 12, "E7": 18, "E8": 30}
ADMISSIBLE = {"A1", "A2", "G2", "F4"}

CAND1 = tuple(Fraction(x) for x in ("1/5", "1/2", "1", "7/5", "2", "13/4", "3", "7/2", "19/5", "4"))
CAND2 = tuple(Fraction(x) for x in ("1/5", "1/2", "1", "2", "3", "5", "8", "11", "17", "23", "29", "53"))

VARIANTS = ("eisenstein", "printed")

# extra working precision absorbed by leading cancellations (E8 cancels four orders)
_MARGIN = 6


def deligne_dim(h_dual) -> Fraction:
    """``2(h+1)(5h-6)/(h+6)``."""
    h = as_fraction(h_dual)
    if h == -6:
        raise ZeroDivisionError("dimension formula has a pole at h = -6")
    return 2 * (h + 1) * (5 * h - 6) / (h + 6)


def dim_l2theta(h_dual) -> Fraction:
    """``5 h^2 (2h+3)(5h-6) / ((h+12)(h+6))``."""
    h = as_fraction(h_dual)
    if h in (-6, -12):
        raise ZeroDivisionError(f"dimension formula has a pole at h = {h}")
    return 5 * h * h * (2 * h + 3) * (5 * h - 6) / ((h + 12) * (h + 6))


@dataclass(frozen=True)
class DeligneEntry:
    label: str
    h_dual: int
    level: Fraction
    central_charge: Fraction
    dim_g: int
    dim_l2theta: int
    admissible: bool
    quasi_modular_depth_positive: bool

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.h_dual + 1, 12)


def _make_entry(label: str) -> DeligneEntry:
    h = H_DUAL[label]
    dg, dl = deligne_dim(h), dim_l2theta(h)
    assert dg.denominator == 1 and dl.denominator == 1
    return DeligneEntry(
        label=label,
        h_dual=h,
        level=Fraction(-h, 6) - 1,
        central_charge=Fraction(-2 * h - 2),
        dim_g=int(dg),
        dim_l2theta=int(dl),
        admissible=label in ADMISSIBLE,
        # recorded, not computed: the non-admissible four are quasimodular of positive depth
        quasi_modular_depth_positive=label not in ADMISSIBLE,
    )


REGISTRY = tuple(_make_entry(lbl) for lbl in LABELS)


def registry() -> list[DeligneEntry]:
    return list(REGISTRY)


def entry(label: str) -> DeligneEntry:
    for e in REGISTRY:
        if e.label == label:
            return e
    raise KeyError(f"unknown Deligne label {label!r}; expected one of {', '.join(LABELS)}")


def _eta_pow(k: int, w: int, m: int = 1) -> QSeries:
    base = eta(w)
    if m != 1:
        base = base.rescale(m).truncate(w)
    return base ** k


def _closed_form_raw(label: str, w: int, variant: str) -> QSeries:
    """Closed formula expanded with ``w`` integer steps of working precision."""
    d_e4 = e4(w + 1).derivative().scale(Fraction(1, 240))  # q + 9q^2 + ..., trunc w
    if label == "A1":
        return _eta_pow(3, w, 3) * _eta_pow(-3, w)
    if label == "A2":
        return _eta_pow(8, w, 2) * _eta_pow(-8, w)
    if label == "G2":
        e1 = e1_level3(w) if variant == "eisenstein" else e1_level3_printed(w)
        return e1 * _eta_pow(6, w, 3) * _eta_pow(-8, w)
    if label == "D4":
        return d_e4 * _eta_pow(-10, w)
    if label == "F4":
        return e2_level2(w) * delta(w).rescale(2).truncate(w) * _eta_pow(-28, w)
    E6, D = e6(w), delta(w)
    if label == "E6":
        inner = E6 * d_e4 * _eta_pow(-22, w) - _eta_pow(2, w)
        return inner.scale(Fraction(-1, 462))
    if label == "E7":
        # Delta * P2(E6/sqrt(Delta)) = E6^2 + 462 Delta
        p2 = E6 * E6 + D.scale(462)
        num = p2 * d_e4 - D * E6
        return (num * _eta_pow(-34, w)).scale(Fraction(1, 204204))
    if label == "E8":
        # Delta^2 P4(E6/sqrt(Delta)) and Delta^(5/2) Q4(E6/sqrt(Delta)), sqrt eliminated
        E6sq = E6 * E6
        p4 = E6sq * E6sq + (E6sq * D).scale(1341) + (D * D).scale(201894)
        q4 = E6sq * E6 * D + (E6 * D * D).scale(879)
        num = p4 * d_e4 - q4
        return (num * _eta_pow(-58, w)).scale(Fraction(1, 38818159380))
    raise KeyError(label)


@lru_cache(maxsize=64)
def character_closed_form(label: str, order: int, variant: str = "eisenstein") -> QSeries:
    """Closed-form vacuum character of ``V_{-h/6-1}(g)`` to ``order`` steps."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    entry(label)
    raw = _closed_form_raw(label, order + _MARGIN, variant)
    if raw.is_zero or raw.trunc < order:
        raise TruncationExceeded(f"closed form for {label} lost too much precision")
    return raw.truncate(order)


@lru_cache(maxsize=64)
def character_via_mlde(label: str, order: int) -> FrobeniusSolution:
    e = entry(label)
    return frobenius_solve(deligne_mlde(e.h_dual), e.exponent, order)


def agreement_order(a: QSeries, exponent: Fraction, coeffs, order: int) -> int:
    """Offset of the last matching coefficient (``order`` if all match, -1 if none)."""
    for s in range(order + 1):
        try:
            got = a.coefficient_at(exponent + s)
        except TruncationExceeded:
            return s - 1
        if got != coeffs[s]:
            return s - 1
    return order


@dataclass(frozen=True)
class CharacterReport:
    entry: DeligneEntry
    closed_form: QSeries
    mlde_solution: FrobeniusSolution
    agree_to_order: int
    first_coefficient: Fraction
    leading_coefficient: Fraction
    order: int
    e1l3_variant_used: str | None = None
    # G2 only: agreement order achieved by each E1^(3) variant
    variant_agreement: dict = field(default_factory=dict)
    variant_coefficients: dict = field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        return self.agree_to_order == self.order


def verify_character(label: str, order: int, variant: str = "eisenstein") -> CharacterReport:
    e = entry(label)
    sol = character_via_mlde(label, order)
    closed = character_closed_form(label, order, variant)
    agree = agreement_order(closed, e.exponent, sol.coeffs, order)
    lead = closed.coefficient_at(e.exponent)
    first = closed.coefficient_at(e.exponent + 1) if order >= 1 else None
    variant_agree, variant_coeffs = {}, {}
    used = None
    if label == "G2":
        used = variant
        for v in VARIANTS:
            cf = character_closed_form(label, order, v)
            variant_agree[v] = agreement_order(cf, e.exponent, sol.coeffs, order)
            variant_coeffs[v] = [cf.coefficient_at(e.exponent + s) for s in range(min(order, 4) + 1)]
    return CharacterReport(
        entry=e,
        closed_form=closed,
        mlde_solution=sol,
        agree_to_order=agree,
        first_coefficient=first,
        leading_coefficient=lead,
        order=order,
        e1l3_variant_used=used,
        variant_agreement=variant_agree,
        variant_coefficients=variant_coeffs,
    )


def verify_all(order: int) -> list[CharacterReport]:
    return [verify_character(lbl, order) for lbl in LABELS]
