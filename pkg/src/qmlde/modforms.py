"""q-expansions of the Eisenstein series, eta, and the level 2/3 forms.

All constructors take ``order`` = number of integer steps retained past the
leading term, so the returned series has ``trunc == order``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exactq import QSeries


class InvalidWeight(ValueError):
    pass


class FormName(str, Enum):
    E2 = "E2"
    E4 = "E4"
    E6 = "E6"
    E2K = "E2k"
    GTILDE2K = "Gtilde2k"
    ETA = "eta"
    DELTA = "delta"
    E2_LEVEL2 = "E2^(2)"
    E1_LEVEL3 = "E1^(3)"


@dataclass(frozen=True)
class NamedForm:
    name: FormName
    weight: int
    series: QSeries
    quasi_modular_depth: int = 0


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def sigma(k: int, n: int) -> int:
    if n < 1:
        raise ValueError("sigma needs n >= 1")
    return sum(d**k for d in _divisors(n))


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2 convention) by the standard recursion."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    b = [Fraction(1)]
    for m in range(1, n + 1):
        # sum_{j<=m} C(m+1, j) B_j = 0
        s = Fraction(0)
        c = 1
        for j in range(m):
            s += c * b[j]
            c = c * (m + 1 - j) // (j + 1)
        b.append(-s / (m + 1))
    return b[n]


def _check_weight(w: int) -> None:
    if not isinstance(w, int) or w < 2 or w % 2:
        raise InvalidWeight(f"weight must be an even integer >= 2, got {w!r}")


@lru_cache(maxsize=64)
def eisenstein_e(w: int, order: int) -> QSeries:
    """Normalized Eisenstein series ``1 - (2w/B_w) sum sigma_{w-1}(n) q^n``."""
    _check_weight(w)
    factor = -Fraction(2 * w) / bernoulli(w)
    return QSeries.make(0, [1] + [factor * sigma(w - 1, n) for n in range(1, order + 1)], order)


@lru_cache(maxsize=64)
def zhu_g(w: int, order: int) -> QSeries:
    """Eisenstein series with constant term ``-B_w/w!``.

    The normalization makes ``zhu_g(2) == -E2/12``.
    """
    _check_weight(w)
    const = -bernoulli(w) / factorial(w)
    lin = Fraction(2, factorial(w - 1))
    return QSeries.make(0, [const] + [lin * sigma(w - 1, n) for n in range(1, order + 1)], order)


def e2(order: int) -> QSeries:
    return eisenstein_e(2, order)


def e4(order: int) -> QSeries:
    return eisenstein_e(4, order)


def e6(order: int) -> QSeries:
    return eisenstein_e(6, order)


@lru_cache(maxsize=64)
def eta(order: int) -> QSeries:
    """``q^(1/24) prod_{n>=1} (1 - q^n)`` expanded by the finite product."""
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for n in range(1, order + 1):
        # multiply in place by (1 - q^n)
        for i in range(order, n - 1, -1):
            coeffs[i] -= coeffs[i - n]
    return QSeries.make(Fraction(1, 24), coeffs, order)


@lru_cache(maxsize=64)
def delta(order: int) -> QSeries:
    return eta(order) ** 24


def legendre3(d: int) -> int:
    return (0, 1, -1)[d % 3]


@lru_cache(maxsize=64)
def e2_level2(order: int) -> QSeries:
    """``2 E2(2 tau) - E2(tau)``."""
    e = e2(order)
    return e.rescale(2).truncate(order).scale(2) - e


@lru_cache(maxsize=64)
def e1_level3(order: int) -> QSeries:
    """Weight-one Eisenstein series for Gamma_0(3): ``1 + 6 sum_n (sum_{d|n} (d/3)) q^n``."""
    coeffs = [1] + [6 * sum(legendre3(d) for d in _divisors(n)) for n in range(1, order + 1)]
    return QSeries.make(0, coeffs, order)


@lru_cache(maxsize=64)
def e1_level3_printed(order: int) -> QSeries:
    """The variant with ``(n/d)^2`` inside the divisor sum.

    Kept for comparison only; it does not solve the G2 character equation.
    """
    coeffs = [1] + [
        6 * sum(legendre3(d) * (n // d) ** 2 for d in _divisors(n)) for n in range(1, order + 1)
    ]
    return QSeries.make(0, coeffs, order)


# canonical CLI names -> (constructor, weight, depth)
FORMS = {
    "E2": (e2, 2, 1),
    "E4": (e4, 4, 0),
    "E6": (e6, 6, 0),
    "Gt2": (lambda n: zhu_g(2, n), 2, 1),
    "Gt4": (lambda n: zhu_g(4, n), 4, 0),
    "Gt6": (lambda n: zhu_g(6, n), 6, 0),
    "eta": (eta, None, 0),
    "delta": (delta, 12, 0),
    "E2^(2)": (e2_level2, 2, 0),
    "E1^(3)": (e1_level3, 1, 0),
}


def named_form(name: str, order: int) -> NamedForm:
    """Look up a form by its canonical name (see ``FORMS``)."""
    try:
        ctor, weight, depth = FORMS[name]
    except KeyError:
        raise KeyError(f"unknown form {name!r}; expected one of {', '.join(FORMS)}") from None
    enum_name = {
        "Gt2": FormName.GTILDE2K, "Gt4": FormName.GTILDE2K, "Gt6": FormName.GTILDE2K,
    }.get(name) or FormName(name)
    if name == "eta":
        weight = Fraction(1, 2)
    return NamedForm(enum_name, weight, ctor(order), depth)
