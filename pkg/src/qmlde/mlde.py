"""Monic modular linear differential equations and their Frobenius solutions.

An MLDE of weight ``k`` and order ``n`` is

    theta_k^n f + sum_{j<n} P_j theta_k^j f = 0

with ``P_j`` a homogeneous polynomial in E4, E6 of weight ``2(n - j)``.
Expanding the iterated Serre derivations gives the D-form
``sum_j A_j(q) D^j f = 0`` with ``D = q d/dq`` and ``A_n = 1``; the solver
works entirely from that form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import isqrt, lcm
from typing import Iterator, Sequence

from .exactq import QSeries, as_fraction
from .modforms import e2, e4, e6


class NotAnExponent(ValueError):
    pass


class LogarithmicObstruction(ArithmeticError):
    """The Frobenius recursion hit a resonant offset with a nonzero right-hand side."""

    def __init__(self, solution: "FrobeniusSolution"):
        self.solution = solution
        self.obstruction_at = solution.obstruction_at
        super().__init__(
            f"logarithmic obstruction at offset {solution.obstruction_at} "
            f"for exponent {solution.exponent}"
        )


@dataclass(frozen=True)
class GradedModularPolynomial:
    """``sum c * E4^a * E6^b`` with ``4a + 6b == weight`` for every term."""

    weight: int
    terms: tuple[tuple[Fraction, int, int], ...] = ()

    def __post_init__(self):
        for c, a, b in self.terms:
            if a < 0 or b < 0 or 4 * a + 6 * b != self.weight:
                raise ValueError(
                    f"term E4^{a} E6^{b} is not homogeneous of weight {self.weight}"
                )
        object.__setattr__(
            self, "terms", tuple((as_fraction(c), a, b) for c, a, b in self.terms if c)
        )

    @classmethod
    def zero(cls, weight: int) -> "GradedModularPolynomial":
        return cls(weight, ())

    def series(self, order: int) -> QSeries:
        out = QSeries.zero(order)
        for c, a, b in self.terms:
            out = out + ((e4(order) ** a) * (e6(order) ** b)).scale(c)
        return out


@dataclass(frozen=True)
class MLDE:
    weight: Fraction
    order: int
    p_list: tuple[GradedModularPolynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "weight", as_fraction(self.weight))
        if self.order < 1:
            raise ValueError("MLDE order must be at least 1")
        if len(self.p_list) != self.order:
            raise ValueError(f"need {self.order} coefficient polynomials, got {len(self.p_list)}")
        for j, p in enumerate(self.p_list):
            if p.weight != 2 * (self.order - j):
                raise ValueError(f"P_{j} must have weight {2 * (self.order - j)}, got {p.weight}")


@dataclass(frozen=True)
class IndicialData:
    polynomial: tuple[Fraction, ...]  # ascending powers of the exponent
    roots: tuple[Fraction, ...]
    has_irrational_roots: bool

    def __call__(self, x) -> Fraction:
        return _horner(self.polynomial, as_fraction(x))


@dataclass(frozen=True)
class FrobeniusSolution:
    exponent: Fraction
    coeffs: tuple[Fraction, ...]
    resonant: bool = False
    obstruction_at: int | None = None

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def series(self) -> QSeries:
        """As a QSeries; raises LatticeMismatch when the exponent is off the 1/24 lattice."""
        return QSeries.make(self.exponent, self.coeffs, len(self.coeffs) - 1)


def _horner(poly: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=128)
def theta_to_d(m: MLDE, order: int) -> tuple[QSeries, ...]:
    """D-form coefficients ``A_0 .. A_n`` of ``m``, each to ``order``."""
    one = QSeries.one(order)
    zero = QSeries.zero(order)
    E2 = e2(order)

    def apply_theta(w: Fraction, op: list[QSeries]) -> list[QSeries]:
        # theta_w (B D^j f) = (D B - w/12 E2 B) D^j f + B D^{j+1} f
        out = [zero] * (len(op) + 1)
        for j, b in enumerate(op):
            out[j] = out[j] + b.derivative() - (E2 * b).scale(w / 12)
            out[j + 1] = out[j + 1] + b
        return out

    total = [zero] * (m.order + 1)
    op = [one]
    for j in range(m.order + 1):
        pj = one if j == m.order else m.p_list[j].series(order)
        for i, b in enumerate(op):
            total[i] = total[i] + pj * b
        if j < m.order:
            op = apply_theta(m.weight + 2 * j, op)
    return tuple(s.truncate_to(order) if not s.is_zero else QSeries.zero(order) for s in total)


def _dense(s: QSeries, order: int) -> list[Fraction]:
    """Integer-exponent coefficients 0..order of ``s``."""
    return [s.coefficient_at(t) for t in range(order + 1)]


def _integer_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
        d += 1
    return out


def _exact_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _deflate(poly: list[Fraction], r: Fraction) -> list[Fraction]:
    """Divide ``poly`` (ascending) by ``(x - r)``; assumes ``r`` is a root."""
    n = len(poly) - 1
    quot = [Fraction(0)] * n
    acc = Fraction(0)
    for i in range(n, 0, -1):
        acc = acc * r + poly[i]
        quot[i - 1] = acc
    return quot


def rational_roots(poly: Sequence[Fraction]) -> tuple[list[Fraction], int]:
    """Distinct rational roots of ``poly`` (ascending) and their total multiplicity."""
    poly = [as_fraction(c) for c in poly]
    while poly and poly[-1] == 0:
        poly.pop()
    deg = len(poly) - 1
    if deg < 1:
        return [], 0
    found: list[Fraction] = []
    count = 0
    if deg == 2:
        c, b, a = poly
        disc = _exact_sqrt(b * b - 4 * a * c)
        if disc is None:
            return [], 0
        r1, r2 = (-b - disc) / (2 * a), (-b + disc) / (2 * a)
        return sorted({r1, r2}), 2
    while len(poly) > 1 and poly[0] == 0:
        poly = poly[1:]
        count += 1
        if Fraction(0) not in found:
            found.append(Fraction(0))
    if len(poly) > 1:
        den = lcm(*(c.denominator for c in poly))
        ints = [int(c * den) for c in poly]
        cands = set()
        for p in _integer_divisors(ints[0]):
            for q in _integer_divisors(ints[-1]):
                cands.add(Fraction(p, q))
                cands.add(Fraction(-p, q))
        for r in sorted(cands):
            while len(poly) > 1 and _horner(poly, r) == 0:
                poly = _deflate(poly, r)
                count += 1
                if r not in found:
                    found.append(r)
    return sorted(found), count


def indicial(m: MLDE) -> IndicialData:
    """``I(x) = sum_j A_j(0) x^j`` and its rational roots."""
    a = theta_to_d(m, 0)
    poly = tuple(s.coefficient_at(0) for s in a)
    roots, mult = rational_roots(poly)
    return IndicialData(poly, tuple(roots), mult < m.order)


def resonances(m: MLDE) -> list[tuple[Fraction, Fraction, int]]:
    """Pairs of rational exponents differing by a positive integer."""
    out = []
    for r1, r2 in combinations(indicial(m).roots, 2):
        gap = r2 - r1
        if gap.denominator == 1 and gap > 0:
            out.append((r1, r2, int(gap)))
    return out


def frobenius_iter(m: MLDE, exponent, order: int) -> Iterator[tuple[int, Fraction, bool]]:
    """Yield ``(s, c_s, resonant_here)`` for ``s = 0..order``.

    Raises :class:`LogarithmicObstruction` at the first obstructed offset;
    the attached partial solution holds ``c_0 .. c_{s-1}``.
    """
    lam = as_fraction(exponent)
    a_series = theta_to_d(m, order)
    n = m.order
    a = [_dense(s, order) for s in a_series]
    lead = [a[j][0] for j in range(n + 1)]
    if _horner(lead, lam) != 0:
        raise NotAnExponent(f"{lam} is not a root of the indicial polynomial")
    coeffs = [Fraction(1)]
    yield 0, coeffs[0], False
    powers: list[list[Fraction]] = []  # powers[i][j] = (lam+i)^j
    for s in range(1, order + 1):
        x = lam + s - 1
        row = [Fraction(1)]
        for _ in range(n):
            row.append(row[-1] * x)
        powers.append(row)
        rhs = Fraction(0)
        for i, c in enumerate(coeffs):
            if not c:
                continue
            t = s - i
            pw = powers[i]
            acc = Fraction(0)
            for j in range(n + 1):
                ajt = a[j][t]
                if ajt:
                    acc += ajt * pw[j]
            rhs -= c * acc
        ind = _horner(lead, lam + s)
        if ind == 0:
            if rhs != 0:
                raise LogarithmicObstruction(
                    FrobeniusSolution(lam, tuple(coeffs), True, s)
                )
            cs, here = Fraction(0), True
        else:
            cs, here = rhs / ind, False
        coeffs.append(cs)
        yield s, cs, here


def frobenius_solve(m: MLDE, exponent, order: int) -> FrobeniusSolution:
    """Power-series solution ``q^exponent (1 + c_1 q + ...)`` to ``order``.

    At a resonant offset with vanishing obstruction the free coefficient is
    set to zero.
    """
    lam = as_fraction(exponent)
    coeffs = []
    resonant = False
    for _, c, here in frobenius_iter(m, lam, order):
        coeffs.append(c)
        resonant = resonant or here
    return FrobeniusSolution(lam, tuple(coeffs), resonant, None)


def apply_mlde(m: MLDE, f: QSeries) -> QSeries:
    """Residual ``sum_j A_j D^j f`` over the window where it is determined."""
    if f.is_zero:
        return f
    order = f.trunc
    a = theta_to_d(m, order)
    out = QSeries.zero()
    g = f
    for j in range(m.order + 1):
        out = out + a[j] * g
        g = g.derivative()
    return out


def second_order_weight0(k) -> MLDE:
    """``f'' - E2 f'/6 - k(k+2)/144 E4 f = 0``."""
    k = as_fraction(k)
    p0 = GradedModularPolynomial(4, ((-k * (k + 2) / 144, 1, 0),))
    p1 = GradedModularPolynomial.zero(2)
    return MLDE(Fraction(0), 2, (p0, p1))


def deligne_mlde(h_dual) -> MLDE:
    return second_order_weight0(as_fraction(h_dual) - 1)
