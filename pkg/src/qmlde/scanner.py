"""Finite-order search for vacuum-type solutions of the weight-0 second-order MLDE.

A solution ``q^lam (1 + sum a_n q^n)`` is vacuum type when every ``a_n`` is a
nonnegative integer.  The check stops at the first offending coefficient, so a
recorded failure offset does not depend on the requested order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd

from .deligne import CAND1, CAND2, REGISTRY
from .exactq import as_fraction
from .mlde import LogarithmicObstruction, frobenius_iter, second_order_weight0


class Branch(str, Enum):
    MINUS = "minus"  # exponent -k/12
    PLUS = "plus"  # exponent (k+2)/12

    def exponent(self, k: Fraction) -> Fraction:
        return -k / 12 if self is Branch.MINUS else (k + 2) / 12


class FailureKind(str, Enum):
    NON_INTEGER = "nonInteger"
    NEGATIVE = "negative"
    RESONANCE_OBSTRUCTION = "resonanceObstruction"


@dataclass(frozen=True)
class ScanResult:
    k: Fraction
    branch: Branch
    checked_order: int
    vacuum_type: bool
    failure_offset: int | None = None
    failure_kind: FailureKind | None = None
    # leading coefficients (c_0 .. c_min(order, 5)); for failures, up to the failure
    head: tuple[Fraction, ...] = field(default=())


HEAD = 5


def is_vacuum_type(k, branch, order: int) -> ScanResult:
    k = as_fraction(k)
    branch = Branch(branch)
    m = second_order_weight0(k)
    head: list[Fraction] = []
    try:
        for s, c, _ in frobenius_iter(m, branch.exponent(k), order):
            if s <= HEAD:
                head.append(c)
            kind = None
            if c.denominator != 1:
                kind = FailureKind.NON_INTEGER
            elif c < 0:
                kind = FailureKind.NEGATIVE
            if kind is not None:
                if s > HEAD:
                    head.append(c)
                return ScanResult(k, branch, order, False, s, kind, tuple(head))
    except LogarithmicObstruction as exc:
        return ScanResult(
            k, branch, order, False, exc.obstruction_at,
            FailureKind.RESONANCE_OBSTRUCTION, tuple(head),
        )
    return ScanResult(k, branch, order, True, None, None, tuple(head))


def grid(max_numerator, max_denominator: int) -> list[Fraction]:
    """Reduced ``p/q`` with ``1 <= q <= max_denominator`` and ``0 < p/q <= max_numerator``."""
    if max_denominator < 1:
        raise ValueError("max_denominator must be at least 1")
    bound = as_fraction(max_numerator)
    out = set()
    for q in range(1, max_denominator + 1):
        p = 1
        while Fraction(p, q) <= bound:
            if gcd(p, q) == 1:
                out.add(Fraction(p, q))
            p += 1
    return sorted(out)


def _check(args):
    return is_vacuum_type(*args)


def _sort_key(r: ScanResult):
    return (not r.vacuum_type, r.k)


def scan_grid(max_numerator, max_denominator: int, branch, order: int,
              workers: int | None = None) -> list[ScanResult]:
    """Vacuum-type test over :func:`grid`; passes first, each group sorted by ``k``."""
    branch = Branch(branch)
    jobs = [(k, branch, order) for k in grid(max_numerator, max_denominator)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check, jobs, chunksize=8))
    else:
        results = [_check(j) for j in jobs]
    return sorted(results, key=_sort_key)


@dataclass
class CandidateReport:
    order: int
    cand1: list[ScanResult]
    cand2: list[ScanResult]
    deligne_in_cand2: dict[str, bool]

    @property
    def all_pass(self) -> bool:
        return all(r.vacuum_type for r in self.cand1 + self.cand2)

    def failures(self) -> list[ScanResult]:
        return [r for r in self.cand1 + self.cand2 if not r.vacuum_type]


def verify_candidate_lists(order: int) -> CandidateReport:
    c1 = [is_vacuum_type(k, Branch.MINUS, order) for k in CAND1]
    c2 = [is_vacuum_type(k, Branch.PLUS, order) for k in CAND2]
    passing2 = {r.k for r in c2 if r.vacuum_type}
    deligne = {e.label: Fraction(e.h_dual - 1) in passing2 for e in REGISTRY}
    return CandidateReport(order, c1, c2, deligne)


def extra_passes(results: list[ScanResult], listed) -> list[ScanResult]:
    """Passing grid points that are not in ``listed``."""
    listed = set(listed)
    return [r for r in results if r.vacuum_type and r.k not in listed]
