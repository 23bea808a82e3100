"""Serre derivations acting on truncated q-series."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactq import QSeries, as_fraction
from .modforms import e2, zhu_g


@dataclass(frozen=True)
class WeightedSeries:
    series: QSeries
    weight: Fraction


def _matched(ctor, f: QSeries) -> QSeries:
    # E2-type factor truncated to f's relative precision (constant lead, so the
    # product keeps f's window).
    return ctor(f.trunc if not f.is_zero else 0)


def serre_deriv(k, f: QSeries) -> QSeries:
    """``q df/dq - (k/12) E2 f``."""
    k = as_fraction(k)
    if f.is_zero:
        return f.derivative()
    return f.derivative() - (_matched(e2, f) * f).scale(k / 12)


def iterated_serre(k, i: int, f: QSeries) -> QSeries:
    """``theta_{k+2(i-1)} o ... o theta_{k+2} o theta_k``; ``i == 0`` is the identity."""
    if i < 0:
        raise ValueError("iteration count must be nonnegative")
    k = as_fraction(k)
    for step in range(i):
        f = serre_deriv(k + 2 * step, f)
    return f


def formal_partial(k, f: QSeries) -> QSeries:
    """``q df/dq + k G~2 f``, which equals :func:`serre_deriv` under ``G~2 = -E2/12``."""
    k = as_fraction(k)
    if f.is_zero:
        return f.derivative()
    g2 = _matched(lambda n: zhu_g(2, n), f)
    return f.derivative() + (g2 * f).scale(k)


def serre(ws: WeightedSeries) -> WeightedSeries:
    """Weight-tracking variant: raises the attached weight by 2."""
    return WeightedSeries(serre_deriv(ws.weight, ws.series), ws.weight + 2)
