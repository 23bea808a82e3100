"""Exact q-series, Serre derivations and MLDE solving for vacuum characters."""

from .exactq import QSeries, TruncationExceeded
from .mlde import (
    MLDE,
    FrobeniusSolution,
    GradedModularPolynomial,
    LogarithmicObstruction,
    NotAnExponent,
    deligne_mlde,
    frobenius_solve,
    second_order_weight0,
)

__all__ = [
    "QSeries",
    "TruncationExceeded",
    "MLDE",
    "FrobeniusSolution",
    "GradedModularPolynomial",
    "LogarithmicObstruction",
    "NotAnExponent",
    "deligne_mlde",
    "frobenius_solve",
    "second_order_weight0",
]
