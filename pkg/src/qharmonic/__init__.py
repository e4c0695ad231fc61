"""Exact finite multiple harmonic q-series, their duality, and identity checks."""

from .compositions import dual, parse_composition
from .qpoly import QPoly, QRatFun, eval_at, q_binomial, q_integer
from .sums import SumKind, eval_sum

__version__ = "0.1.0"

__all__ = [
    "QPoly", "QRatFun", "eval_at", "q_binomial", "q_integer",
    "dual", "parse_composition", "SumKind", "eval_sum",
]
