"""
Generalized power series with rational exponents and lazy term streams.
"""

from src.series.hahn import (
    AdmissiblePair,
    HahnSeries,
    TermStream,
    add,
    admissible_pair_of,
    cutoff,
    has_cutoff_property,
    limit_of_pair,
    mul,
    neg,
    next_precision,
    reciprocal,
    sub,
    valuation,
)
from src.series.streams import available_rules, geometric_gap, integers, make_stream

__all__ = [
    "AdmissiblePair",
    "HahnSeries",
    "TermStream",
    "add",
    "admissible_pair_of",
    "cutoff",
    "has_cutoff_property",
    "limit_of_pair",
    "mul",
    "neg",
    "next_precision",
    "reciprocal",
    "sub",
    "valuation",
    "available_rules",
    "geometric_gap",
    "integers",
    "make_stream",
]
