"""Growth series and growth rates of Coxeter systems."""

__version__ = "0.1.0"

from .arith import AlgebraicProfile, all_roots, classify_algebraic, pisot_limit_experiment
from .catalog import FiniteTypeLabel, enumerate_finite_subsets, solomon_series
from .coxeter import (
    INF,
    ContractibleEdgeSpec,
    CoxeterMatrix,
    GrowthType,
    classify,
    deform,
    edge_family,
    parse_matrix,
    polygon_matrix,
)
from .errors import CapExceeded, CoxGrowthError, InconsistencyError, InputError
from .oracle import ball, marked_distance_bound, oracle_coefficients, reduce_word
from .poly import IntPolynomial, RationalFunction
from .steinberg import coefficients, growth_rate, growth_series, steinberg_F

__all__ = [
    "INF",
    "AlgebraicProfile",
    "CapExceeded",
    "ContractibleEdgeSpec",
    "CoxGrowthError",
    "CoxeterMatrix",
    "FiniteTypeLabel",
    "GrowthType",
    "InconsistencyError",
    "InputError",
    "IntPolynomial",
    "RationalFunction",
    "all_roots",
    "ball",
    "classify",
    "classify_algebraic",
    "coefficients",
    "deform",
    "edge_family",
    "enumerate_finite_subsets",
    "growth_rate",
    "growth_series",
    "marked_distance_bound",
    "oracle_coefficients",
    "parse_matrix",
    "pisot_limit_experiment",
    "polygon_matrix",
    "reduce_word",
    "solomon_series",
    "steinberg_F",
]
