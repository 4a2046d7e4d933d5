"""Weighted poset metrics over finite fields, specialised to chain orders.

Ball sizes, optimal anticodes and their classification, MDS, perfect and
diameter-perfect codes, ultrametric tests, and brute-force oracles for all
of them.
"""

from .algebra import FieldSpec, make_field, parse_field
from .anticode import (
    ball, ball_size, build_optimal_anticode, classified_anticodes_through, diameter,
    is_optimal_anticode, normalize_radius, optimal_anticode_size,
)
from .codes import Code, code_report, construct_mds, construct_threshold_code, diameter_perfect_criterion
from .errors import BudgetExceeded, ContractError, DomainError, PosetCodesError, ValidationError
from .metric import MetricSpace, check_ultrametric, wp_distance, wp_weight
from .poset import Poset, antichain, chain
from .weights import WeightTable, load_weight, make_standard_weight, weight_stats

__version__ = "0.1.0"

__all__ = [
    "FieldSpec", "make_field", "parse_field",
    "ball", "ball_size", "build_optimal_anticode", "classified_anticodes_through", "diameter",
    "is_optimal_anticode", "normalize_radius", "optimal_anticode_size",
    "Code", "code_report", "construct_mds", "construct_threshold_code", "diameter_perfect_criterion",
    "BudgetExceeded", "ContractError", "DomainError", "PosetCodesError", "ValidationError",
    "MetricSpace", "check_ultrametric", "wp_distance", "wp_weight",
    "Poset", "antichain", "chain",
    "WeightTable", "load_weight", "make_standard_weight", "weight_stats",
]
