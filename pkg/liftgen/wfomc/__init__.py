from .weights import model_weight, weight_of
from .polynomial import WeightAlgebra, reduce_constraints
from .counter import (
    Branch, CellConditioning, LiftedCounter, count_distribution, count_problem, wfomc,
    wfomc_conditioned,
)
from .brute import brute_count, brute_wfomc, enumerate_models

__all__ = [
    'model_weight', 'weight_of', 'WeightAlgebra', 'reduce_constraints',
    'Branch', 'CellConditioning', 'LiftedCounter', 'count_distribution', 'count_problem',
    'wfomc', 'wfomc_conditioned', 'brute_count', 'brute_wfomc', 'enumerate_models',
]
