from .rng import RandomSource, random_partition, sample_discrete
from .one_types import sample_1types
from .ufo2 import sample_2tables_ufo2
from .domain_recursion import (
    DomainRecursionSampler, TwoTablesConfig, ex_sat, sample_2tables_cc, sample_2tables_fo2,
)
from .model_sampler import ModelSampler, sample_model

__all__ = [
    'RandomSource', 'random_partition', 'sample_discrete', 'sample_1types',
    'sample_2tables_ufo2', 'DomainRecursionSampler', 'TwoTablesConfig', 'ex_sat',
    'sample_2tables_cc', 'sample_2tables_fo2', 'ModelSampler', 'sample_model',
]
