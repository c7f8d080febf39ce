from .base_component import BaseComponent
from .normalizer import BaseProblemNormalizer, ProblemNormalizer
from .counter import BaseModelCounter, BruteForceModelCounter, LiftedModelCounter
from .sampler import BaseModelSampler, LiftedModelSampler
from .validator import BaseDistributionValidator, KsDistributionValidator

__all__ = [
    'BaseComponent',
    'BaseProblemNormalizer',
    'ProblemNormalizer',
    'BaseModelCounter',
    'LiftedModelCounter',
    'BruteForceModelCounter',
    'BaseModelSampler',
    'LiftedModelSampler',
    'BaseDistributionValidator',
    'KsDistributionValidator',
]
