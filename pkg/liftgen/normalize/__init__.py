from .base import FreshNames, Reduct, Reduction, SnfSentence, TseitinSentence
from .counting import expand_counting, lower_zero_counting
from .sc2 import sc2_to_cc
from .snf import to_snf
from .tseitin import tseitin_existentials
from .mln import exp_rational, mln_to_wfoms, rationalization_bias
from .pipeline import NormalizedProblem, normalize_problem

__all__ = [
    'FreshNames', 'Reduct', 'Reduction', 'SnfSentence', 'TseitinSentence',
    'expand_counting', 'lower_zero_counting', 'sc2_to_cc', 'to_snf',
    'tseitin_existentials', 'exp_rational', 'mln_to_wfoms', 'rationalization_bias',
    'NormalizedProblem', 'normalize_problem',
]
