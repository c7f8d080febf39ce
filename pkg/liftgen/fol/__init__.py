from .syntax import (
    And, Atom, BOT, Cardinality, CountingExists, Exists, Forall, Formula, Iff,
    Implies, Not, Or, Pred, TOP, Truth, conjunction, disjunction, negate,
    predicates, simplify, substitute,
)
from .structure import Model, evaluate, ground_atoms, count_constraints_hold
from .grounding import ground, iter_assignments, iter_models

__all__ = [
    'And', 'Atom', 'BOT', 'Cardinality', 'CountingExists', 'Exists', 'Forall',
    'Formula', 'Iff', 'Implies', 'Not', 'Or', 'Pred', 'TOP', 'Truth',
    'conjunction', 'disjunction', 'negate', 'predicates', 'simplify', 'substitute',
    'Model', 'evaluate', 'ground_atoms', 'count_constraints_hold',
    'ground', 'iter_assignments', 'iter_models',
]
