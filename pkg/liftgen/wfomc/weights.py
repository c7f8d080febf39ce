from typing import Dict, Iterable, Mapping, Tuple, Union

from gmpy2 import mpq

from ..errors import InconsistencyError
from ..fol.structure import Model
from ..fol.syntax import Atom
from ..models import UNIT_WEIGHT, Weighting

Literals = Union[Iterable[Tuple[Atom, bool]], Mapping[Atom, bool]]


def weight_of(literals: Literals, weights: Weighting) -> mpq:
    """Product of literal weights; unlisted predicates weigh (1, 1)"""
    if isinstance(literals, Mapping):
        literals = literals.items()
    seen: Dict[Atom, bool] = {}
    for atom, positive in literals:
        if seen.setdefault(atom, positive) != positive:
            raise InconsistencyError(f"literal set contains {atom} and its negation")
    value = mpq(1)
    for atom, positive in seen.items():
        w, wbar = weights.get(atom.pred, UNIT_WEIGHT)
        value *= w if positive else wbar
    return value


def model_weight(model: Model, weights: Weighting) -> mpq:
    return weight_of(model.literals(), weights)
