from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Tuple

from gmpy2 import mpq

from .fol.structure import Model
from .fol.syntax import Formula, Pred, TOP, vocabulary_of

WeightPair = Tuple[mpq, mpq]
Weighting = Dict[Pred, WeightPair]

UNIT_WEIGHT: WeightPair = (mpq(1), mpq(1))


@dataclass(frozen=True, eq=False)
class Problem:
    """A symmetric weighted model counting/sampling problem"""
    sentence: Formula
    domain_size: int
    weights: Weighting = field(default_factory=dict)
    constraints: Formula = TOP
    name: Optional[str] = None
    # models are reported over this vocabulary when set (MLN reductions)
    output_vocabulary: Optional[Tuple[Pred, ...]] = None

    @property
    def vocabulary(self) -> Tuple[Pred, ...]:
        preds = set(vocabulary_of([self.sentence, self.constraints])) | set(self.weights)
        return tuple(sorted(preds))

    @property
    def visible_vocabulary(self) -> Tuple[Pred, ...]:
        if self.output_vocabulary is not None:
            return self.output_vocabulary
        return self.vocabulary

    def weight(self, pred: Pred) -> WeightPair:
        return self.weights.get(pred, UNIT_WEIGHT)

    def with_domain(self, domain_size: int) -> "Problem":
        return replace(self, domain_size=domain_size)


@dataclass(frozen=True, eq=False)
class MlnSpec:
    """Weighted formulas; a weight of None marks a hard formula"""
    formulas: Tuple[Tuple[Optional[mpq], Formula], ...]
    domain_size: int
    name: Optional[str] = None

    @property
    def hard(self) -> List[Formula]:
        return [f for w, f in self.formulas if w is None]

    @property
    def soft(self) -> List[Tuple[mpq, Formula]]:
        return [(w, f) for w, f in self.formulas if w is not None]


class OutputFormat(Enum):
    LINES = "lines"
    JSON = "json"


class Fragment(Enum):
    UFO2 = "UFO2"
    FO2 = "FO2"
    SC2 = "SC2"


@dataclass
class SampledModel:
    model: Model
    path_probability: mpq
    probability: mpq


@dataclass
class CountResult:
    value: mpq
    domain_size: int
    fragment: Fragment
    method: str


@dataclass
class SamplingReport:
    problem_hash: str
    seed: int
    count: mpq
    samples: List[SampledModel]
    validation: Optional[object] = None
