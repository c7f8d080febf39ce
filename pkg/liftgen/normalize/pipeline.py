from dataclasses import dataclass, field, replace
from typing import List, Tuple

from gmpy2 import mpq
from logzero import logger

from ..errors import UnsupportedFragmentError
from ..fol.grounding import split_cardinality
from ..fol.structure import Model
from ..fol.syntax import Formula, Pred, conjunction, has_counting
from ..models import Fragment, Problem, Weighting
from .base import Reduction, TseitinSentence
from .counting import expand_counting, lower_zero_counting
from .sc2 import sc2_to_cc
from .snf import to_snf
from .tseitin import tseitin_existentials


@dataclass
class NormalizedProblem:
    """A problem in the form the lifted engine consumes: forall x forall y psi
    plus Tseitin obligations, cardinality constraints and the bookkeeping
    needed to translate results back"""
    original: Problem
    tseitin: TseitinSentence
    vocabulary: Tuple[Pred, ...]
    weights: Weighting
    constraints: Formula
    fragment: Fragment
    stages: List[Reduction] = field(default_factory=list)

    @property
    def domain_size(self) -> int:
        return self.original.domain_size

    @property
    def multiplicity(self) -> mpq:
        value = mpq(1)
        for stage in self.stages:
            value *= stage.multiplicity
        return value

    @property
    def output_vocabulary(self) -> Tuple[Pred, ...]:
        return self.original.visible_vocabulary

    def back_map(self, model: Model) -> Model:
        for stage in reversed(self.stages):
            model = stage.back_map(model)
        return model.reduct(self.output_vocabulary)


def normalize_problem(problem: Problem) -> NormalizedProblem:
    """Counting expansion, SC2 elimination, Scott normal form and Tseitin
    transformation, in that order"""
    sentence, found, issue = split_cardinality(problem.sentence)
    if issue:
        raise UnsupportedFragmentError(issue)
    n = problem.domain_size
    current = replace(
        problem,
        sentence=lower_zero_counting(expand_counting(sentence, n)),
        constraints=conjunction([problem.constraints, *found]),
    )
    stages: List[Reduction] = []
    fragment = None
    if has_counting(current.sentence):
        stage = sc2_to_cc(current)
        stages.append(stage)
        current = stage.transformed
        fragment = Fragment.SC2
    stage = to_snf(current)
    stages.append(stage)
    current = stage.transformed
    if fragment is None:
        fragment = Fragment.FO2 if stage.normal_form.existentials else Fragment.UFO2
    snf_vocabulary = current.vocabulary
    stage = tseitin_existentials(stage.normal_form, current)
    stages.append(stage)
    tseitin: TseitinSentence = stage.normal_form
    obligations = set(tseitin.auxiliary)
    vocabulary = tuple(sorted(
        (set(snf_vocabulary) | {entry.r for entry in tseitin.registry}) - obligations
    ))
    weights = {p: w for p, w in stage.transformed.weights.items() if p not in obligations}
    logger.debug(
        f"normalized {problem.name or 'problem'}: fragment {fragment.value}, "
        f"{len(vocabulary)} predicates, {len(tseitin.registry)} obligations"
    )
    return NormalizedProblem(
        original=problem,
        tseitin=tseitin,
        vocabulary=vocabulary,
        weights=weights,
        constraints=stage.transformed.constraints,
        fragment=fragment,
        stages=stages,
    )
