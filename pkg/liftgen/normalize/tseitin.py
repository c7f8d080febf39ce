from typing import List

from ..cells.types import TseitinAtom
from ..fol.syntax import Atom, Formula, Iff, conjunction
from ..models import Problem, UNIT_WEIGHT
from .base import FreshNames, Reduct, Reduction, SnfSentence, TseitinSentence


def _reusable(phi: Formula) -> bool:
    return isinstance(phi, Atom) and phi.pred.arity == 2 and phi.args == ("x", "y")


def tseitin_existentials(snf: SnfSentence, problem: Problem) -> Reduction:
    """Replaces each forall x exists y: phi_k by an obligation Z_k(x) with
    witness predicate R_k(x,y) <-> phi_k(x,y).

    A positive binary atom P(x,y) serves as its own R_k. The Z_k live only in
    the registry: block types carry them during counting and sampling.
    """
    fresh = FreshNames(problem.vocabulary)
    universal: List[Formula] = [snf.universal]
    registry: List[TseitinAtom] = []
    weights = dict(problem.weights)
    for k, phi in enumerate(snf.existentials, start=1):
        z = fresh.pred("Z", 1)
        if _reusable(phi):
            r = phi.pred
        else:
            r = fresh.pred("R", 2)
            universal.append(Iff(r("x", "y"), phi))
            weights[r] = UNIT_WEIGHT
        weights[z] = UNIT_WEIGHT
        registry.append(TseitinAtom(k, z, r))
    sentence = TseitinSentence(conjunction(universal), tuple(registry))
    transformed = Problem(
        sentence.as_formula(), problem.domain_size, weights, problem.constraints,
        problem.name, problem.output_vocabulary,
    )
    return Reduction(transformed, Reduct(problem.vocabulary), normal_form=sentence)
