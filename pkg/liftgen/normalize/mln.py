from typing import List

from gmpy2 import mpq
from logzero import logger
from sympy import Rational, exp
from sympy.ntheory.continued_fraction import (
    continued_fraction_convergents, continued_fraction_iterator,
)

from ..fol.syntax import Forall, Formula, Iff, conjunction, free_variables, vocabulary_of
from ..models import MlnSpec, Problem, UNIT_WEIGHT, Weighting
from .base import FreshNames, Reduct, Reduction

# decimal digits of exp(w) fed to the continued fraction expansion
EXP_DIGITS = 50


def exp_rational(weight: mpq, precision: float = 1e-12) -> mpq:
    """First continued-fraction convergent of exp(weight) within the given
    relative error"""
    weight = mpq(weight)
    if weight == 0:
        return mpq(1)
    target = Rational(exp(Rational(int(weight.numerator), int(weight.denominator))).evalf(EXP_DIGITS))
    bound = Rational(str(precision)) * target
    for convergent in continued_fraction_convergents(continued_fraction_iterator(target)):
        if abs(convergent - target) <= bound:
            return mpq(int(convergent.p), int(convergent.q))
    return mpq(int(target.p), int(target.q))


def rationalization_bias(formulas: int, domain_size: int, precision: float) -> float:
    """Upper bound on the total-variation bias caused by rationalized weights"""
    return formulas * domain_size ** 2 * precision


def _close(formula: Formula) -> Formula:
    for var in sorted(free_variables(formula), reverse=True):
        formula = Forall(var, formula)
    return formula


def mln_to_wfoms(spec: MlnSpec, precision: float = 1e-12) -> Reduction:
    """Hard formulas are closed universally; every soft (w, alpha) gets a
    fresh xi over the free variables of alpha with forall: xi <-> alpha and
    weights (exp(w), 1)"""
    fol_vocabulary = vocabulary_of(f for _, f in spec.formulas)
    fresh = FreshNames(fol_vocabulary)
    parts: List[Formula] = [_close(f) for f in spec.hard]
    weights: Weighting = {}
    for w, alpha in spec.soft:
        args = tuple(sorted(free_variables(alpha)))
        xi = fresh.pred("xi", len(args))
        parts.append(_close(Iff(xi(*args), alpha)))
        weights[xi] = (exp_rational(w, precision), UNIT_WEIGHT[1])
    for pred in fol_vocabulary:
        weights.setdefault(pred, UNIT_WEIGHT)
    bias = rationalization_bias(len(spec.soft), spec.domain_size, precision)
    logger.debug(f"mln reduction: {len(spec.soft)} soft formulas, bias bound {bias:.3g}")
    transformed = Problem(
        conjunction(parts), spec.domain_size, weights, name=spec.name,
        output_vocabulary=fol_vocabulary,
    )
    return Reduction(
        transformed, Reduct(fol_vocabulary), notes=[f"rationalization bias <= {bias:.3g}"],
    )
