from typing import List, Optional

from ..errors import UnsupportedFragmentError
from ..fol.syntax import (
    And, Atom, Cardinality, Exists, Forall, Formula, Iff, Implies, Not, Or, Pred,
    Truth, conjunction, conjuncts, free_variables, has_counting, is_quantifier_free,
    swap_variables,
)
from ..models import Problem, UNIT_WEIGHT
from .base import FreshNames, Reduct, Reduction, SnfSentence


def _orient(f: Formula, var: str) -> Formula:
    """Renames so that the variable ``var`` becomes y"""
    return f if var == "y" else swap_variables(f)


class _SnfBuilder:
    def __init__(self, fresh: FreshNames):
        self.fresh = fresh
        self.universal: List[Formula] = []
        self.existentials: List[Formula] = []
        self.introduced: List[Pred] = []

    def add(self, conjunct: Formula) -> None:
        f = conjunct
        if isinstance(f, Forall):
            body = f.body
            if isinstance(body, (Forall, Exists)) and body.var != f.var:
                inner = self.replace(body.body)
                target = self.universal if isinstance(body, Forall) else self.existentials
                target.append(_orient(inner, body.var))
                return
            self.universal.append(_orient(self.replace(body), "y" if f.var == "x" else "x"))
            return
        if isinstance(f, Exists):
            self.existentials.append(_orient(self.replace(f.body), f.var))
            return
        self.universal.append(self.replace(f))

    def replace(self, f: Formula) -> Formula:
        """Bottom-up replacement of quantified subformulas by fresh atoms"""
        if isinstance(f, (Atom, Truth, Cardinality)):
            return f
        if isinstance(f, Not):
            return Not(self.replace(f.arg))
        if isinstance(f, And):
            return And(tuple(self.replace(a) for a in f.args))
        if isinstance(f, Or):
            return Or(tuple(self.replace(a) for a in f.args))
        if isinstance(f, Implies):
            return Implies(self.replace(f.left), self.replace(f.right))
        if isinstance(f, Iff):
            return Iff(self.replace(f.left), self.replace(f.right))
        body = self.replace(f.body)
        outer: Optional[str] = next(iter(free_variables(body) - {f.var}), None)
        pred = self.fresh.pred("A", 0 if outer is None else 1)
        self.introduced.append(pred)
        # the defining atom always sits on x, the quantified variable on y
        defined = pred() if outer is None else pred("x")
        phi = _orient(body, f.var)
        if isinstance(f, Forall):
            self.universal.append(Implies(defined, phi))
            self.existentials.append(Implies(phi, defined))
        else:
            self.existentials.append(Implies(defined, phi))
            self.universal.append(Implies(phi, defined))
        return pred() if outer is None else pred(outer)


def to_snf(problem: Problem) -> Reduction:
    """Scott normal form: forall x forall y psi & AND_k forall x exists y phi_k,
    with psi and every phi_k quantifier-free"""
    sentence = problem.sentence
    if has_counting(sentence):
        raise UnsupportedFragmentError("counting quantifiers must be eliminated before Scott normal form")
    builder = _SnfBuilder(FreshNames(problem.vocabulary))
    for conjunct in conjuncts(sentence):
        builder.add(conjunct)
    snf = SnfSentence(
        universal=conjunction(builder.universal),
        existentials=tuple(builder.existentials),
    )
    for part in (snf.universal, *snf.existentials):
        if not is_quantifier_free(part):
            raise UnsupportedFragmentError(f"could not bring {part} into Scott normal form")
    weights = dict(problem.weights)
    for pred in builder.introduced:
        weights[pred] = UNIT_WEIGHT
    transformed = Problem(
        snf.as_formula(), problem.domain_size, weights, problem.constraints,
        problem.name, problem.output_vocabulary,
    )
    return Reduction(transformed, Reduct(problem.vocabulary), normal_form=snf)
