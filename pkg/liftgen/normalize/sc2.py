from math import factorial
from typing import List

from gmpy2 import mpq
from logzero import logger

from ..errors import UnsupportedFragmentError
from ..fol.syntax import (
    Atom, Cardinality, CountingExists, Exists, Forall, Formula, Iff, Not, Or,
    conjunction, conjuncts, has_counting, is_quantifier_free, swap_variables,
)
from ..models import Problem, UNIT_WEIGHT
from .base import FreshNames, Reduct, Reduction


class _Sc2Rewriter:
    def __init__(self, problem: Problem):
        self.n = problem.domain_size
        self.fresh = FreshNames(problem.vocabulary)
        self.sentence: List[Formula] = []
        self.constraints: List[Formula] = [problem.constraints]
        self.weights = dict(problem.weights)
        self.multiplicity = mpq(1)
        self.notes: List[str] = []

    def _aux(self, prefix: str, arity: int):
        pred = self.fresh.pred(prefix, arity)
        self.weights[pred] = UNIT_WEIGHT
        return pred

    def add(self, conjunct: Formula) -> None:
        if not has_counting(conjunct):
            self.sentence.append(conjunct)
            return
        f = conjunct
        if isinstance(f, Forall) and isinstance(f.body, CountingExists):
            inner = f.body
            if inner.var != f.var and inner.op == "=" and is_quantifier_free(inner.body):
                if f.var == "y":
                    inner = swap_variables(inner)
                self.for_each_exactly(inner.k, inner.body)
                return
        if isinstance(f, CountingExists) and isinstance(f.body, Forall):
            inner = f.body
            if inner.var != f.var and f.op == "=" and is_quantifier_free(inner.body):
                body = inner.body if f.var == "x" else swap_variables(inner.body)
                self.exactly_universal(f.k, body)
                return
        raise UnsupportedFragmentError(
            f"{conjunct} is outside the supported counting shapes "
            "(forall x exists[=k] y: phi and exists[=k] x forall y: phi)"
        )

    def for_each_exactly(self, k: int, phi: Formula) -> None:
        """forall x exists[=k] y: phi(x,y) as |P| = k*n over k disjoint
        total witness relations whose union is P"""
        if isinstance(phi, Atom) and phi.args == ("x", "y"):
            target = phi.pred
        else:
            target = self._aux("P", 2)
            self.sentence.append(Forall("x", Forall("y", Iff(target("x", "y"), phi))))
        witnesses = [self._aux("skR", 2) for _ in range(k)]
        self.sentence.append(Forall("x", Forall("y", Iff(
            target("x", "y"), Or(tuple(r("x", "y") for r in witnesses))
        ))))
        for r in witnesses:
            self.sentence.append(Forall("x", Exists("y", r("x", "y"))))
        for i, first in enumerate(witnesses):
            for second in witnesses[i + 1:]:
                self.sentence.append(Forall("x", Forall("y", Or((
                    Not(first("x", "y")), Not(second("x", "y")),
                )))))
        self.constraints.append(Cardinality(target, "=", k * self.n))
        self.multiplicity *= mpq(factorial(k)) ** self.n
        self.notes.append(f"exactly {k} successors through {target.name}, multiplicity (k!)^n")

    def exactly_universal(self, k: int, phi: Formula) -> None:
        """exists[=k] x forall y: phi(x,y) as |U| = k with U(x) <-> forall y: phi"""
        marker = self._aux("U", 1)
        self.sentence.append(Forall("x", Iff(marker("x"), Forall("y", phi))))
        self.constraints.append(Cardinality(marker, "=", k))


def sc2_to_cc(problem: Problem) -> Reduction:
    """Eliminates exact counting quantifiers in favour of cardinality
    constraints; the result has no counting quantifiers left"""
    rewriter = _Sc2Rewriter(problem)
    for conjunct in conjuncts(problem.sentence):
        rewriter.add(conjunct)
    logger.debug(f"counting reduction: multiplicity {rewriter.multiplicity}")
    transformed = Problem(
        conjunction(rewriter.sentence), problem.domain_size, rewriter.weights,
        conjunction(rewriter.constraints), problem.name, problem.output_vocabulary,
    )
    return Reduction(
        transformed, Reduct(problem.vocabulary), rewriter.multiplicity, notes=rewriter.notes,
    )
