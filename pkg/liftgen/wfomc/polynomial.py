"""Weight arithmetic for cardinality constraints.

Without constraints every weight is an exact ``mpq``. With constraints, each
constrained predicate P gets an indeterminate c_P and a positive P literal of
weight w contributes ``w * c_P``; the count polynomial then records, for every
vector of predicate counts, the total weight of the models with those counts.
"""
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from gmpy2 import mpq
from sympy import Poly, QQ, Rational, symbols

from ..errors import LiftgenError
from ..fol.structure import count_constraints_hold
from ..fol.syntax import (
    And, BOT, Cardinality, Formula, Iff, Implies, Not, Or, Pred, TOP, Truth,
    predicates, simplify,
)
from ..models import UNIT_WEIGHT


def _rational(value) -> Rational:
    value = mpq(value)
    return Rational(int(value.numerator), int(value.denominator))


def _mpq(value) -> mpq:
    return mpq(int(value.p), int(value.q))


class WeightAlgebra:
    def __init__(self, tracked: Iterable[Pred] = ()):
        self.tracked: Tuple[Pred, ...] = tuple(sorted(set(tracked)))
        self._position = {p: i for i, p in enumerate(self.tracked)}
        self.gens = symbols(f"c0:{len(self.tracked)}") if self.tracked else ()

    @property
    def symbolic(self) -> bool:
        return bool(self.tracked)

    def const(self, value):
        if not self.symbolic:
            return mpq(value)
        return Poly(_rational(value), *self.gens, domain=QQ)

    @property
    def one(self):
        return self.const(1)

    @property
    def zero(self):
        return self.const(0)

    def literal(self, pred: Pred, positive: bool, weights):
        w, wbar = weights.get(pred, UNIT_WEIGHT)
        if positive and pred in self._position:
            gen = self.gens[self._position[pred]]
            return Poly(_rational(w) * gen, *self.gens, domain=QQ)
        return self.const(w if positive else wbar)

    def scale(self, value, factor):
        if not self.symbolic:
            return value * factor
        return value * self.const(factor)

    def power(self, value, exponent: int):
        return value ** exponent

    def is_zero(self, value) -> bool:
        if self.symbolic:
            return value.is_zero
        return value == 0

    def terms(self, value) -> Iterator[Tuple[Dict[Pred, int], mpq]]:
        """(predicate counts, total weight) pairs of a count polynomial"""
        if not self.symbolic:
            if value != 0:
                yield {}, mpq(value)
            return
        for monom, coeff in value.terms():
            if coeff == 0:
                continue
            yield dict(zip(self.tracked, monom)), _mpq(coeff)

    def extract(self, value, constraints: Formula = TOP) -> mpq:
        """Total weight of the terms whose counts satisfy the constraints"""
        if constraints == TOP:
            if self.symbolic:
                return sum((c for _, c in self.terms(value)), mpq(0))
            return mpq(value)
        if constraints == BOT:
            return mpq(0)
        missing = predicates(constraints) - set(self.tracked)
        if missing:
            raise LiftgenError(f"constraint predicates are not tracked: {sorted(map(str, missing))}")
        total = mpq(0)
        for counts, coeff in self.terms(value):
            if count_constraints_hold(constraints, {p.name: c for p, c in counts.items()}):
                total += coeff
        return total


def _shift(atom: Cardinality, used: int) -> Formula:
    bound = atom.q - used
    if bound >= 0:
        return Cardinality(atom.pred, atom.op, bound)
    # remaining counts are never negative
    return TOP if atom.op in (">=", ">") else BOT


def reduce_constraints(constraints: Formula, used: Mapping[Pred, int]) -> Formula:
    """Rewrites constraints over the remaining atoms once ``used`` true atoms
    of each predicate have been fixed"""
    def walk(f: Formula) -> Formula:
        if isinstance(f, Truth):
            return f
        if isinstance(f, Cardinality):
            return _shift(f, used.get(f.pred, 0))
        if isinstance(f, Not):
            return Not(walk(f.arg))
        if isinstance(f, And):
            return And(tuple(walk(a) for a in f.args))
        if isinstance(f, Or):
            return Or(tuple(walk(a) for a in f.args))
        if isinstance(f, Implies):
            return Implies(walk(f.left), walk(f.right))
        if isinstance(f, Iff):
            return Iff(walk(f.left), walk(f.right))
        raise LiftgenError(f"{type(f).__name__} is not allowed in cardinality constraints")
    return simplify(walk(constraints))
