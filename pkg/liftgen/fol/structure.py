from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Tuple

from ..errors import LiftgenError
from .syntax import (
    And, Atom, Cardinality, CountingExists, Exists, Forall, Formula, Iff,
    Implies, Not, Or, Pred, Truth,
)


def ground_atoms(vocabulary: Iterable[Pred], domain_size: int) -> List[Atom]:
    """All ground atoms of a vocabulary in lexicographic order
    (predicate name, then argument indices)"""
    result = []
    for pred in sorted(vocabulary):
        for args in product(range(1, domain_size + 1), repeat=pred.arity):
            result.append(Atom(pred, args))
    return result


@dataclass(frozen=True)
class Model:
    """A total interpretation: the true ground atoms, everything else false"""
    atoms: FrozenSet[Atom]
    vocabulary: Tuple[Pred, ...]
    domain_size: int
    _counts: Dict[str, int] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        counts = {p.name: 0 for p in self.vocabulary}
        for atom in self.atoms:
            if atom.pred.name not in counts:
                raise LiftgenError(f"atom {atom} outside the model vocabulary")
            if not atom.is_ground or any(not 1 <= a <= self.domain_size for a in atom.args):
                raise LiftgenError(f"atom {atom} is not ground over a domain of size {self.domain_size}")
            counts[atom.pred.name] += 1
        object.__setattr__(self, "_counts", counts)

    @classmethod
    def of(cls, atoms: Iterable[Atom], vocabulary: Iterable[Pred], domain_size: int) -> "Model":
        return cls(frozenset(atoms), tuple(sorted(set(vocabulary))), domain_size)

    def holds(self, atom: Atom) -> bool:
        return atom in self.atoms

    def count(self, pred: Pred) -> int:
        return self._counts[pred.name]

    def knows(self, pred: Pred) -> bool:
        return pred.name in self._counts

    def sorted_atoms(self) -> List[Atom]:
        return sorted(self.atoms, key=Atom.sort_key)

    def reduct(self, vocabulary: Iterable[Pred]) -> "Model":
        keep = set(vocabulary)
        return Model.of((a for a in self.atoms if a.pred in keep), keep, self.domain_size)

    def literals(self) -> Iterator[Tuple[Atom, bool]]:
        for atom in ground_atoms(self.vocabulary, self.domain_size):
            yield atom, atom in self.atoms


def evaluate(model: Model, ground_formula: Formula) -> bool:
    """Truth value of a quantifier-free ground formula under a total model"""
    f = ground_formula
    if isinstance(f, Truth):
        return f.value
    if isinstance(f, Atom):
        if not model.knows(f.pred):
            raise LiftgenError(f"unknown predicate {f.pred.name} in evaluated formula")
        if not f.is_ground:
            raise LiftgenError(f"atom {f} is not ground")
        return f in model.atoms
    if isinstance(f, Cardinality):
        if not model.knows(f.pred):
            raise LiftgenError(f"unknown predicate {f.pred.name} in cardinality atom")
        return f.holds(model.count(f.pred))
    if isinstance(f, Not):
        return not evaluate(model, f.arg)
    if isinstance(f, And):
        return all(evaluate(model, a) for a in f.args)
    if isinstance(f, Or):
        return any(evaluate(model, a) for a in f.args)
    if isinstance(f, Implies):
        return (not evaluate(model, f.left)) or evaluate(model, f.right)
    if isinstance(f, Iff):
        return evaluate(model, f.left) == evaluate(model, f.right)
    if isinstance(f, (Forall, Exists, CountingExists)):
        raise LiftgenError("evaluate expects a quantifier-free formula; ground it first")
    raise TypeError(f"not a formula: {f!r}")


def evaluate_assignment(f: Formula, assignment: Mapping[Atom, bool]) -> bool:
    """Evaluates a quantifier-free formula whose atoms all appear in the assignment"""
    if isinstance(f, Truth):
        return f.value
    if isinstance(f, Atom):
        return assignment[f]
    if isinstance(f, Not):
        return not evaluate_assignment(f.arg, assignment)
    if isinstance(f, And):
        return all(evaluate_assignment(a, assignment) for a in f.args)
    if isinstance(f, Or):
        return any(evaluate_assignment(a, assignment) for a in f.args)
    if isinstance(f, Implies):
        return (not evaluate_assignment(f.left, assignment)) or evaluate_assignment(f.right, assignment)
    if isinstance(f, Iff):
        return evaluate_assignment(f.left, assignment) == evaluate_assignment(f.right, assignment)
    raise LiftgenError(f"cannot evaluate {type(f).__name__} under a plain assignment")


def count_constraints_hold(constraints: Formula, counts: Mapping[str, int]) -> bool:
    """Evaluates a Boolean combination of cardinality atoms on predicate counts"""
    f = constraints
    if isinstance(f, Truth):
        return f.value
    if isinstance(f, Cardinality):
        return f.holds(counts.get(f.pred.name, 0))
    if isinstance(f, Not):
        return not count_constraints_hold(f.arg, counts)
    if isinstance(f, And):
        return all(count_constraints_hold(a, counts) for a in f.args)
    if isinstance(f, Or):
        return any(count_constraints_hold(a, counts) for a in f.args)
    if isinstance(f, Implies):
        return (not count_constraints_hold(f.left, counts)) or count_constraints_hold(f.right, counts)
    if isinstance(f, Iff):
        return count_constraints_hold(f.left, counts) == count_constraints_hold(f.right, counts)
    raise LiftgenError(f"{type(f).__name__} is not allowed in cardinality constraints")
