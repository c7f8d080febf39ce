"""Ground enumeration oracle for small domains"""
from collections import defaultdict
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

import gmpy2
from gmpy2 import mpq

from ..errors import OracleCapError, UnsupportedFragmentError
from ..fol.grounding import ground, iter_assignments, split_cardinality
from ..fol.structure import Model, count_constraints_hold, ground_atoms
from ..fol.syntax import Atom, Formula, Pred, TOP, conjunction, predicates
from ..models import Problem, UNIT_WEIGHT, Weighting
from .weights import weight_of

DEFAULT_MAX_DOMAIN = 6
DEFAULT_MAX_ATOMS = 30


def _prepare(problem: Problem, max_domain: int, max_atoms: int):
    n = problem.domain_size
    if n > max_domain:
        raise OracleCapError(f"domain size {n} exceeds the oracle cap {max_domain}")
    universe = ground_atoms(problem.vocabulary, n)
    if len(universe) > max_atoms:
        raise OracleCapError(f"{len(universe)} ground atoms exceed the oracle cap {max_atoms}")
    sentence, found, issue = split_cardinality(problem.sentence)
    if issue:
        raise UnsupportedFragmentError(issue)
    constraints = conjunction([problem.constraints, *found])
    return universe, ground(sentence, n), constraints


def brute_count(
    problem: Problem,
    max_domain: int = DEFAULT_MAX_DOMAIN,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> mpq:
    universe, grounded, constraints = _prepare(problem, max_domain, max_atoms)
    weights = problem.weights
    tracked = predicates(constraints)
    total = mpq(0)
    for fixed, free in iter_assignments(grounded, universe):
        value = weight_of(fixed.items(), weights)
        if constraints == TOP:
            for atom in free:
                w, wbar = weights.get(atom.pred, UNIT_WEIGHT)
                value *= w + wbar
            total += value
            continue
        total += value * _constrained_free_weight(fixed, free, weights, tracked, constraints)
    return total


def _constrained_free_weight(
    fixed: Dict[Atom, bool],
    free: List[Atom],
    weights: Weighting,
    tracked,
    constraints: Formula,
) -> mpq:
    """Weight of all completions of fixed over the free atoms that satisfy
    the constraints, summed per predicate by binomial counting"""
    value = mpq(1)
    counts: Dict[Pred, int] = defaultdict(int)
    for atom, v in fixed.items():
        if v:
            counts[atom.pred] += 1
    open_by_pred: Dict[Pred, int] = defaultdict(int)
    for atom in free:
        if atom.pred in tracked:
            open_by_pred[atom.pred] += 1
        else:
            w, wbar = weights.get(atom.pred, UNIT_WEIGHT)
            value *= w + wbar
    preds = sorted(open_by_pred)
    subtotal = mpq(0)
    for chosen in product(*(range(open_by_pred[p] + 1) for p in preds)):
        names = {p.name: c for p, c in counts.items()}
        term = mpq(1)
        for p, j in zip(preds, chosen):
            names[p.name] = counts[p] + j
            w, wbar = weights.get(p, UNIT_WEIGHT)
            f = open_by_pred[p]
            term *= gmpy2.comb(f, j) * w ** j * wbar ** (f - j)
        if count_constraints_hold(constraints, names):
            subtotal += term
    return value * subtotal


def brute_wfomc(
    sentence: Formula,
    domain_size: int,
    weights: Optional[Weighting] = None,
    constraints: Formula = TOP,
    max_domain: int = DEFAULT_MAX_DOMAIN,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> mpq:
    """Weighted model count by ground enumeration"""
    problem = Problem(sentence, domain_size, dict(weights or {}), constraints)
    return brute_count(problem, max_domain, max_atoms)


def enumerate_models(
    problem: Problem,
    max_domain: int = DEFAULT_MAX_DOMAIN,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> Iterator[Tuple[Model, mpq]]:
    """Every model of the problem with its weight"""
    universe, grounded, constraints = _prepare(problem, max_domain, max_atoms)
    vocabulary = problem.vocabulary
    n = problem.domain_size
    for fixed, free in iter_assignments(grounded, universe):
        for bits in product((False, True), repeat=len(free)):
            assignment = {**fixed, **dict(zip(free, bits))}
            model = Model.of((a for a, v in assignment.items() if v), vocabulary, n)
            if constraints != TOP:
                counts = {p.name: model.count(p) for p in vocabulary}
                if not count_constraints_hold(constraints, counts):
                    continue
            yield model, weight_of(assignment.items(), problem.weights)
