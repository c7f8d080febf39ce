"""Brute-force references: exact model distributions and evidence counts"""
from collections import defaultdict
from typing import Dict, Mapping, Sequence

from gmpy2 import mpq
from logzero import logger

from ..cells.configuration import multinomial
from ..cells.types import EvidenceType
from ..errors import OracleCapError
from ..fol.grounding import ground, iter_models
from ..fol.structure import Model, evaluate, ground_atoms
from ..fol.syntax import (
    Cardinality, Forall, Formula, Implies, Not, Or, Pred, conjunction, free_variables,
    literals_formula, substitute, vocabulary_of,
)
from ..models import MlnSpec, Problem, UNIT_WEIGHT
from ..normalize.base import FreshNames
from ..normalize.mln import exp_rational
from ..wfomc.brute import DEFAULT_MAX_ATOMS, DEFAULT_MAX_DOMAIN, brute_count, enumerate_models
from ..wfomc.counter import count_problem


def exact_distribution(
    problem: Problem,
    max_domain: int = DEFAULT_MAX_DOMAIN,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> Dict[Model, mpq]:
    """W(model) / WFOMC for every model, reported over the visible
    vocabulary; empty when the problem is unsatisfiable"""
    visible = problem.visible_vocabulary
    masses: Dict[Model, mpq] = defaultdict(mpq)
    total = mpq(0)
    for model, weight in enumerate_models(problem, max_domain, max_atoms):
        if weight == 0:
            continue
        masses[model.reduct(visible)] += weight
        total += weight
    if total == 0:
        logger.warning("exact distribution of an unsatisfiable problem is empty")
        return {}
    return {m: w / total for m, w in masses.items()}


def mln_exact_distribution(
    spec: MlnSpec,
    precision: float = 1e-12,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> Dict[Model, mpq]:
    """Possible-world distribution of an MLN with rationalized exp(w),
    enumerated over the MLN vocabulary itself"""
    vocabulary = vocabulary_of(f for _, f in spec.formulas)
    n = spec.domain_size
    universe = ground_atoms(vocabulary, n)
    if len(universe) > max_atoms:
        raise OracleCapError(f"{len(universe)} ground atoms exceed the oracle cap {max_atoms}")
    hard = conjunction(_closed(f) for f in spec.hard)
    soft = [(exp_rational(w, precision), _groundings(f, n)) for w, f in spec.soft]
    masses: Dict[Model, mpq] = {}
    for assignment in iter_models(ground(hard, n), universe):
        model = Model.of((a for a, v in assignment.items() if v), vocabulary, n)
        weight = mpq(1)
        for factor, groundings in soft:
            weight *= factor ** sum(evaluate(model, g) for g in groundings)
        masses[model] = weight
    total = sum(masses.values(), mpq(0))
    if total == 0:
        return {}
    return {m: w / total for m, w in masses.items()}


def _closed(f: Formula) -> Formula:
    for var in sorted(free_variables(f), reverse=True):
        f = Forall(var, f)
    return f


def _groundings(f: Formula, n: int):
    """Ground instances of a formula, one per assignment of its free variables"""
    free = sorted(free_variables(f))
    instances = [{}]
    for var in free:
        instances = [{**env, var: e} for env in instances for e in range(1, n + 1)]
    return [ground(substitute(f, env), n) for env in instances]


def _evidence_groups(evidence: Mapping[int, EvidenceType], n: int) -> Dict[EvidenceType, list]:
    groups: Dict[EvidenceType, list] = defaultdict(list)
    for element in range(1, n + 1):
        groups[evidence.get(element, EvidenceType(frozenset()))].append(element)
    return dict(sorted(groups.items(), key=lambda it: it[1][0]))


def evidence_wfomc(problem: Problem, evidence: Mapping[int, EvidenceType]) -> mpq:
    """Count of the problem conditioned on unary evidence, through fresh
    per-type predicates, exactly-one axioms and cardinality constraints,
    divided by the number of ways to place the evidence types"""
    n = problem.domain_size
    groups = _evidence_groups(evidence, n)
    fresh = FreshNames(problem.vocabulary)
    parts = [problem.sentence]
    constraints = [problem.constraints]
    weights = dict(problem.weights)
    markers = []
    for etype, members in groups.items():
        marker = fresh.pred("E", 1)
        markers.append(marker)
        weights[marker] = UNIT_WEIGHT
        required = sorted(etype.literals, key=lambda lit: lit[0].sort_key())
        parts.append(Forall("x", Implies(marker("x"), literals_formula(required))))
        constraints.append(Cardinality(marker, "=", len(members)))
    parts.append(Forall("x", Or(tuple(m("x") for m in markers)) if len(markers) > 1 else markers[0]("x")))
    for i, first in enumerate(markers):
        for second in markers[i + 1:]:
            parts.append(Forall("x", Or((Not(first("x")), Not(second("x"))))))
    extended = Problem(conjunction(parts), n, weights, conjunction(constraints))
    return count_problem(extended) / multinomial([len(m) for m in groups.values()])


def conditioned_brute(
    problem: Problem,
    evidence: Mapping[int, EvidenceType],
    max_domain: int = DEFAULT_MAX_DOMAIN,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> mpq:
    """Brute-force count of the problem with the evidence literals asserted
    on their elements"""
    literals = []
    for element, etype in evidence.items():
        for atom, value in etype.literals:
            literals.append((substitute(atom, {"x": element}), value))
    sentence = conjunction([problem.sentence, literals_formula(literals)])
    conditioned = Problem(sentence, problem.domain_size, problem.weights, problem.constraints)
    return brute_count(conditioned, max_domain, max_atoms)


def histogram(distribution: Mapping[Model, mpq], preds: Sequence[Pred]) -> Dict[tuple, mpq]:
    """Count-vector distribution induced by a model distribution"""
    result: Dict[tuple, mpq] = defaultdict(mpq)
    for model, p in distribution.items():
        result[tuple(model.count(pred) for pred in preds)] += p
    return dict(sorted(result.items()))
