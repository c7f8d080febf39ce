from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..errors import LiftgenError
from .syntax import (
    And, Atom, BOT, Cardinality, Exists, Forall, Formula, Iff, Implies, Not,
    Or, TOP, Truth, atoms, conjunction, conjuncts, free_variables,
    has_cardinality, simplify,
)


def ground(sentence: Formula, domain_size: int) -> Formula:
    """Expands every quantifier over the elements 1..n.

    Cardinality atoms are kept symbolic; they are decided by the model at
    evaluation time.
    """
    if domain_size < 1:
        raise LiftgenError("domain size must be positive")
    free = free_variables(sentence)
    if free:
        raise LiftgenError(f"free variables: {', '.join(sorted(free))}")
    return _ground(sentence, {}, domain_size)


def _ground(f: Formula, env: Dict[str, int], n: int) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(env[a] if isinstance(a, str) else a for a in f.args))
    if isinstance(f, (Truth, Cardinality)):
        return f
    if isinstance(f, Not):
        return Not(_ground(f.arg, env, n))
    if isinstance(f, And):
        return And(tuple(_ground(a, env, n) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(_ground(a, env, n) for a in f.args))
    if isinstance(f, Implies):
        return Implies(_ground(f.left, env, n), _ground(f.right, env, n))
    if isinstance(f, Iff):
        return Iff(_ground(f.left, env, n), _ground(f.right, env, n))
    instances = [_ground(f.body, {**env, f.var: e}, n) for e in range(1, n + 1)]
    if isinstance(f, Forall):
        return And(tuple(instances))
    if isinstance(f, Exists):
        return Or(tuple(instances))
    if f.op == "=":
        return _exactly(instances, f.k)
    if f.op == "<=":
        return Or(tuple(_exactly(instances, j) for j in range(min(f.k, n) + 1)))
    if f.k == 0:
        return TOP
    return Not(Or(tuple(_exactly(instances, j) for j in range(min(f.k - 1, n) + 1))))


def _exactly(instances: Sequence[Formula], k: int) -> Formula:
    """Exactly k of the instances hold, as a disjunction over k-subsets"""
    options = []
    for chosen in combinations(range(len(instances)), k):
        picked = set(chosen)
        options.append(And(tuple(
            inst if i in picked else Not(inst) for i, inst in enumerate(instances)
        )))
    return Or(tuple(options))


def _unit_literals(f: Formula) -> List[Tuple[Atom, bool]]:
    parts = f.args if isinstance(f, And) else (f,)
    units = []
    for p in parts:
        if isinstance(p, Atom):
            units.append((p, True))
        elif isinstance(p, Not) and isinstance(p.arg, Atom):
            units.append((p.arg, False))
    return units


def iter_assignments(
    formula: Formula,
    universe: Sequence[Atom],
) -> Iterator[Tuple[Dict[Atom, bool], List[Atom]]]:
    """Enumerates the satisfying assignments of a quantifier-free formula.

    Yields pairs (fixed, free): every total assignment over ``universe`` that
    extends ``fixed`` with any values for the ``free`` atoms is a model, and
    each model is covered by exactly one yielded pair. Branching follows the
    order of ``universe``.
    """
    if has_cardinality(formula):
        raise LiftgenError("cardinality atoms must be split off before enumeration")
    order = {a: i for i, a in enumerate(universe)}
    extra = atoms(formula) - set(order)
    if extra:
        raise LiftgenError(f"formula mentions atoms outside the universe: {sorted(map(str, extra))}")
    yield from _walk(simplify(formula), {}, order)


def _walk(f: Formula, fixed: Dict[Atom, bool], order: Dict[Atom, int]):
    while True:
        if f == BOT:
            return
        if f == TOP:
            yield dict(fixed), [a for a in order if a not in fixed]
            return
        units = _unit_literals(f)
        if not units:
            break
        step = {}
        for atom, value in units:
            if step.get(atom, value) != value:
                return
            step[atom] = value
        fixed = {**fixed, **step}
        f = simplify(f, step)
    pivot = min(atoms(f), key=order.__getitem__)
    for value in (True, False):
        yield from _walk(simplify(f, {pivot: value}), {**fixed, pivot: value}, order)


def iter_models(formula: Formula, universe: Sequence[Atom]) -> Iterator[Dict[Atom, bool]]:
    """Expands ``iter_assignments`` into total assignments"""
    for fixed, free in iter_assignments(formula, universe):
        for bits in range(1 << len(free)):
            total = dict(fixed)
            for i, atom in enumerate(free):
                total[atom] = bool(bits >> i & 1)
            yield total


def split_cardinality(sentence: Formula) -> Tuple[Formula, List[Cardinality], Optional[str]]:
    """Separates top-level cardinality conjuncts from the rest of a sentence.

    Returns the remaining sentence, the extracted atoms and, when some
    cardinality atom sits below another connective, a diagnostic.
    """
    rest, found = [], []
    problem = None
    for c in conjuncts(sentence):
        if isinstance(c, Cardinality):
            found.append(c)
        else:
            if has_cardinality(c):
                problem = f"cardinality atom nested inside {c}"
            rest.append(c)
    return conjunction(rest), found, problem
