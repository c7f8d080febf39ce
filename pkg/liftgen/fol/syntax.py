"""Immutable first-order syntax for the two-variable fragment with counting
quantifiers and cardinality atoms.

Terms are either variable names (``"x"``, ``"y"``) or 1-based domain element
indices. Every node is a frozen dataclass, so formulas hash structurally and
can be shared freely between threads.
"""
from dataclasses import dataclass
from itertools import chain
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple, Union

Term = Union[str, int]

VARIABLES = ("x", "y")
COUNTING_OPS = ("=", "<=", ">=")
COMPARISON_OPS = ("=", "<=", ">=", "<", ">")


@dataclass(frozen=True, order=True)
class Pred:
    name: str
    arity: int

    def __call__(self, *args: Term) -> "Atom":
        return Atom(self, tuple(args))

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


class Formula:
    """Base class of every AST node"""

    def __and__(self, other: "Formula") -> "Formula":
        return And((self, other))

    def __or__(self, other: "Formula") -> "Formula":
        return Or((self, other))

    def __invert__(self) -> "Formula":
        return Not(self)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Truth(Formula):
    value: bool


TOP = Truth(True)
BOT = Truth(False)


@dataclass(frozen=True)
class Atom(Formula):
    pred: Pred
    args: Tuple[Term, ...] = ()

    def __post_init__(self):
        if len(self.args) != self.pred.arity:
            raise ValueError(
                f"{self.pred.name} expects {self.pred.arity} arguments, got {len(self.args)}"
            )

    @property
    def is_ground(self) -> bool:
        return all(isinstance(a, int) for a in self.args)

    def sort_key(self) -> Tuple[str, Tuple[Term, ...]]:
        return (self.pred.name, tuple(str(a) if isinstance(a, str) else a for a in self.args))


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: Tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    args: Tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class CountingExists(Formula):
    var: str
    op: str
    k: int
    body: Formula

    def __post_init__(self):
        if self.op not in COUNTING_OPS:
            raise ValueError(f"unknown counting mode {self.op!r}")
        if self.k < 0:
            raise ValueError("counting parameter must be non-negative")


@dataclass(frozen=True)
class Cardinality(Formula):
    pred: Pred
    op: str
    q: int

    def __post_init__(self):
        if self.op not in COMPARISON_OPS:
            raise ValueError(f"unknown comparison {self.op!r}")

    def holds(self, count: int) -> bool:
        return compare(count, self.op, self.q)


Quantifier = (Forall, Exists, CountingExists)


def compare(value: int, op: str, bound: int) -> bool:
    if op == "=":
        return value == bound
    if op == "<=":
        return value <= bound
    if op == ">=":
        return value >= bound
    if op == "<":
        return value < bound
    if op == ">":
        return value > bound
    raise ValueError(f"unknown comparison {op!r}")


def children(f: Formula) -> Tuple[Formula, ...]:
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, (Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, Quantifier):
        return (f.body,)
    return ()


def free_variables(f: Formula) -> FrozenSet[str]:
    if isinstance(f, Atom):
        return frozenset(a for a in f.args if isinstance(a, str))
    if isinstance(f, Quantifier):
        return free_variables(f.body) - {f.var}
    return frozenset(chain.from_iterable(free_variables(c) for c in children(f)))


def predicates(f: Formula) -> FrozenSet[Pred]:
    if isinstance(f, Atom):
        return frozenset([f.pred])
    if isinstance(f, Cardinality):
        return frozenset([f.pred])
    return frozenset(chain.from_iterable(predicates(c) for c in children(f)))


def atoms(f: Formula) -> FrozenSet[Atom]:
    if isinstance(f, Atom):
        return frozenset([f])
    return frozenset(chain.from_iterable(atoms(c) for c in children(f)))


def variables(f: Formula) -> FrozenSet[str]:
    """All variable names used anywhere, bound or free"""
    if isinstance(f, Atom):
        return free_variables(f)
    own = frozenset([f.var]) if isinstance(f, Quantifier) else frozenset()
    return own.union(*(variables(c) for c in children(f)))


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, Quantifier):
        return False
    return all(is_quantifier_free(c) for c in children(f))


def has_counting(f: Formula) -> bool:
    if isinstance(f, CountingExists):
        return True
    return any(has_counting(c) for c in children(f))


def has_cardinality(f: Formula) -> bool:
    if isinstance(f, Cardinality):
        return True
    return any(has_cardinality(c) for c in children(f))


def conjuncts(f: Formula) -> Tuple[Formula, ...]:
    """Flattens nested top-level conjunctions"""
    if isinstance(f, And):
        return tuple(chain.from_iterable(conjuncts(a) for a in f.args))
    if f == TOP:
        return ()
    return (f,)


def conjunction(parts: Iterable[Formula]) -> Formula:
    flat = []
    for p in parts:
        for c in conjuncts(p):
            if c == BOT:
                return BOT
            flat.append(c)
    if not flat:
        return TOP
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disjunction(parts: Iterable[Formula]) -> Formula:
    flat = []
    for p in parts:
        items = p.args if isinstance(p, Or) else (p,)
        for c in items:
            if c == TOP:
                return TOP
            if c != BOT:
                flat.append(c)
    if not flat:
        return BOT
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def negate(f: Formula) -> Formula:
    if isinstance(f, Truth):
        return BOT if f.value else TOP
    if isinstance(f, Not):
        return f.arg
    return Not(f)


def substitute(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Replaces free occurrences of variables; bound occurrences are left alone"""
    if not mapping:
        return f
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(mapping.get(a, a) if isinstance(a, str) else a for a in f.args))
    if isinstance(f, (Truth, Cardinality)):
        return f
    if isinstance(f, Not):
        return Not(substitute(f.arg, mapping))
    if isinstance(f, And):
        return And(tuple(substitute(a, mapping) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(substitute(a, mapping) for a in f.args))
    if isinstance(f, Implies):
        return Implies(substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, Iff):
        return Iff(substitute(f.left, mapping), substitute(f.right, mapping))
    inner = {k: v for k, v in mapping.items() if k != f.var}
    body = substitute(f.body, inner)
    if isinstance(f, Forall):
        return Forall(f.var, body)
    if isinstance(f, Exists):
        return Exists(f.var, body)
    return CountingExists(f.var, f.op, f.k, body)


def swap_variables(f: Formula) -> Formula:
    """Renames x to y and y to x everywhere, bound variables included"""
    table = {"x": "y", "y": "x"}
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(table.get(a, a) if isinstance(a, str) else a for a in f.args))
    if isinstance(f, (Truth, Cardinality)):
        return f
    if isinstance(f, Not):
        return Not(swap_variables(f.arg))
    if isinstance(f, And):
        return And(tuple(swap_variables(a) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(swap_variables(a) for a in f.args))
    if isinstance(f, Implies):
        return Implies(swap_variables(f.left), swap_variables(f.right))
    if isinstance(f, Iff):
        return Iff(swap_variables(f.left), swap_variables(f.right))
    var = table.get(f.var, f.var)
    body = swap_variables(f.body)
    if isinstance(f, Forall):
        return Forall(var, body)
    if isinstance(f, Exists):
        return Exists(var, body)
    return CountingExists(var, f.op, f.k, body)


def simplify(f: Formula, assignment: Optional[Mapping[Atom, bool]] = None) -> Formula:
    """Propagates truth constants, optionally fixing the value of some atoms.

    Quantifiers over a constant body collapse (domains are never empty);
    counting quantifiers and cardinality atoms are kept as they are.
    """
    if isinstance(f, Atom):
        if assignment is not None and f in assignment:
            return TOP if assignment[f] else BOT
        return f
    if isinstance(f, (Truth, Cardinality)):
        return f
    if isinstance(f, Not):
        return negate(simplify(f.arg, assignment))
    if isinstance(f, And):
        return conjunction(simplify(a, assignment) for a in f.args)
    if isinstance(f, Or):
        return disjunction(simplify(a, assignment) for a in f.args)
    if isinstance(f, Implies):
        left = simplify(f.left, assignment)
        right = simplify(f.right, assignment)
        if left == BOT or right == TOP:
            return TOP
        if left == TOP:
            return right
        if right == BOT:
            return negate(left)
        return Implies(left, right)
    if isinstance(f, Iff):
        left = simplify(f.left, assignment)
        right = simplify(f.right, assignment)
        if isinstance(left, Truth):
            return right if left.value else negate(right)
        if isinstance(right, Truth):
            return left if right.value else negate(left)
        if left == right:
            return TOP
        return Iff(left, right)
    body = simplify(f.body, assignment)
    if isinstance(f, CountingExists):
        return CountingExists(f.var, f.op, f.k, body)
    if isinstance(body, Truth):
        return body
    if isinstance(f, Forall):
        return Forall(f.var, body)
    return Exists(f.var, body)


def literal(atom: Atom, positive: bool) -> Formula:
    return atom if positive else Not(atom)


def literals_formula(lits: Iterable[Tuple[Atom, bool]]) -> Formula:
    return conjunction(literal(a, v) for a, v in lits)


def _render_term(t: Term) -> str:
    return t if isinstance(t, str) else str(t)


def _wrap(f: Formula) -> str:
    text = render(f)
    if isinstance(f, (Atom, Truth, Not, Cardinality)):
        return text
    return f"({text})"


def render(f: Formula) -> str:
    """Concrete syntax accepted by the problem parser"""
    if isinstance(f, Truth):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        if not f.args:
            return f.pred.name
        return f"{f.pred.name}({','.join(_render_term(a) for a in f.args)})"
    if isinstance(f, Cardinality):
        return f"|{f.pred.name}| {f.op} {f.q}"
    if isinstance(f, Not):
        return f"~{_wrap(f.arg)}"
    if isinstance(f, And):
        return " & ".join(_wrap(a) for a in f.args) if f.args else "true"
    if isinstance(f, Or):
        return " | ".join(_wrap(a) for a in f.args) if f.args else "false"
    if isinstance(f, Implies):
        return f"{_wrap(f.left)} -> {_wrap(f.right)}"
    if isinstance(f, Iff):
        return f"{_wrap(f.left)} <-> {_wrap(f.right)}"
    if isinstance(f, Forall):
        return f"forall {f.var}: {_wrap(f.body)}"
    if isinstance(f, Exists):
        return f"exists {f.var}: {_wrap(f.body)}"
    if isinstance(f, CountingExists):
        return f"exists[{f.op}{f.k}] {f.var}: {_wrap(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def vocabulary_of(formulas: Iterable[Formula]) -> Tuple[Pred, ...]:
    preds = set()
    for f in formulas:
        preds |= predicates(f)
    return tuple(sorted(preds))


def predicate_index(preds: Iterable[Pred]) -> Dict[str, Pred]:
    return {p.name: p for p in preds}
