"""Parsers for problem files (.wfoms), MLN files (.mln) and model lines.

Formula syntax::

    ~ & | -> <->            negation, conjunction, disjunction, implication, equivalence
    forall x: ...           universal quantifier
    exists y: ...           existential quantifier
    exists[=k] y: ...       counting quantifiers, also [<=k] and [>=k]
    |P| >= 3                cardinality atom (=, <=, >=, <, >)
    true, false

Only the variables x and y exist; quantifier bodies extend as far right as
possible.
"""
from typing import Dict, List, Optional, Tuple

import pyparsing as pp
from gmpy2 import mpq

from ..errors import ParseError
from ..fol.structure import Model
from ..fol.syntax import (
    And, Atom, BOT, Cardinality, CountingExists, Exists, Forall, Formula, Iff,
    Implies, Not, Or, Pred, TOP, Truth, VARIABLES, conjunction, predicates,
)
from ..models import MlnSpec, Problem, Weighting

pp.ParserElement.enable_packrat()

RESERVED_PREFIX = "_"
KEYWORDS = ("forall", "exists", "true", "false")


def _fail(s: str, loc: int, message: str):
    raise pp.ParseFatalException(s, loc, message)


def _check_identifier(s, loc, toks):
    name = toks[0]
    if name.startswith(RESERVED_PREFIX):
        _fail(s, loc, f"identifier {name!r} uses the reserved '_' namespace")
    return name


def _check_variable(s, loc, toks):
    name = toks[0]
    if name not in VARIABLES:
        _fail(s, loc, f"third variable {name!r}: only the variables x and y are allowed")
    return name


def _build_atom(s, loc, toks):
    name = toks[0]
    args = tuple(toks[1:])
    return Atom(Pred(name, len(args)), args)


def _build_cardinality(s, loc, toks):
    name, op, q = toks
    # arity is resolved against the sentence vocabulary later
    return Cardinality(Pred(name, -1), op, int(q))


def _build_truth(s, loc, toks):
    return TOP if toks[0] == "true" else BOT


def _build_and(s, loc, toks):
    items = list(toks)
    return items[0] if len(items) == 1 else And(tuple(items))


def _build_or(s, loc, toks):
    items = list(toks)
    return items[0] if len(items) == 1 else Or(tuple(items))


def _build_implies(s, loc, toks):
    items = list(toks)
    return items[0] if len(items) == 1 else Implies(items[0], items[1])


def _build_iff(s, loc, toks):
    items = list(toks)
    result = items[0]
    for right in items[1:]:
        result = Iff(result, right)
    return result


def _build_quantifier(s, loc, toks):
    kind = toks[0]
    if kind == "forall":
        _, var, body = toks
        return Forall(var, body)
    if len(toks) == 3:
        _, var, body = toks
        return Exists(var, body)
    _, (op, k), var, body = toks
    return CountingExists(var, op, int(k), body)


def _grammar() -> pp.ParserElement:
    LPAR, RPAR, COLON = map(pp.Suppress, "():")
    keyword = pp.MatchFirst([pp.Keyword(k) for k in KEYWORDS])
    identifier = (~keyword + pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*")).set_parse_action(_check_identifier)
    variable = pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*").set_parse_action(_check_variable)
    integer = pp.Word(pp.nums)

    formula = pp.Forward()
    unary = pp.Forward()

    atom = (identifier + pp.Optional(LPAR + pp.DelimitedList(variable) + RPAR)).set_parse_action(_build_atom)
    cardinality = (
        pp.Suppress("|") + identifier + pp.Suppress("|") + pp.one_of("<= >= = < >") + integer
    ).set_parse_action(_build_cardinality)
    truth = (pp.Keyword("true") | pp.Keyword("false")).set_parse_action(_build_truth)
    counting = pp.Group(pp.Suppress("[") + pp.one_of("<= >= =") + integer + pp.Suppress("]"))
    # the colon may be dropped between stacked quantifiers: "forall x exists y: ..."
    binder = COLON | pp.FollowedBy(pp.Keyword("forall") | pp.Keyword("exists"))
    quantified = (
        (pp.Keyword("forall") + variable + binder + formula)
        | (pp.Keyword("exists") + pp.Optional(counting) + variable + binder + formula)
    ).set_parse_action(_build_quantifier)
    primary = quantified | cardinality | truth | atom | (LPAR + formula + RPAR)

    unary <<= (pp.Suppress("~") + unary).set_parse_action(lambda s, l, t: Not(t[0])) | primary
    and_expr = (unary + pp.ZeroOrMore(pp.Suppress("&") + unary)).set_parse_action(_build_and)
    or_expr = (and_expr + pp.ZeroOrMore(pp.Suppress("|") + and_expr)).set_parse_action(_build_or)
    implies_expr = pp.Forward()
    implies_expr <<= (or_expr + pp.Optional(pp.Suppress("->") + implies_expr)).set_parse_action(_build_implies)
    iff_expr = (implies_expr + pp.ZeroOrMore(pp.Suppress("<->") + implies_expr)).set_parse_action(_build_iff)
    formula <<= iff_expr
    return formula


_FORMULA = _grammar()

_GROUND_ATOM = pp.Group(
    pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*")
    + pp.Optional(pp.Suppress("(") + pp.DelimitedList(pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))) + pp.Suppress(")"))
)
_MODEL_LINE = pp.Optional(pp.DelimitedList(_GROUND_ATOM))


def parse_formula(text: str, line: Optional[int] = None, offset: int = 0) -> Formula:
    """Parses a single formula; positions in errors are shifted by ``offset``"""
    try:
        result = _FORMULA.parse_string(text, parse_all=True)[0]
    except (pp.ParseException, pp.ParseFatalException) as e:
        raise ParseError(f"syntax error: {e.msg}", line, offset + e.col)
    _check_arities(result, line)
    return result


def _check_arities(f: Formula, line: Optional[int]):
    seen: Dict[str, int] = {}
    for pred in predicates(f):
        if pred.arity < 0:
            continue
        if pred.arity > 2:
            raise ParseError(f"predicate {pred.name} has arity {pred.arity}; at most 2 is supported", line)
        if seen.setdefault(pred.name, pred.arity) != pred.arity:
            raise ParseError(f"predicate {pred.name} used with arities {seen[pred.name]} and {pred.arity}", line)


def resolve_cardinality(f: Formula, table: Dict[str, Pred], line: Optional[int] = None) -> Formula:
    """Replaces the placeholder predicates of cardinality atoms by vocabulary entries"""
    if isinstance(f, Cardinality):
        if f.pred.arity >= 0:
            return f
        if f.pred.name not in table:
            raise ParseError(f"unknown predicate {f.pred.name} in cardinality atom", line)
        return Cardinality(table[f.pred.name], f.op, f.q)
    if isinstance(f, (Atom, Truth)):
        return f
    if isinstance(f, Not):
        return Not(resolve_cardinality(f.arg, table, line))
    if isinstance(f, And):
        return And(tuple(resolve_cardinality(a, table, line) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(resolve_cardinality(a, table, line) for a in f.args))
    if isinstance(f, Implies):
        return Implies(resolve_cardinality(f.left, table, line), resolve_cardinality(f.right, table, line))
    if isinstance(f, Iff):
        return Iff(resolve_cardinality(f.left, table, line), resolve_cardinality(f.right, table, line))
    body = resolve_cardinality(f.body, table, line)
    if isinstance(f, Forall):
        return Forall(f.var, body)
    if isinstance(f, Exists):
        return Exists(f.var, body)
    return CountingExists(f.var, f.op, f.k, body)


def _is_constraint(f: Formula) -> bool:
    if isinstance(f, (Cardinality, Truth)):
        return True
    if isinstance(f, Not):
        return _is_constraint(f.arg)
    if isinstance(f, (And, Or)):
        return all(_is_constraint(a) for a in f.args)
    if isinstance(f, (Implies, Iff)):
        return _is_constraint(f.left) and _is_constraint(f.right)
    return False


def parse_weight(text: str, line: Optional[int] = None) -> mpq:
    """Exact rational from ``p/q``, an integer or a decimal (0.2 is 1/5)"""
    try:
        return mpq(text)
    except (ValueError, TypeError):
        raise ParseError(f"invalid weight {text!r}", line)


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def _split_directive(raw: str, lineno: int) -> Tuple[str, str, int]:
    line = _strip(raw)
    parts = line.split(None, 1)
    keyword = parts[0]
    rest = parts[1] if len(parts) > 1 else ""
    offset = raw.index(rest) if rest else len(raw)
    return keyword, rest, offset


def _parse_domain(rest: str, lineno: int) -> int:
    try:
        n = int(rest)
    except ValueError:
        raise ParseError(f"invalid domain size {rest!r}", lineno)
    if n < 1:
        raise ParseError("domain size must be at least 1", lineno)
    return n


def parse_problem(text: str) -> Problem:
    domain: Optional[int] = None
    sentences: List[Formula] = []
    weight_lines: List[Tuple[int, str, mpq, mpq]] = []
    cc_lines: List[Tuple[int, Formula]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        if not _strip(raw):
            continue
        keyword, rest, offset = _split_directive(raw, lineno)
        if keyword == "domain":
            domain = _parse_domain(rest, lineno)
        elif keyword == "sentence":
            sentences.append(parse_formula(rest, lineno, offset))
        elif keyword == "weight":
            fields = rest.split()
            if len(fields) != 3:
                raise ParseError("expected: weight <Pred> <w> <wbar>", lineno)
            name, w, wbar = fields[0], parse_weight(fields[1], lineno), parse_weight(fields[2], lineno)
            if w < 0 or wbar < 0:
                raise ParseError(f"negative weight for {name}", lineno)
            weight_lines.append((lineno, name, w, wbar))
        elif keyword == "cc":
            constraint = parse_formula(rest, lineno, offset)
            if not _is_constraint(constraint):
                raise ParseError("cc lines may only combine cardinality atoms", lineno)
            cc_lines.append((lineno, constraint))
        else:
            raise ParseError(f"unknown directive {keyword!r}", lineno, 1)

    if domain is None:
        raise ParseError("missing 'domain' line")
    if not sentences:
        raise ParseError("missing 'sentence' line")

    sentence = conjunction(sentences)
    _check_arities(sentence, None)
    table = {p.name: p for p in predicates(sentence) if p.arity >= 0}
    sentence = resolve_cardinality(sentence, table)

    weights: Weighting = {}
    for lineno, name, w, wbar in weight_lines:
        if name not in table:
            raise ParseError(f"unknown predicate {name} in weight line", lineno)
        weights[table[name]] = (w, wbar)

    constraints = conjunction(resolve_cardinality(c, table, lineno) for lineno, c in cc_lines)
    return Problem(sentence=sentence, domain_size=domain, weights=weights, constraints=constraints)


def parse_mln(text: str) -> MlnSpec:
    domain: Optional[int] = None
    formulas: List[Tuple[Optional[mpq], Formula]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not _strip(raw):
            continue
        keyword, rest, offset = _split_directive(raw, lineno)
        if keyword == "domain":
            domain = _parse_domain(rest, lineno)
            continue
        weight = None if keyword in ("inf", "+inf") else parse_weight(keyword, lineno)
        formula = parse_formula(rest, lineno, offset)
        formulas.append((weight, formula))
    if domain is None:
        raise ParseError("missing 'domain' line")
    arities: Dict[str, int] = {}
    for _, f in formulas:
        for pred in predicates(f):
            if arities.setdefault(pred.name, pred.arity) != pred.arity:
                raise ParseError(f"predicate {pred.name} used with two arities")
    return MlnSpec(formulas=tuple(formulas), domain_size=domain)


def parse_model(line: str, vocabulary: Tuple[Pred, ...], domain_size: int) -> Model:
    """Inverse of ``format_model``"""
    table = {p.name: p for p in vocabulary}
    try:
        parsed = _MODEL_LINE.parse_string(line.strip(), parse_all=True)
    except pp.ParseException as e:
        raise ParseError(f"malformed model line: {e.msg}", None, e.col)
    found = []
    for group in parsed:
        name, args = group[0], tuple(group[1:])
        if name not in table:
            raise ParseError(f"unknown predicate {name} in model line")
        found.append(Atom(table[name], args))
    return Model.of(found, vocabulary, domain_size)
