import json
import random

import pytest
from gmpy2 import mpq

from liftgen.errors import ParseError
from liftgen.fol.structure import Model, ground_atoms
from liftgen.fol.syntax import Cardinality, CountingExists, Pred, TOP
from liftgen.textio.formatter import (
    format_header, format_mln, format_model, format_problem, format_rational, format_record,
)
from liftgen.textio.parser import parse_formula, parse_mln, parse_model, parse_problem, parse_weight

E = Pred("E", 2)
P = Pred("P", 1)


def test_parse_problem(gamma_g):
    problem = gamma_g(3)
    assert problem.domain_size == 3
    assert problem.vocabulary == (E,)
    assert problem.weights == {}
    assert problem.constraints == TOP


def test_parse_weights_and_constraints():
    problem = parse_problem(
        "domain 4\n"
        "sentence forall x: P(x) | Q(x)   # comment\n"
        "weight P 0.2 1\n"
        "weight Q 3/2 2\n"
        "cc |P| >= 2\n"
    )
    Q = Pred("Q", 1)
    assert problem.weights[P] == (mpq(1, 5), mpq(1))
    assert problem.weights[Q] == (mpq(3, 2), mpq(2))
    assert problem.constraints == Cardinality(P, ">=", 2)


def test_counting_quantifier_syntax():
    f = parse_formula("forall x: exists[>=2] y: E(x,y)")
    assert isinstance(f.body, CountingExists)
    assert (f.body.op, f.body.k) == (">=", 2)


@pytest.mark.parametrize("text, line", [
    ("sentence forall x: P(x)\n", None),
    ("domain 3\nsentence forall x: P(z)\n", 2),
    ("domain 3\nsentence forall x: _P(x)\n", 2),
    ("domain 3\nsentence forall x: P(x) & P(x,x)\n", 2),
    ("domain 3\nsentence forall x: P(x)\ncc forall x: P(x)\n", 3),
    ("domain 3\nsentence forall x: P(x)\nweight Q 1 1\n", 3),
    ("domain 3\nfoo bar\n", 2),
    ("domain zero\nsentence forall x: P(x)\n", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_problem(text)
    assert info.value.line == line


def test_parse_weight():
    assert parse_weight("7") == mpq(7)
    assert parse_weight("0.25") == mpq(1, 4)
    with pytest.raises(ParseError):
        parse_weight("abc")


def test_parse_mln():
    spec = parse_mln(
        "domain 5\n"
        "inf forall x: ~fr(x,x)\n"
        "0.2 fr(x,y) & sm(x) -> sm(y)\n"
    )
    assert spec.domain_size == 5
    assert len(spec.hard) == 1
    [(weight, formula)] = spec.soft
    assert weight == mpq(1, 5)
    assert "sm(y)" in format_mln(spec)


def test_problem_text_round_trip():
    problem = parse_problem(
        "domain 3\n"
        "sentence forall x: forall y: E(x,y) -> E(y,x)\n"
        "sentence forall x: exists y: E(x,y)\n"
        "weight E 2 1\n"
        "cc |E| <= 4\n"
    )
    again = parse_problem(format_problem(problem))
    assert again.sentence == problem.sentence
    assert again.weights == problem.weights
    assert again.constraints == problem.constraints


def test_model_line_round_trip():
    model = Model.of([E(1, 2), E(2, 1), P(2)], [E, P], 2)
    assert format_model(model) == "E(1,2),E(2,1),P(2)"
    assert parse_model(format_model(model), (E, P), 2) == model
    assert parse_model("", (E, P), 2).atoms == frozenset()
    with pytest.raises(ParseError):
        parse_model("F(1)", (E, P), 2)


def test_records():
    model = Model.of([P(1)], [P], 2)
    record = json.loads(format_record(3, model, mpq(1, 4)))
    assert record == {"index": 3, "atoms": ["P(1)"], "probability": "1/4"}
    assert format_rational(mpq(6, 3)) == "2"
    assert format_header(7, "abc") == "# seed=7 problem=abc"


def test_colon_optional_between_quantifiers():
    bare = parse_problem("domain 3\nsentence forall x exists y: R(x,y)")
    colon = parse_problem("domain 3\nsentence forall x: exists y: R(x,y)")
    assert bare.sentence == colon.sentence
    stacked = parse_formula("exists[=1] x forall y: E(x,y) | E(y,x)")
    assert stacked == parse_formula("exists[=1] x: forall y: E(x,y) | E(y,x)")
    with pytest.raises(ParseError):
        parse_formula("forall x P(x)")


@pytest.mark.parametrize("seed", range(12))
def test_random_model_lines_round_trip(seed):
    rng = random.Random(seed)
    vocabulary = (E, P, Pred("F", 2), Pred("S", 0))
    n = rng.randint(1, 4)
    atoms = [a for a in ground_atoms(vocabulary, n) if rng.random() < 0.3]
    model = Model.of(atoms, vocabulary, n)
    assert parse_model(format_model(model), vocabulary, n) == model
