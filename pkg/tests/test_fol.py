import pytest

from liftgen.errors import LiftgenError
from liftgen.fol.grounding import ground, iter_assignments, iter_models, split_cardinality
from liftgen.fol.structure import Model, evaluate, ground_atoms
from liftgen.fol.syntax import (
    And, BOT, Cardinality, Exists, Forall, Not, Or, Pred, TOP, conjunction, free_variables,
    render, simplify, substitute, swap_variables,
)
from liftgen.textio.parser import parse_formula

P = Pred("P", 1)
E = Pred("E", 2)


def test_simplify_with_assignment():
    f = parse_formula("P(x) & (E(x,y) | ~P(y))")
    assert simplify(f, {P("x"): False}) == BOT
    assert simplify(f, {P("x"): True, P("y"): False}) == TOP
    assert simplify(f, {P("x"): True}) == Or((E("x", "y"), Not(P("y"))))


def test_conjunction_flattens_and_short_circuits():
    assert conjunction([]) == TOP
    assert conjunction([TOP, P("x")]) == P("x")
    assert conjunction([P("x"), BOT, P("y")]) == BOT


def test_substitute_leaves_bound_variables():
    f = parse_formula("P(x) & exists x: E(x,y)")
    g = substitute(f, {"x": 1, "y": 2})
    assert g == And((P(1), Exists("x", E("x", 2))))
    assert free_variables(g) == frozenset()


def test_swap_variables():
    f = parse_formula("forall x: exists y: E(x,y)")
    assert swap_variables(f) == Forall("y", Exists("x", E("y", "x")))


def test_render_is_parseable():
    text = "forall x: exists[=2] y: E(x,y) & ~P(y)"
    f = parse_formula(text)
    assert parse_formula(render(f)) == f


def test_ground_atoms_order():
    atoms = ground_atoms([P, E], 2)
    assert [str(a) for a in atoms] == ["E(1,1)", "E(1,2)", "E(2,1)", "E(2,2)", "P(1)", "P(2)"]


def test_ground_and_evaluate():
    sentence = parse_formula("forall x: exists y: E(x,y)")
    grounded = ground(sentence, 2)
    model = Model.of([E(1, 2), E(2, 2)], [E], 2)
    assert evaluate(model, grounded)
    assert not evaluate(Model.of([E(1, 2)], [E], 2), grounded)


def test_ground_counting_quantifier():
    grounded = ground(parse_formula("forall x: exists[=1] y: E(x,y)"), 2)
    universe = ground_atoms([E], 2)
    assert sum(1 for _ in iter_models(grounded, universe)) == 4


def test_ground_rejects_free_variables():
    with pytest.raises(LiftgenError):
        ground(P("x"), 2)


def test_iter_assignments_partition_models():
    universe = [P(1), P(2), P(3)]
    f = Or((P(1), P(2)))
    pairs = list(iter_assignments(f, universe))
    assert sum(2 ** len(free) for _, free in pairs) == 6
    assert len(list(iter_models(f, universe))) == 6


def test_iter_assignments_rejects_unknown_atoms():
    with pytest.raises(LiftgenError):
        list(iter_assignments(P(4), [P(1)]))


def test_split_cardinality():
    card = Cardinality(P, ">=", 1)
    rest, found, issue = split_cardinality(conjunction([Forall("x", P("x")), card]))
    assert rest == Forall("x", P("x"))
    assert found == [card]
    assert issue is None
    _, _, issue = split_cardinality(Or((card, Forall("x", P("x")))))
    assert issue is not None


def test_model_counts_and_reduct():
    model = Model.of([E(1, 2), E(2, 1), P(1)], [E, P], 2)
    assert model.count(E) == 2
    assert model.count(P) == 1
    assert model.reduct([P]).atoms == frozenset([P(1)])
    with pytest.raises(LiftgenError):
        Model.of([P(3)], [P], 2)
    with pytest.raises(LiftgenError):
        Model.of([E(1, 2)], [P], 2)


def test_cardinality_evaluation():
    model = Model.of([P(1), P(2)], [P], 3)
    assert evaluate(model, Cardinality(P, "=", 2))
    assert not evaluate(model, Cardinality(P, "<", 2))
