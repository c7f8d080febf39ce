import math
from collections import defaultdict
from dataclasses import replace

import pytest
from gmpy2 import mpq

from liftgen.cells.types import EvidenceType
from liftgen.errors import UnsupportedFragmentError
from liftgen.fol.structure import Model
from liftgen.fol.syntax import (
    BOT, Cardinality, CountingExists, Exists, Forall, Not, Or, Pred, children, conjunction, has_counting,
)
from liftgen.harness.oracle import conditioned_brute, exact_distribution, mln_exact_distribution
from liftgen.harness.presets import preset, preset_mln
from liftgen.models import Fragment, Problem
from liftgen.normalize.counting import expand_counting, lower_zero_counting
from liftgen.normalize.mln import exp_rational, mln_to_wfoms, rationalization_bias
from liftgen.normalize.pipeline import normalize_problem
from liftgen.normalize.snf import to_snf
from liftgen.textio.parser import parse_problem
from liftgen.wfomc.brute import brute_count, enumerate_models
from liftgen.wfomc.counter import count_problem

E = Pred("E", 2)
P = Pred("P", 1)


@pytest.mark.parametrize("name,fragment", [
    ("two-colored-graphs", Fragment.UFO2),
    ("no-isolated-vertices", Fragment.FO2),
    ("functions", Fragment.SC2),
])
def test_fragment_detection(name, fragment):
    assert normalize_problem(preset(name, 3)).fragment is fragment


def test_obligation_reuses_witness_atom(gamma_g):
    normalized = normalize_problem(gamma_g(3))
    [entry] = normalized.tseitin.registry
    assert entry.r == E
    assert entry.z not in normalized.vocabulary
    assert normalized.vocabulary == (E,)


def test_complex_witness_gets_fresh_relation():
    problem = parse_problem("domain 2\nsentence forall x: exists y: E(x,y) & P(y)\n")
    normalized = normalize_problem(problem)
    [entry] = normalized.tseitin.registry
    assert entry.r.name.startswith("__R")
    assert entry.r in normalized.vocabulary
    assert count_problem(problem) == brute_count(problem)


def test_nested_quantifier_goes_through_scott_normal_form():
    problem = parse_problem("domain 2\nsentence forall x: P(x) | (exists y: E(x,y))\n")
    normalized = normalize_problem(problem)
    assert normalized.fragment is Fragment.FO2
    assert any(p.name.startswith("__A") for p in normalized.vocabulary)
    assert count_problem(problem) == brute_count(problem)


def test_counting_multiplicity():
    normalized = normalize_problem(preset("k-regular", 5, {"k": 2}))
    assert normalized.multiplicity == 2 ** 5
    assert any("multiplicity" in note for stage in normalized.stages for note in stage.notes)
    assert normalize_problem(preset("functions", 3)).multiplicity == 1


def test_exactly_k_universal_witnesses():
    problem = parse_problem("domain 2\nsentence exists[=1] x: forall y: E(x,y)\n")
    normalized = normalize_problem(problem)
    assert any(isinstance(c, Cardinality) for c in [normalized.constraints, *children(normalized.constraints)])
    assert count_problem(problem) == 6
    assert brute_count(problem) == 6


def test_unsupported_counting_shape():
    problem = parse_problem("domain 3\nsentence exists[=1] x: exists[=1] y: E(x,y)\n")
    with pytest.raises(UnsupportedFragmentError):
        normalize_problem(problem)


def test_scott_normal_form_rejects_counting():
    with pytest.raises(UnsupportedFragmentError):
        to_snf(preset("functions", 3))


def test_nested_cardinality_is_rejected():
    sentence = Or((Forall("x", P("x")), Cardinality(P, "=", 1)))
    with pytest.raises(UnsupportedFragmentError):
        normalize_problem(Problem(sentence, 2))


def test_top_level_cardinality_moves_to_constraints():
    sentence = Forall("x", Exists("y", E("x", "y"))) & Cardinality(E, "=", 2)
    normalized = normalize_problem(Problem(sentence, 2))
    assert normalized.constraints == Cardinality(E, "=", 2)
    assert count_problem(Problem(sentence, 2)) == 4


def test_expand_counting():
    body = E("x", "y")
    assert expand_counting(CountingExists("y", "=", 3, body), 2) == BOT
    at_most = expand_counting(CountingExists("y", "<=", 1, body), 3)
    assert isinstance(at_most, Or)
    assert {(c.op, c.k) for c in at_most.args} == {("=", 0), ("=", 1)}
    at_least = expand_counting(CountingExists("y", ">=", 2, body), 3)
    assert isinstance(at_least, Not)


def test_lower_zero_counting():
    lowered = lower_zero_counting(Forall("x", CountingExists("y", "=", 0, E("x", "y"))))
    assert lowered == Forall("x", Not(Exists("y", E("x", "y"))))
    assert not has_counting(lowered)


def test_exp_rational():
    assert exp_rational(mpq(0)) == 1
    value = exp_rational(mpq(1), 1e-6)
    assert isinstance(value, type(mpq(1)))
    assert abs(float(value) - math.e) <= 1e-6 * math.e
    tight = exp_rational(mpq(1, 5), 1e-12)
    assert abs(float(tight) - math.exp(0.2)) <= 1e-11


def test_rationalization_bias():
    assert rationalization_bias(2, 10, 1e-12) == pytest.approx(2e-10)


def test_mln_reduction():
    reduction = mln_to_wfoms(preset_mln("friends-smokers", 3))
    problem = reduction.transformed
    fr, sm = Pred("fr", 2), Pred("sm", 1)
    assert problem.output_vocabulary == (fr, sm)
    xis = sorted(p for p in problem.weights if p.name.startswith("__xi"))
    assert [p.name for p in xis] == ["__xi1", "__xi2"]
    assert problem.weights[xis[0]] == (1, 1)
    assert problem.weights[xis[1]] == (exp_rational(mpq(1, 5)), 1)
    model = Model.of([fr(1, 2), fr(2, 1)], problem.vocabulary, 2)
    assert reduction.back_map(model).vocabulary == (fr, sm)


@pytest.mark.parametrize("seed", range(20))
def test_scott_normal_form_preserves_count(random_fo2, seed):
    problem = random_fo2(seed, n=2)
    assert brute_count(to_snf(problem).transformed) == brute_count(problem)


@pytest.mark.parametrize("seed", range(10))
def test_tseitin_preserves_count_when_every_obligation_holds(random_snf, seed):
    problem = random_snf(seed, n=2)
    stage = normalize_problem(problem).stages[-1]
    obligations = stage.normal_form.auxiliary
    evidence = {
        element: EvidenceType(frozenset((z("x"), True) for z in obligations))
        for element in range(1, problem.domain_size + 1)
    }
    assert conditioned_brute(stage.transformed, evidence) == brute_count(problem)


def _all_obligations(stage):
    """The transformed problem of a Tseitin stage with every Z_k(x) asserted"""
    obligations = [Forall("x", z("x")) for z in stage.normal_form.auxiliary]
    return replace(stage.transformed, sentence=conjunction([stage.transformed.sentence, *obligations]))


def _pushforward(problem, back_map, vocabulary):
    """W(m') / WFOMC summed over each back-map preimage"""
    masses = defaultdict(mpq)
    for model, weight in enumerate_models(problem):
        masses[back_map(model).reduct(vocabulary)] += weight
    total = sum(masses.values(), mpq(0))
    return {model: mass / total for model, mass in masses.items() if mass}


@pytest.mark.parametrize("text", [
    "domain 2\nsentence forall x: P(x) | (exists y: E(x,y))\nweight E 2 1\n",
    "domain 2\nsentence exists x: forall y: E(x,y) | P(y)\nweight P 3 1\n",
    "domain 3\nsentence forall x: forall y: (E(x,y) -> E(y,x)) & ~E(x,x)\nsentence forall x: exists y: E(x,y) & P(y)\n",
    "domain 2\nsentence exists[=1] x: forall y: E(x,y)\n",
    "domain 2\nsentence forall x: exists[=1] y: f(x,y)\nweight f 2 1\n",
    "domain 2\nsentence forall x: exists[=1] y: Per(x,y)\nsentence forall y: exists[=1] x: Per(x,y)\n",
])
def test_every_stage_maps_back_onto_the_input_distribution(text):
    problem = parse_problem(text)
    expected = exact_distribution(problem)
    vocabulary = problem.visible_vocabulary
    normalized = normalize_problem(problem)
    for stage in normalized.stages:
        transformed = _all_obligations(stage) if stage.normal_form is normalized.tseitin else stage.transformed
        assert _pushforward(transformed, stage.back_map, vocabulary) == expected
        if stage.multiplicity != 1:
            assert brute_count(stage.transformed) == stage.multiplicity * brute_count(problem)


@pytest.mark.parametrize("name", ["friends-smokers", "employment", "deskmate"])
def test_mln_reduction_maps_back_onto_possible_worlds(name):
    spec = preset_mln(name, 2)
    reduction = mln_to_wfoms(spec)
    vocabulary = reduction.transformed.output_vocabulary
    assert _pushforward(reduction.transformed, reduction.back_map, vocabulary) == mln_exact_distribution(spec)
