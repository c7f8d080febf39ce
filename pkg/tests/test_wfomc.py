import pytest
from gmpy2 import mpq

from liftgen.cells.types import EvidenceType
from liftgen.errors import InconsistencyError, OracleCapError
from liftgen.fol.structure import Model
from liftgen.fol.syntax import Pred, TOP
from liftgen.harness.oracle import conditioned_brute, evidence_wfomc
from liftgen.harness.presets import preset
from liftgen.normalize.pipeline import normalize_problem
from liftgen.textio.parser import parse_formula, parse_problem
from liftgen.utils.cache import MemoryCache
from liftgen.wfomc.brute import brute_count, brute_wfomc
from liftgen.wfomc.counter import LiftedCounter, count_distribution, count_problem, wfomc
from liftgen.wfomc.weights import model_weight, weight_of

E = Pred("E", 2)
R = Pred("R", 2)
Red = Pred("Red", 1)

EXISTS_R = "domain {n}\nsentence forall x: exists y: R(x,y)\n"


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 9), (3, 343)])
def test_every_element_has_a_successor(n, expected):
    assert count_problem(parse_problem(EXISTS_R.format(n=n))) == expected


@pytest.mark.parametrize("n", [1, 2])
def test_lifted_matches_brute_force(n):
    problem = parse_problem(EXISTS_R.format(n=n))
    assert count_problem(problem) == brute_count(problem)


def test_no_isolated_vertices(gamma_g):
    assert count_problem(gamma_g(3)) == 4
    assert brute_count(gamma_g(3)) == 4


def test_two_colored_graphs_weighted(two_colored):
    assert count_problem(two_colored(4)) == 721


def test_two_colored_graphs_distribution(two_colored):
    distribution = count_distribution(two_colored(4), [Red])
    assert distribution[(2,)] == mpq(384, 721)
    assert sum(distribution.values()) == 1


@pytest.mark.parametrize("name,n,params,expected", [
    ("functions", 3, None, 27),
    ("permutations", 4, None, 24),
    ("derangements", 4, None, 9),
    ("k-regular", 5, {"k": 2}, 12),
])
def test_counting_quantifier_presets(name, n, params, expected):
    assert count_problem(preset(name, n, params)) == expected


@pytest.mark.parametrize("name,n", [("functions", 2), ("permutations", 3), ("derangements", 3)])
def test_counting_presets_match_brute_force(name, n):
    problem = preset(name, n)
    assert count_problem(problem) == brute_count(problem)


def test_symmetric_loopless_distribution(symmetric_loopless):
    problem = symmetric_loopless(2)
    assert count_problem(problem) == 10
    distribution = count_distribution(problem, [E])
    assert distribution == {(0,): mpq(1, 10), (2,): mpq(9, 10)}


def test_cardinality_constraint_empty_graph():
    problem = parse_problem(
        "domain 3\n"
        "sentence forall x: forall y: (E(x,y) -> E(y,x)) & ~E(x,x)\n"
        "weight E 3 1\n"
        "cc |E| = 0\n"
    )
    assert count_problem(problem) == 1
    assert brute_count(problem) == 1


def test_cardinality_constraint_with_obligations():
    problem = parse_problem(EXISTS_R.format(n=2) + "cc |R| = 2\n")
    assert count_problem(problem) == 4
    assert brute_count(problem) == 4


def test_nullary_predicate():
    problem = parse_problem("domain 2\nsentence forall x: A -> P(x)\n")
    assert count_problem(problem) == 5
    assert brute_count(problem) == 5


def test_wfomc_entry_points_agree():
    sentence = parse_formula("forall x: forall y: E(x,y) -> E(y,x)")
    weights = {E: (mpq(2), mpq(1))}
    assert wfomc(sentence, 3, weights) == brute_wfomc(sentence, 3, weights)


def test_unsatisfiable_count_is_zero():
    problem = parse_problem("domain 2\nsentence forall x: P(x) & ~P(x)\n")
    assert count_problem(problem) == 0


def test_shared_cache_is_reused(gamma_g):
    cache = MemoryCache()
    first = count_problem(gamma_g(4), cache=cache)
    hits = cache.stats()["hits"]
    assert count_problem(gamma_g(4), cache=cache) == first
    assert cache.stats()["hits"] > hits


def test_threaded_count(two_colored):
    assert count_problem(two_colored(4), threads=3) == 721


def test_counter_branches(gamma_g):
    counter = LiftedCounter(normalize_problem(gamma_g(3)))
    assert len(counter.branches) == 1
    assert counter.count() == 4
    assert counter.count(TOP) == 4


def test_evidence_count_matches_conditioned_brute_force():
    problem = preset("two-colored-graphs", 3)
    evidence = {1: EvidenceType(frozenset({(Red("x"), True)}))}
    assert conditioned_brute(problem, evidence) == 13
    assert evidence_wfomc(problem, evidence) == 13


def test_weight_of():
    atom = E(1, 2)
    weights = {E: (mpq(3), mpq(1, 2))}
    assert weight_of([(atom, True), (E(2, 1), False)], weights) == mpq(3, 2)
    assert weight_of({atom: True}, {}) == 1
    with pytest.raises(InconsistencyError):
        weight_of([(atom, True), (atom, False)], weights)


def test_model_weight(symmetric_loopless):
    problem = symmetric_loopless(2)
    model = Model.of([E(1, 2), E(2, 1)], problem.vocabulary, 2)
    assert model_weight(model, problem.weights) == 9


def test_brute_force_caps(gamma_g):
    with pytest.raises(OracleCapError):
        brute_count(gamma_g(7))
    with pytest.raises(OracleCapError):
        brute_count(gamma_g(5), max_atoms=20)


@pytest.mark.parametrize("seed", range(30))
def test_random_sentences_match_brute_force(random_snf, seed):
    problem = random_snf(seed, n=1 + seed % 3)
    assert wfomc(problem.sentence, problem.domain_size, problem.weights) == brute_wfomc(
        problem.sentence, problem.domain_size, problem.weights,
    )


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100, 106))
def test_random_sentences_match_brute_force_on_four_elements(random_snf, seed):
    # one binary predicate keeps the ground atoms under the oracle cap
    problem = random_snf(seed, n=4, binary=("E",))
    assert count_problem(problem) == brute_count(problem)


def test_count_is_monotone_in_cardinality_bound():
    text = "domain 3\nsentence forall x: exists y: E(x,y) | P(x)\nweight P 2 1\ncc |P| <= {q}\n"
    counts = []
    for q in range(4):
        problem = parse_problem(text.format(q=q))
        counts.append(count_problem(problem))
        assert counts[-1] == brute_count(problem)
    assert counts == sorted(counts)
    assert counts[-1] == count_problem(parse_problem("domain 3\nsentence forall x: exists y: E(x,y) | P(x)\nweight P 2 1\n"))
