from itertools import product

import pytest
from gmpy2 import mpq

from liftgen.cells.configuration import config_space, multinomial
from liftgen.cells.enumerate import (
    coherent, enumerate_1types, enumerate_2tables, initial_block, relax_block, table_index,
)
from liftgen.cells.graph import CellGraph
from liftgen.cells.types import Configuration, EvidenceType, TseitinAtom
from liftgen.errors import InconsistencyError
from liftgen.fol.grounding import ground
from liftgen.fol.structure import Model, evaluate
from liftgen.fol.syntax import Forall, Pred, predicates
from liftgen.harness.presets import preset
from liftgen.normalize.pipeline import normalize_problem
from liftgen.textio.parser import parse_formula
from liftgen.wfomc.polynomial import WeightAlgebra

E = Pred("E", 2)
Z = Pred("__Z1", 1)


def test_config_space_sizes():
    assert [c.counts for c in config_space(4, 2)] == [(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]
    assert [c.counts for c in config_space(0, 3)] == [(0, 0, 0)]
    assert len(list(config_space(3, 3))) == 10


def test_config_space_rejects_no_parts():
    with pytest.raises(InconsistencyError):
        list(config_space(2, 0))


def test_configuration_invariants():
    with pytest.raises(InconsistencyError):
        Configuration((2, 1), 4)
    with pytest.raises(InconsistencyError):
        Configuration((-1, 2), 1)


def test_multinomial():
    assert multinomial([2, 2]) == 6
    assert multinomial([1, 1, 1]) == 6
    assert multinomial([0, 3]) == 1
    assert multinomial([]) == 1


def test_one_types_of_two_colored_graphs():
    normalized = normalize_problem(preset("two-colored-graphs", 3))
    types = enumerate_1types(normalized.vocabulary, normalized.tseitin.universal)
    assert len(types) == 8
    assert sum(t.valid for t in types) == 2


def test_one_types_of_no_isolated_vertices(gamma_g):
    normalized = normalize_problem(gamma_g(3))
    types = enumerate_1types(normalized.vocabulary, normalized.tseitin.universal)
    assert len(types) == 2
    [valid] = [t for t in types if t.valid]
    assert valid.value(E("x", "x")) is False


def test_two_tables_are_indexed_by_literal_bits():
    tables = enumerate_2tables([E])
    assert len(tables) == 4
    for table in tables:
        assert table_index([v for _, v in table.literals]) == table.index


def test_coherence_and_blocks(gamma_g):
    normalized = normalize_problem(gamma_g(3))
    psi = normalized.tseitin.universal
    registry = normalized.tseitin.registry
    [entry] = registry
    assert entry.r == E
    tau = [t for t in enumerate_1types(normalized.vocabulary, psi) if t.valid][0]
    tables = enumerate_2tables(normalized.vocabulary)
    coherent_tables = [t for t in tables if coherent(t, tau, tau, psi)]
    # symmetric: either no edge or both directions
    assert sorted(len(t.positives()) for t in coherent_tables) == [0, 2]
    assert initial_block(tau, registry) == frozenset({entry.index})
    edge = [t for t in coherent_tables if t.positives()][0]
    assert relax_block(frozenset({entry.index}), edge, registry) == frozenset()
    none = [t for t in coherent_tables if not t.positives()][0]
    assert relax_block(frozenset({entry.index}), none, registry) == frozenset({entry.index})


def test_reflexive_atom_discharges_obligation():
    registry = (TseitinAtom(1, Z, E),)
    psi = E("x", "y") | ~E("x", "y")
    types = enumerate_1types([E], psi)
    loop = [t for t in types if t.value(E("x", "x"))][0]
    no_loop = [t for t in types if not t.value(E("x", "x"))][0]
    assert initial_block(loop, registry) == frozenset()
    assert initial_block(no_loop, registry) == frozenset({1})


def test_cell_graph_pair_weights(symmetric_loopless):
    normalized = normalize_problem(symmetric_loopless(2))
    algebra = WeightAlgebra()
    graph = CellGraph(normalized.tseitin.universal, normalized.vocabulary, normalized.weights, algebra)
    [tau] = graph.valid_types
    # no edge (1) or an edge both ways (3 * 3)
    assert graph.pair_weight((tau.index, frozenset()), (tau.index, frozenset())) == mpq(10)
    assert graph.config_weight([((tau.index, frozenset()), 2)]) == mpq(10)
    assert graph.config_weight([((tau.index, frozenset()), 3)]) == mpq(1000)


def test_evidence_type_consistency():
    P = Pred("P", 1)
    with pytest.raises(InconsistencyError):
        EvidenceType(frozenset({(P("x"), True), (P("x"), False)}))
    evidence = EvidenceType(frozenset({(P("x"), True)}))
    types = enumerate_1types([P], P("x") | ~P("x"))
    assert [evidence.admits(t) for t in types] == [False, True]


@pytest.mark.parametrize("psi", [
    "(E(x,y) -> E(y,x)) & ~E(x,x)",
    "(E(x,y) & P(x) -> Q(y)) & (E(x,x) | ~E(y,x) | P(y))",
    "(F(x,y) <-> E(y,x)) | (P(x) & ~Q(y))",
    "E(x,y) -> ~(P(x) & P(y)) & ~(Q(x) & Q(y))",
])
def test_coherence_agrees_with_ground_evaluation(psi):
    psi = parse_formula(psi)
    vocabulary = sorted(predicates(psi))
    sentence = ground(Forall("x", Forall("y", psi)), 2)
    types = enumerate_1types(vocabulary, psi)
    for first, second in product(types, repeat=2):
        for table in enumerate_2tables(vocabulary):
            assignment = {**first.at(1), **second.at(2), **table.between(1, 2)}
            model = Model.of([a for a, v in assignment.items() if v], vocabulary, 2)
            expected = evaluate(model, sentence)
            assert (first.valid and second.valid and coherent(table, first, second, psi)) == expected
