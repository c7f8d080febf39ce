"""Domain recursion over 2-tables.

One element at a time, the sampler fixes every 2-table between that element
and the rest of the domain, then continues on the smaller domain with
relaxed block types and reduced cardinality constraints. The weight of each
candidate table configuration is the conditioned count of what remains, so
every draw is exact.
"""
from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Mapping, Tuple

from logzero import logger

from ..cells.configuration import config_space, multinomial
from ..cells.graph import CellGraph
from ..cells.types import CellType, Configuration
from ..errors import InconsistencyError
from ..fol.syntax import BOT, Formula, Pred, TOP
from ..wfomc.counter import Branch, LiftedCounter
from ..wfomc.polynomial import reduce_constraints
from .rng import RandomSource, random_partition, sample_discrete
from .ufo2 import TableAssignment, sample_2tables_ufo2

SELECTION_MODES = ("strongest", "index")


@dataclass(frozen=True)
class TwoTablesConfig:
    """How many elements of each cell receive each coherent table from the
    element being processed"""
    cells: Tuple[CellType, ...]
    candidates: Tuple[Tuple[int, ...], ...]
    counts: Tuple[Configuration, ...]

    def items(self) -> Iterator[Tuple[CellType, int, int]]:
        for cell, tables, config in zip(self.cells, self.candidates, self.counts):
            for table, count in zip(tables, config):
                if count:
                    yield cell, table, count

    def table_totals(self) -> Dict[int, int]:
        totals: Dict[int, int] = defaultdict(int)
        for _, table, count in self.items():
            totals[table] += count
        return dict(totals)


def ex_sat(g: TwoTablesConfig, target: CellType, graph: CellGraph, constraints: Formula) -> bool:
    """Feasibility of a table configuration for the processed element:
    every placed table is coherent, every obligation of the element gets a
    witness, and the reduced constraints are not already violated"""
    tau = target.one_type
    for cell, table, _ in g.items():
        if not graph.is_coherent(table, tau, cell.one_type):
            return False
    totals = g.table_totals()
    for k in target.block:
        if not any(graph.satisfies_forward(table, k) for table in totals):
            return False
    return constraints != BOT


def _used_atoms(graph: CellGraph, target: CellType, g: TwoTablesConfig) -> Dict[Pred, int]:
    used: Dict[Pred, int] = defaultdict(int)
    for atom in target.one_type.positives():
        used[atom.pred] += 1
    for table, count in g.table_totals().items():
        for atom in graph.two_tables[table].positives():
            used[atom.pred] += count
    return used


class DomainRecursionSampler:
    """Samples the 2-tables of a domain whose elements already carry cell
    types.

    With ``fast_path`` the recursion hands over to independent pair sampling
    as soon as no obligation and no constraint is left.
    """

    def __init__(
        self,
        counter: LiftedCounter,
        branch: Branch,
        constraints: Formula = TOP,
        selection: str = "strongest",
        fast_path: bool = True,
    ):
        if selection not in SELECTION_MODES:
            raise ValueError(f"unknown element selection {selection!r}")
        self.counter = counter
        self.branch = branch
        self.graph = branch.graph
        self.constraints = constraints
        self.selection = selection
        self.fast_path = fast_path

    def select(self, cells: Mapping[int, CellType]) -> int:
        if self.selection == "index":
            return min(cells)
        return min(cells, key=lambda e: (-len(cells[e].block), e))

    def _choices(self, target: CellType, groups, constraints: Formula):
        graph = self.graph
        candidates = tuple(graph.coherent_tables(target.one_type, cell.one_type) for cell, _ in groups)
        if any(not c for c in candidates):
            raise InconsistencyError("an element has no coherent 2-table with a remaining cell")
        cells = tuple(cell for cell, _ in groups)
        spaces = [list(config_space(len(members), len(c))) for (_, members), c in zip(groups, candidates)]
        base = graph.type_value(target.one_type)
        for counts in product(*spaces):
            g = TwoTablesConfig(cells, candidates, counts)
            reduced_constraints = constraints
            if constraints != TOP:
                reduced_constraints = reduce_constraints(constraints, _used_atoms(graph, target, g))
            if not ex_sat(g, target, graph, reduced_constraints):
                continue
            reduced: Dict[CellType, int] = Counter()
            weight = base
            for cell, table, count in g.items():
                reduced[CellType(graph.relax(cell.block, table), cell.one_type)] += count
                weight *= graph.table_value(table) ** count
            for config in counts:
                weight *= multinomial(config.counts)
            if weight == 0:
                continue
            remaining = self.counter.conditioned_count(self.branch, reduced, reduced_constraints)
            if remaining == 0:
                continue
            yield g, reduced_constraints, weight * remaining

    def sample(self, cells: Mapping[int, CellType], rng: RandomSource) -> TableAssignment:
        graph = self.graph
        cells = dict(cells)
        constraints = self.constraints
        tables: TableAssignment = {}
        while len(cells) > 1:
            if self.fast_path and constraints == TOP and not any(c.block for c in cells.values()):
                one_types = {e: c.one_type for e, c in cells.items()}
                tables.update(sample_2tables_ufo2(graph, one_types, rng))
                break
            element = self.select(cells)
            target = cells.pop(element)
            members: Dict[CellType, List[int]] = defaultdict(list)
            for e in sorted(cells):
                members[cells[e]].append(e)
            groups = sorted(members.items(), key=lambda it: it[0].sort_key())
            options = list(self._choices(target, groups, constraints))
            if not options:
                raise InconsistencyError(f"no feasible 2-table configuration for element {element}")
            g, constraints, _ = options[sample_discrete([w for _, _, w in options], rng)]
            logger.debug(f"element {element}: {len(options)} feasible table configurations")
            for (cell, group), candidates, config in zip(groups, g.candidates, g.counts):
                parts = random_partition(group, config.counts, rng)
                for table, part in zip(candidates, parts):
                    for e in part:
                        tables[(element, e)] = graph.two_tables[table]
                        cells[e] = CellType(graph.relax(cell.block, table), cell.one_type)
        return tables


def sample_2tables_fo2(
    counter: LiftedCounter,
    branch: Branch,
    cells: Mapping[int, CellType],
    rng: RandomSource,
    selection: str = "strongest",
) -> TableAssignment:
    return DomainRecursionSampler(counter, branch, TOP, selection).sample(cells, rng)


def sample_2tables_cc(
    counter: LiftedCounter,
    branch: Branch,
    cells: Mapping[int, CellType],
    constraints: Formula,
    rng: RandomSource,
    selection: str = "strongest",
) -> TableAssignment:
    """Domain recursion all the way down to one element; constraints are
    reduced by the literals fixed at every step"""
    sampler = DomainRecursionSampler(counter, branch, constraints, selection, fast_path=False)
    return sampler.sample(cells, rng)
