from typing import Dict, Mapping, Optional, Sequence, Tuple

from ..cells.graph import CellGraph
from ..cells.types import OneType, TwoTable
from ..errors import InconsistencyError
from .rng import RandomSource, sample_discrete

TableAssignment = Dict[Tuple[int, int], TwoTable]


def sample_2tables_ufo2(
    graph: CellGraph,
    one_types: Mapping[int, OneType],
    rng: RandomSource,
    elements: Optional[Sequence[int]] = None,
) -> TableAssignment:
    """Once 1-types are fixed and no obligations remain, the 2-tables of
    distinct pairs are independent: each is drawn from its coherent tables
    in proportion to their weights"""
    order = sorted(one_types if elements is None else elements)
    tables: TableAssignment = {}
    for i, first in enumerate(order):
        for second in order[i + 1:]:
            candidates = graph.coherent_tables(one_types[first], one_types[second])
            if not candidates:
                raise InconsistencyError(
                    f"no coherent 2-table between elements {first} and {second}"
                )
            pick = sample_discrete([graph.table_value(t) for t in candidates], rng)
            tables[(first, second)] = graph.two_tables[candidates[pick]]
    return tables
