from .types import (
    BlockType, CellType, Configuration, EvidenceType, OneType, TseitinAtom, TwoTable,
)
from .configuration import config_space, multinomial
from .enumerate import (
    coherent, enumerate_1types, enumerate_2tables, forward_satisfied, initial_block,
    relax_block,
)
from .graph import CellGraph, CountingCell

__all__ = [
    'BlockType', 'CellType', 'Configuration', 'EvidenceType', 'OneType', 'TseitinAtom',
    'TwoTable', 'config_space', 'multinomial', 'coherent', 'enumerate_1types',
    'enumerate_2tables', 'forward_satisfied', 'initial_block', 'relax_block',
    'CellGraph', 'CountingCell',
]
