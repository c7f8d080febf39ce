import threading
from itertools import product
from typing import Dict, FrozenSet, List, Mapping, Sequence, Tuple

from gmpy2 import mpq

from ..fol.grounding import iter_assignments
from ..fol.syntax import Atom, Formula, Pred, predicates, simplify, substitute
from ..errors import LiftgenError
from .enumerate import (
    enumerate_1types, enumerate_2tables, initial_block, pair_formula, table_index,
    two_table_atoms,
)
from .types import BlockType, CellType, OneType, TseitinAtom, TwoTable

# a counting cell: 1-type index and the subset of its block whose
# witnesses are excluded
CountingCell = Tuple[int, FrozenSet[int]]


class CellGraph:
    """Weighted 1-types and 2-tables of a quantifier-free psi(x,y).

    Weights live in ``algebra`` (plain rationals or polynomials tracking
    predicate counts); the plain rational weights are kept alongside for
    sampling. Coherent table lists and pair weights are computed on demand
    and cached, guarded by a lock so one graph can serve several threads.
    """

    def __init__(
        self,
        psi: Formula,
        vocabulary: Sequence[Pred],
        weights: Mapping[Pred, Tuple[mpq, mpq]],
        algebra,
        registry: Sequence[TseitinAtom] = (),
    ):
        extra = {p for p in predicates(psi) if p not in set(vocabulary)}
        if extra:
            raise LiftgenError(f"psi mentions predicates outside the vocabulary: {sorted(map(str, extra))}")
        self.psi = psi
        self.vocabulary = tuple(sorted(p for p in vocabulary if p.arity in (1, 2)))
        self.weights = dict(weights)
        self.algebra = algebra
        self.registry = tuple(registry)
        self._registry_by_index = {entry.index: entry for entry in self.registry}

        self.one_types: List[OneType] = enumerate_1types(self.vocabulary, psi)
        self.two_tables: List[TwoTable] = enumerate_2tables(self.vocabulary)
        self.valid_types: List[OneType] = [t for t in self.one_types if t.valid]

        self._type_weight = {t.index: self._ring_weight(t.literals) for t in self.valid_types}
        self._type_value = {t.index: self._plain_weight(t.literals) for t in self.valid_types}
        self._table_weight: Dict[int, object] = {}
        self._table_value: Dict[int, mpq] = {}
        self._table_positive: Dict[int, FrozenSet[Atom]] = {}
        for table in self.two_tables:
            self._table_positive[table.index] = frozenset(table.positives())

        self._pair = pair_formula(psi)
        self._universe = [substitute(a, {"x": 1, "y": 2}) for a in two_table_atoms(self.vocabulary)]
        self._coherent: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        self._pair_weights: Dict[Tuple[CountingCell, CountingCell], object] = {}
        self._lock = threading.Lock()

    def _ring_weight(self, literals):
        value = self.algebra.one
        for atom, positive in literals:
            value = value * self.algebra.literal(atom.pred, positive, self.weights)
        return value

    def _plain_weight(self, literals) -> mpq:
        value = mpq(1)
        for atom, positive in literals:
            w, wbar = self.weights.get(atom.pred, (mpq(1), mpq(1)))
            value *= w if positive else wbar
        return value

    def type_weight(self, one_type: OneType):
        return self._type_weight[one_type.index]

    def type_value(self, one_type: OneType) -> mpq:
        return self._type_value[one_type.index]

    def table_weight(self, index: int):
        if index not in self._table_weight:
            self._table_weight[index] = self._ring_weight(self.two_tables[index].literals)
        return self._table_weight[index]

    def table_value(self, index: int) -> mpq:
        if index not in self._table_value:
            self._table_value[index] = self._plain_weight(self.two_tables[index].literals)
        return self._table_value[index]

    def table_has(self, index: int, atom: Atom) -> bool:
        return atom in self._table_positive[index]

    def initial_block(self, one_type: OneType) -> BlockType:
        return initial_block(one_type, self.registry)

    def initial_cell(self, one_type: OneType) -> CellType:
        return CellType(self.initial_block(one_type), one_type)

    def relax(self, block: BlockType, index: int) -> BlockType:
        return frozenset(
            k for k in block
            if not self.table_has(index, self._registry_by_index[k].backward())
        )

    def satisfies_forward(self, index: int, k: int) -> bool:
        return self.table_has(index, self._registry_by_index[k].forward())

    def coherent_tables(self, first: OneType, second: OneType) -> Tuple[int, ...]:
        """Indices of the tables coherent with first at x and second at y"""
        key = (first.index, second.index)
        cached = self._coherent.get(key)
        if cached is not None:
            return cached
        fixed = {**first.at(1), **second.at(2)}
        body = simplify(self._pair, fixed)
        found = []
        for assigned, free in iter_assignments(body, self._universe):
            for bits in product((False, True), repeat=len(free)):
                values = {**assigned, **dict(zip(free, bits))}
                found.append(table_index([values[a] for a in self._universe]))
        result = tuple(sorted(found))
        with self._lock:
            self._coherent[key] = result
        return result

    def is_coherent(self, index: int, first: OneType, second: OneType) -> bool:
        return index in self.coherent_tables(first, second)

    def cell_weight(self, cell: CountingCell):
        one_type, excluded = cell
        value = self._type_weight[one_type]
        if len(excluded) % 2:
            value = -value
        return value

    def pair_weight(self, first: CountingCell, second: CountingCell):
        """Sum of coherent table weights with no forbidden witness: first may
        not reach an excluded obligation of its own through R_k(x,y), second
        none of its own through R_k(y,x)"""
        key = (first, second)
        cached = self._pair_weights.get(key)
        if cached is not None:
            return cached
        (i, excluded_first), (j, excluded_second) = first, second
        forward = [self._registry_by_index[k].forward() for k in excluded_first]
        backward = [self._registry_by_index[k].backward() for k in excluded_second]
        total = self.algebra.zero
        for index in self.coherent_tables(self.one_types[i], self.one_types[j]):
            positive = self._table_positive[index]
            if any(a in positive for a in forward) or any(a in positive for a in backward):
                continue
            total = total + self.table_weight(index)
        with self._lock:
            self._pair_weights[key] = total
        return total

    def config_weight(self, cells: Sequence[Tuple[CountingCell, int]]):
        """Closed-form weight of a counting-cell configuration:
        prod w_c^n_c * prod r_cc^C(n_c,2) * prod_{c<d} r_cd^(n_c n_d)"""
        algebra = self.algebra
        items = [(c, n) for c, n in cells if n > 0]
        result = algebra.one
        for pos, (cell, n) in enumerate(items):
            result = result * algebra.power(self.cell_weight(cell), n)
            if n > 1:
                factor = self.pair_weight(cell, cell)
                if algebra.is_zero(factor):
                    return algebra.zero
                result = result * algebra.power(factor, n * (n - 1) // 2)
            for other, m in items[pos + 1:]:
                factor = self.pair_weight(cell, other)
                if algebra.is_zero(factor):
                    return algebra.zero
                result = result * algebra.power(factor, n * m)
        return result
