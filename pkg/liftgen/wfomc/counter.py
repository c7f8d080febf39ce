"""Lifted weighted model counting for forall-forall sentences with Tseitin
obligations.

Obligations are handled by inclusion-exclusion: an element of cell
(beta, tau) splits into counting cells (tau, s) for every s subset of beta,
with sign (-1)^|s|, where s lists the obligations whose witnesses are
excluded. Configuration weights of counting cells have a closed form, so the
count is a sum over configurations of 1-types and their splits.
"""
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from gmpy2 import mpq
from logzero import logger

from ..cells.configuration import config_space, multinomial
from ..cells.graph import CellGraph, CountingCell
from ..cells.types import CellType, Configuration
from ..errors import InconsistencyError
from ..fol.structure import count_constraints_hold
from ..fol.syntax import Atom, BOT, Formula, Pred, TOP, predicates, simplify
from ..models import Problem, UNIT_WEIGHT, Weighting
from ..normalize.pipeline import NormalizedProblem, normalize_problem
from ..utils.cache import MemoryCache
from .polynomial import WeightAlgebra, reduce_constraints


@dataclass
class Branch:
    """One truth assignment of the nullary predicates and its cell graph"""
    index: int
    assignment: Dict[Pred, bool]
    value: mpq
    weight: object
    graph: CellGraph

    @property
    def used(self) -> Dict[Pred, int]:
        return {p: 1 for p, v in self.assignment.items() if v}

    def atoms(self) -> List[Atom]:
        return [p() for p, v in self.assignment.items() if v]


@dataclass(frozen=True)
class CellConditioning:
    """Cell type of every element of a (sub)domain"""
    cells: Mapping[int, CellType]

    def configuration(self) -> Dict[CellType, int]:
        return dict(Counter(self.cells.values()))


def _subsets(block) -> List[frozenset]:
    items = sorted(block)
    return [frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r)]


def _cell_key(cell: CountingCell) -> Tuple[int, Tuple[int, ...]]:
    return (cell[0], tuple(sorted(cell[1])))


class LiftedCounter:
    """Counts and conditions a normalized problem.

    ``tracked`` predicates get indeterminates in the counting algebra (the
    predicates of the cardinality constraints always do), so the count
    polynomial exposes the weight of every vector of their counts.
    """

    def __init__(
        self,
        normalized: NormalizedProblem,
        tracked: Sequence[Pred] = (),
        cache: Optional[MemoryCache] = None,
        threads: int = 1,
    ):
        self.normalized = normalized
        self.domain_size = normalized.domain_size
        self.constraints = normalized.constraints
        self.algebra = WeightAlgebra(set(tracked) | set(predicates(self.constraints)))
        self.cache = cache if cache is not None else MemoryCache()
        self.threads = max(1, threads)
        self.branches = self._build_branches()
        self._token = self._fingerprint()

    def _fingerprint(self) -> str:
        """Identifies the counting problem inside a shared cache"""
        weights = sorted((p.name, str(w), str(wbar)) for p, (w, wbar) in self.normalized.weights.items())
        return "|".join([
            ",".join(str(p) for p in self.normalized.vocabulary),
            str(self.normalized.tseitin.universal),
            ",".join(f"{e.index}:{e.r.name}" for e in self.normalized.tseitin.registry),
            repr(weights),
            ",".join(p.name for p in self.algebra.tracked),
        ])

    def _build_branches(self) -> List[Branch]:
        nullary = [p for p in self.normalized.vocabulary if p.arity == 0]
        others = [p for p in self.normalized.vocabulary if p.arity > 0]
        weights = self.normalized.weights
        universal = self.normalized.tseitin.universal
        registry = self.normalized.tseitin.registry
        branches = []
        for values in product((True, False), repeat=len(nullary)):
            assignment = dict(zip(nullary, values))
            psi = simplify(universal, {p(): v for p, v in assignment.items()})
            if psi == BOT:
                continue
            value, weight = mpq(1), self.algebra.one
            for pred, v in assignment.items():
                w, wbar = weights.get(pred, UNIT_WEIGHT)
                value *= w if v else wbar
                weight = weight * self.algebra.literal(pred, v, weights)
            graph = CellGraph(psi, others, weights, self.algebra, registry)
            branches.append(Branch(len(branches), assignment, value, weight, graph))
        logger.debug(f"{len(branches)} nullary branches")
        return branches

    def conditioned(self, branch: Branch, config: Mapping[CellType, int]):
        """Weighted count over a domain whose elements are pinned to cell
        types, as an element of the counting algebra"""
        cells = sorted(((c, n) for c, n in config.items() if n > 0), key=lambda it: it[0].sort_key())
        if any(not c.one_type.valid for c, _ in cells):
            return self.algebra.zero
        key = [self._token, branch.index,
               [[c.one_type.index, sorted(c.block), n] for c, n in cells]]
        cached = self.cache.get(key)
        if cached is not None:
            return cached
        value = self._split_sum(branch.graph, cells)
        self.cache.set(key, value)
        return value

    def _split_sum(self, graph: CellGraph, cells: Sequence[Tuple[CellType, int]]):
        algebra = self.algebra
        options = [_subsets(cell.block) for cell, _ in cells]
        spaces = [list(config_space(n, len(opts))) for (_, n), opts in zip(cells, options)]
        total = algebra.zero
        for splits in product(*spaces):
            coefficient = 1
            aggregate: Dict[CountingCell, int] = defaultdict(int)
            for (cell, _), opts, split in zip(cells, options, splits):
                coefficient *= multinomial(split.counts)
                for excluded, m in zip(opts, split):
                    if m:
                        aggregate[(cell.one_type.index, excluded)] += m
            value = graph.config_weight(sorted(aggregate.items(), key=lambda it: _cell_key(it[0])))
            if not algebra.is_zero(value):
                total = total + algebra.scale(value, coefficient)
        return total

    def one_type_configurations(self, branch: Branch, domain_size: Optional[int] = None):
        """Yields (configuration over valid 1-types, weight) with weight the
        multinomial times the conditioned count"""
        n = self.domain_size if domain_size is None else domain_size
        types = branch.graph.valid_types
        if not types:
            return
        for config in config_space(n, len(types)):
            cells = {branch.graph.initial_cell(t): m for t, m in zip(types, config) if m}
            value = self.conditioned(branch, cells)
            if not self.algebra.is_zero(value):
                yield config, self.algebra.scale(value, multinomial(config.counts))

    def branch_total(self, branch: Branch):
        configs = list(config_space(self.domain_size, len(branch.graph.valid_types))) \
            if branch.graph.valid_types else []
        if self.threads == 1 or len(configs) < 2:
            parts = [w for _, w in self.one_type_configurations(branch)]
        else:
            parts = self._parallel_parts(branch, configs)
        total = self.algebra.zero
        for part in parts:
            total = total + part
        return total

    def _parallel_parts(self, branch: Branch, configs: List[Configuration]):
        types = branch.graph.valid_types

        def work(chunk):
            out = []
            for config in chunk:
                cells = {branch.graph.initial_cell(t): m for t, m in zip(types, config) if m}
                value = self.conditioned(branch, cells)
                out.append(self.algebra.scale(value, multinomial(config.counts)))
            return out

        chunks = [configs[i::self.threads] for i in range(self.threads)]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            results = list(pool.map(work, chunks))
        return [v for chunk in results for v in chunk]

    def polynomial(self):
        """Unconstrained count of the reduced problem in the counting algebra"""
        total = self.algebra.zero
        for branch in self.branches:
            total = total + branch.weight * self.branch_total(branch)
        return total

    def count(self, constraints: Optional[Formula] = None) -> mpq:
        """Weighted count of the reduced problem subject to the constraints"""
        constraints = self.constraints if constraints is None else constraints
        value = self.algebra.extract(self.polynomial(), constraints)
        if value < 0:
            raise InconsistencyError(f"negative weighted model count {value}")
        logger.debug(f"reduced count {value}, cache {self.cache.stats()}")
        return value

    def branch_constraints(self, branch: Branch) -> Formula:
        return reduce_constraints(self.constraints, branch.used)

    def conditioned_count(
        self, branch: Branch, config: Mapping[CellType, int], constraints: Formula = TOP,
    ) -> mpq:
        return self.algebra.extract(self.conditioned(branch, config), constraints)


def wfomc(
    sentence: Formula,
    domain_size: int,
    weights: Optional[Weighting] = None,
    constraints: Formula = TOP,
    threads: int = 1,
    cache: Optional[MemoryCache] = None,
) -> mpq:
    """Weighted first-order model count, exact"""
    problem = Problem(sentence, domain_size, dict(weights or {}), constraints)
    return count_problem(problem, threads=threads, cache=cache)


def count_problem(problem: Problem, threads: int = 1, cache: Optional[MemoryCache] = None) -> mpq:
    normalized = normalize_problem(problem)
    counter = LiftedCounter(normalized, cache=cache, threads=threads)
    value = counter.count() / normalized.multiplicity
    if value.denominator != 1 and all(w == UNIT_WEIGHT for w in problem.weights.values()):
        raise InconsistencyError(f"unweighted count {value} is not an integer")
    return value


def wfomc_conditioned(
    counter: LiftedCounter,
    conditioning: CellConditioning,
    constraints: Formula = TOP,
    branch: Optional[Branch] = None,
) -> mpq:
    """Weighted count over the conditioned elements only, every element
    pinned to its cell type, subject to constraints on the remaining atoms"""
    if branch is None:
        if not counter.branches:
            return mpq(0)
        branch = counter.branches[0]
    return counter.conditioned_count(branch, conditioning.configuration(), constraints)


def count_distribution(
    problem: Problem, preds: Sequence[Pred], threads: int = 1,
) -> Dict[Tuple[int, ...], mpq]:
    """Exact distribution of the count vector of ``preds`` under the
    problem's weighted model distribution"""
    normalized = normalize_problem(problem)
    counter = LiftedCounter(normalized, tracked=preds, threads=threads)
    poly = counter.polynomial()
    total = counter.algebra.extract(poly, counter.constraints)
    if total == 0:
        return {}
    masses: Dict[Tuple[int, ...], mpq] = defaultdict(mpq)
    for counts, coeff in counter.algebra.terms(poly):
        named = {p.name: c for p, c in counts.items()}
        if count_constraints_hold(counter.constraints, named):
            masses[tuple(counts.get(p, 0) for p in preds)] += coeff
    return {k: v / total for k, v in sorted(masses.items()) if v != 0}
