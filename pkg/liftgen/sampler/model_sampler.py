from typing import Dict, Iterator, List, Optional

from gmpy2 import mpq
from logzero import logger

from ..cells.types import OneType
from ..errors import UnsatisfiableError
from ..fol.structure import Model
from ..fol.syntax import Atom, TOP, substitute
from ..models import Problem, SampledModel
from ..normalize.pipeline import NormalizedProblem, normalize_problem
from ..utils.cache import MemoryCache
from ..wfomc.counter import Branch, LiftedCounter
from .domain_recursion import sample_2tables_cc, sample_2tables_fo2
from .one_types import sample_1types
from .rng import RandomSource, sample_discrete
from .ufo2 import TableAssignment, sample_2tables_ufo2


class ModelSampler:
    """Exact weighted model sampler for one problem.

    Normalization and the count are computed once; each call to ``sample``
    draws an independent model with probability W(model) / WFOMC.
    """

    def __init__(
        self,
        problem: Problem,
        selection: str = "strongest",
        threads: int = 1,
        cache: Optional[MemoryCache] = None,
        normalized: Optional[NormalizedProblem] = None,
    ):
        self.problem = problem
        self.normalized = normalized if normalized is not None else normalize_problem(problem)
        self.counter = LiftedCounter(self.normalized, cache=cache, threads=threads)
        self.selection = selection
        self.total = self.counter.count()
        if self.total == 0:
            raise UnsatisfiableError("sentence has no models over this domain")
        self._branch_weights = [
            branch.value * self.counter.algebra.extract(
                self.counter.branch_total(branch), self.counter.branch_constraints(branch)
            )
            for branch in self.counter.branches
        ]
        logger.info(
            f"sampler ready: fragment {self.normalized.fragment.value}, "
            f"domain {self.normalized.domain_size}, reduced count {self.total}"
        )

    @property
    def count(self) -> mpq:
        """Weighted model count of the input problem"""
        return self.total / self.normalized.multiplicity

    def _sample_branch(self, rng: RandomSource) -> Branch:
        return self.counter.branches[sample_discrete(self._branch_weights, rng)]

    def _sample_tables(
        self, branch: Branch, one_types: Dict[int, OneType], rng: RandomSource,
    ) -> TableAssignment:
        graph = branch.graph
        constraints = self.counter.branch_constraints(branch)
        if not graph.registry and constraints == TOP:
            return sample_2tables_ufo2(graph, one_types, rng)
        cells = {e: graph.initial_cell(t) for e, t in one_types.items()}
        if constraints == TOP:
            return sample_2tables_fo2(self.counter, branch, cells, rng, self.selection)
        return sample_2tables_cc(self.counter, branch, cells, constraints, rng, self.selection)

    def _assemble(self, branch: Branch, one_types: Dict[int, OneType], tables: TableAssignment) -> Model:
        true_atoms: List[Atom] = list(branch.atoms())
        for element, one_type in one_types.items():
            true_atoms.extend(substitute(a, {"x": element}) for a in one_type.positives())
        for (first, second), table in tables.items():
            true_atoms.extend(substitute(a, {"x": first, "y": second}) for a in table.positives())
        return Model.of(true_atoms, self.normalized.vocabulary, self.normalized.domain_size)

    def sample(self, rng: RandomSource) -> SampledModel:
        rng.reset_trace()
        branch = self._sample_branch(rng)
        constraints = self.counter.branch_constraints(branch)
        one_types = sample_1types(self.counter, branch, constraints, rng)
        tables = self._sample_tables(branch, one_types, rng)
        model = self.normalized.back_map(self._assemble(branch, one_types, tables))
        path = rng.trace_probability
        return SampledModel(model, path, path * self.normalized.multiplicity)

    def samples(self, num: int, rng: RandomSource) -> Iterator[SampledModel]:
        for _ in range(num):
            yield self.sample(rng)


def sample_model(
    problem: Problem,
    rng: RandomSource,
    selection: str = "strongest",
    threads: int = 1,
) -> SampledModel:
    """One exact sample from the weighted model distribution of the problem"""
    return ModelSampler(problem, selection, threads).sample(rng)
