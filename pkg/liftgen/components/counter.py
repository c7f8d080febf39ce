from abc import abstractmethod
from typing import Any, Dict, Optional

from ..models import CountResult, Problem
from ..normalize.pipeline import NormalizedProblem, normalize_problem
from ..utils.cache import MemoryCache
from ..wfomc.brute import DEFAULT_MAX_ATOMS, DEFAULT_MAX_DOMAIN, brute_count
from ..wfomc.counter import LiftedCounter
from .base_component import BaseComponent


class BaseModelCounter(BaseComponent):
    """Base class for weighted model counting"""
    def __init__(self, name: str = "counter"):
        super().__init__(name=name)

    def _execute(self, problem: Problem, normalized: Optional[NormalizedProblem] = None) -> CountResult:
        return self.count(problem, normalized)

    @abstractmethod
    def count(self, problem: Problem, normalized: Optional[NormalizedProblem] = None) -> CountResult:
        pass

    def summarize_input(self, problem: Problem, normalized=None) -> Dict[str, Any]:
        return {"problem": problem.name, "domain_size": problem.domain_size}

    def summarize_output(self, result: CountResult) -> Dict[str, Any]:
        return {"count": result.value, "fragment": result.fragment, "method": result.method}


class LiftedModelCounter(BaseModelCounter):
    def __init__(self, threads: int = 1, cache_size: int = 200000):
        super().__init__(name="lifted_counter")
        self.threads = threads
        self.cache = MemoryCache(max_entries=cache_size)

    def count(self, problem: Problem, normalized: Optional[NormalizedProblem] = None) -> CountResult:
        normalized = normalized or normalize_problem(problem)
        counter = LiftedCounter(normalized, cache=self.cache, threads=self.threads)
        value = counter.count() / normalized.multiplicity
        self.metadata["cache"] = self.cache.stats()
        return CountResult(value, problem.domain_size, normalized.fragment, "lifted")


class BruteForceModelCounter(BaseModelCounter):
    """Ground enumeration; only for desk-scale problems"""
    def __init__(self, max_domain: int = DEFAULT_MAX_DOMAIN, max_atoms: int = DEFAULT_MAX_ATOMS):
        super().__init__(name="brute_counter")
        self.max_domain = max_domain
        self.max_atoms = max_atoms

    def count(self, problem: Problem, normalized: Optional[NormalizedProblem] = None) -> CountResult:
        normalized = normalized or normalize_problem(problem)
        value = brute_count(problem, self.max_domain, self.max_atoms)
        return CountResult(value, problem.domain_size, normalized.fragment, "brute")
