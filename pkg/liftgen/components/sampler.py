from abc import abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional

from logzero import logger

from ..models import Problem, SampledModel
from ..normalize.pipeline import NormalizedProblem
from ..sampler.model_sampler import ModelSampler
from ..sampler.rng import RandomSource
from ..utils.cache import MemoryCache
from .base_component import BaseComponent


class BaseModelSampler(BaseComponent):
    """Base class for drawing models from the weighted model distribution"""
    def __init__(self):
        super().__init__(name="sampler")

    def _execute(
        self,
        problem: Problem,
        num_samples: int,
        seed: int,
        normalized: Optional[NormalizedProblem] = None,
    ) -> List[SampledModel]:
        return self.sample(problem, num_samples, seed, normalized)

    @abstractmethod
    def sample(
        self,
        problem: Problem,
        num_samples: int,
        seed: int,
        normalized: Optional[NormalizedProblem] = None,
    ) -> List[SampledModel]:
        pass

    def summarize_input(self, problem: Problem, num_samples: int, seed: int, normalized=None) -> Dict[str, Any]:
        return {"problem": problem.name, "num_samples": num_samples, "seed": seed}

    def summarize_output(self, result: List[SampledModel]) -> Dict[str, Any]:
        return {"samples": len(result), "distinct": len({s.model for s in result})}


class LiftedModelSampler(BaseModelSampler):
    """Exact sampler; samples are drawn in chunks, chunk i seeded with
    seed + i, so the output depends only on the seed and the chunk size"""
    def __init__(
        self,
        selection: str = "strongest",
        threads: int = 1,
        chunk_size: int = 1000,
        cache_size: int = 200000,
    ):
        super().__init__()
        self.selection = selection
        self.threads = max(1, threads)
        self.chunk_size = max(1, chunk_size)
        self.cache = MemoryCache(max_entries=cache_size)
        self._samplers: Dict[Problem, ModelSampler] = {}

    def sampler_for(self, problem: Problem, normalized: Optional[NormalizedProblem] = None) -> ModelSampler:
        if problem not in self._samplers:
            self._samplers[problem] = ModelSampler(
                problem, self.selection, cache=self.cache, normalized=normalized,
            )
        return self._samplers[problem]

    def sample(
        self,
        problem: Problem,
        num_samples: int,
        seed: int,
        normalized: Optional[NormalizedProblem] = None,
    ) -> List[SampledModel]:
        sampler = self.sampler_for(problem, normalized)
        source = RandomSource(seed)
        sizes = [min(self.chunk_size, num_samples - start) for start in range(0, num_samples, self.chunk_size)]

        def work(index: int) -> List[SampledModel]:
            return list(sampler.samples(sizes[index], source.spawn(index)))

        if self.threads == 1 or len(sizes) <= 1:
            chunks = [work(i) for i in range(len(sizes))]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                chunks = list(pool.map(work, range(len(sizes))))
        logger.debug(f"{num_samples} samples in {len(sizes)} chunks of at most {self.chunk_size}")
        self.metadata.update({"chunks": len(sizes), "selection": self.selection, "cache": self.cache.stats()})
        return [s for chunk in chunks for s in chunk]
