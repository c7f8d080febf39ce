from abc import abstractmethod
from typing import Any, Dict, List, Optional, Sequence

from logzero import logger

from ..fol.syntax import Pred
from ..harness.oracle import exact_distribution
from ..harness.statistics import EmpiricalDistribution, KsResult, indexed, ks_test
from ..models import Problem, SampledModel
from ..wfomc.brute import DEFAULT_MAX_ATOMS, DEFAULT_MAX_DOMAIN
from ..wfomc.counter import count_distribution
from .base_component import BaseComponent


class BaseDistributionValidator(BaseComponent):
    """Base class for testing samples against the exact distribution"""
    def __init__(self):
        super().__init__(name="validator")

    def _execute(
        self,
        problem: Problem,
        samples: List[SampledModel],
        mode: str = "model",
        predicates: Optional[Sequence[Pred]] = None,
    ) -> KsResult:
        return self.validate(problem, samples, mode, predicates)

    @abstractmethod
    def validate(
        self,
        problem: Problem,
        samples: List[SampledModel],
        mode: str = "model",
        predicates: Optional[Sequence[Pred]] = None,
    ) -> KsResult:
        pass

    def summarize_input(self, problem: Problem, samples, mode: str = "model", predicates=None) -> Dict[str, Any]:
        return {"problem": problem.name, "samples": len(samples), "mode": mode}

    def summarize_output(self, result: KsResult) -> Dict[str, Any]:
        return {
            "max_deviation": result.max_deviation,
            "dkw_bound": result.dkw_bound,
            "rejected": result.rejected,
            "k": result.dimension,
        }


class KsDistributionValidator(BaseDistributionValidator):
    """Model mode compares model numbers against the brute-force
    distribution; count mode compares count vectors against the lifted
    count distribution"""
    def __init__(
        self,
        alpha: float = 0.05,
        threads: int = 1,
        max_domain: int = DEFAULT_MAX_DOMAIN,
        max_atoms: int = DEFAULT_MAX_ATOMS,
    ):
        super().__init__()
        self.alpha = alpha
        self.threads = threads
        self.max_domain = max_domain
        self.max_atoms = max_atoms

    def validate(
        self,
        problem: Problem,
        samples: List[SampledModel],
        mode: str = "model",
        predicates: Optional[Sequence[Pred]] = None,
    ) -> KsResult:
        models = [s.model for s in samples]
        if mode == "count":
            preds = tuple(predicates or problem.visible_vocabulary)
            reference = count_distribution(problem, preds, threads=self.threads)
            empirical = EmpiricalDistribution.from_models(models, "count", predicates=preds)
        else:
            vocabulary = problem.visible_vocabulary
            exact = exact_distribution(problem, self.max_domain, self.max_atoms)
            reference = indexed(exact, vocabulary)
            empirical = EmpiricalDistribution.from_models(models, "model", vocabulary=vocabulary)
        self.metadata.update({"mode": mode, "alpha": self.alpha, "outcomes": len(reference)})
        result = ks_test(empirical, reference, self.alpha)
        if result.rejected:
            logger.warning(f"samples of {problem.name or 'problem'} rejected by the KS test")
        return result
