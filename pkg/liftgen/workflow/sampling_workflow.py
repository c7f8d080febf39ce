from typing import Any, Dict, Optional, Sequence, Tuple

from logzero import logger as log

from ..components import (
    BaseDistributionValidator, BaseModelCounter, BaseModelSampler, BaseProblemNormalizer,
)
from ..errors import UnsatisfiableError
from ..fol.syntax import Pred
from ..logging.base import BaseLogger
from ..models import Problem, SamplingReport
from ..utils.cache import problem_hash
from .base import BaseWorkflow


class SamplingWorkflow(BaseWorkflow):
    """normalize -> count -> sample -> validate.

    With ``num_samples=0`` the run stops after counting; validation runs
    only when a validator is configured and samples were drawn.
    """
    def __init__(
        self,
        normalizer: BaseProblemNormalizer,
        counter: BaseModelCounter,
        sampler: BaseModelSampler,
        validator: Optional[BaseDistributionValidator] = None,
        logger: Optional[BaseLogger] = None,
        metadata: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(name="sampling_workflow", metadata=metadata, logger=logger)
        self.normalizer = normalizer
        self.counter = counter
        self.sampler = sampler
        self.validator = validator

    def _execute(
        self,
        problem: Problem,
        num_samples: int = 0,
        seed: int = 0,
        mode: str = "model",
        predicates: Optional[Sequence[Pred]] = None,
    ) -> Tuple[SamplingReport, Dict[str, Any]]:
        normalized = self.run_step(self.normalizer, problem)
        count = self.run_step(self.counter, problem, normalized)
        if count.value == 0:
            raise UnsatisfiableError("sentence has no models over this domain")

        samples = []
        if num_samples > 0:
            samples = self.run_step(self.sampler, problem, num_samples, seed, normalized)

        validation = None
        if self.validator is not None and samples:
            validation = self.run_step(self.validator, problem, samples, mode, predicates)

        report = SamplingReport(problem_hash(problem), seed, count.value, samples, validation)
        summary = {
            "count": count.value,
            "fragment": count.fragment,
            "samples": len(samples),
            "rejected": validation.rejected if validation is not None else None,
        }
        log.info(f"{problem.name or 'problem'}: count {count.value}, {len(samples)} samples")
        return report, summary

    def run(self, problem: Problem, num_samples: int = 0, seed: int = 0, **kwargs):
        return self.execute(problem, num_samples, seed, **kwargs)
