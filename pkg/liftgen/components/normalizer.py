from abc import abstractmethod
from typing import Any, Dict

from ..models import Problem
from ..normalize.pipeline import NormalizedProblem, normalize_problem
from .base_component import BaseComponent


class BaseProblemNormalizer(BaseComponent):
    """Base class for bringing a problem into the form the counter consumes"""
    def __init__(self):
        super().__init__(name="normalizer")

    def _execute(self, problem: Problem) -> NormalizedProblem:
        return self.normalize(problem)

    @abstractmethod
    def normalize(self, problem: Problem) -> NormalizedProblem:
        pass

    def summarize_input(self, problem: Problem) -> Dict[str, Any]:
        return {"problem": problem.name, "domain_size": problem.domain_size}

    def summarize_output(self, result: NormalizedProblem) -> Dict[str, Any]:
        return {
            "fragment": result.fragment,
            "vocabulary": list(result.vocabulary),
            "obligations": len(result.tseitin.registry),
            "constraints": result.constraints,
            "multiplicity": result.multiplicity,
            "notes": [note for stage in result.stages for note in stage.notes],
        }


class ProblemNormalizer(BaseProblemNormalizer):
    def normalize(self, problem: Problem) -> NormalizedProblem:
        normalized = normalize_problem(problem)
        self.metadata["fragment"] = normalized.fragment.value
        return normalized
