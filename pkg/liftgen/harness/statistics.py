"""Distribution-free conformity checks for samplers.

The KS statistic is the largest gap between the empirical and the reference
CDF; the rejection threshold is the DKW bound for the sample size. Model
outcomes are ordered by their lexicographic model number, count vectors by
the componentwise order.
"""
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, Mapping, Sequence, Tuple

import numpy as np
from logzero import logger

from ..errors import SamplingError
from ..fol.structure import Model, ground_atoms
from ..fol.syntax import Pred

MODES = ("model", "count")


@dataclass
class EmpiricalDistribution:
    counts: Dict[Hashable, int]
    n_samples: int
    mode: str = "model"
    dimension: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown outcome mode {self.mode!r}")
        if sum(self.counts.values()) != self.n_samples:
            raise ValueError("frequencies do not sum to the number of samples")

    @classmethod
    def from_outcomes(cls, outcomes: Iterable[Hashable], mode: str = "model") -> "EmpiricalDistribution":
        counts = Counter(outcomes)
        dimension = 1
        if mode == "count" and counts:
            dimension = len(next(iter(counts)))
        return cls(dict(counts), sum(counts.values()), mode, dimension)

    @classmethod
    def from_models(
        cls,
        models: Iterable[Model],
        mode: str = "model",
        vocabulary: Sequence[Pred] = (),
        predicates: Sequence[Pred] = (),
    ) -> "EmpiricalDistribution":
        """Keys models by model number over ``vocabulary`` or by the count
        vector of ``predicates``"""
        if mode == "count":
            return cls.from_outcomes((count_vector(m, predicates) for m in models), mode)
        return cls.from_outcomes((model_index(m, vocabulary) for m in models), mode)

    def frequency(self, outcome: Hashable) -> float:
        return self.counts.get(outcome, 0) / self.n_samples


@dataclass
class KsResult:
    max_deviation: float
    dkw_bound: float
    rejected: bool
    alpha: float
    dimension: int = 1
    n_samples: int = 0
    outcomes: int = 0


def dkw_bound(n_samples: int, k: int = 1, alpha: float = 0.05) -> float:
    """Deviation above which the null hypothesis is rejected at level alpha.

    One dimension uses the tight constant 2; k dimensions use k(n+1).
    """
    if n_samples < 1 or k < 1:
        raise ValueError("dkw_bound needs at least one sample and one dimension")
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    constant = 2.0 if k == 1 else k * (n_samples + 1)
    return math.sqrt(math.log(constant / alpha) / (2 * n_samples))


def model_index(model: Model, vocabulary: Sequence[Pred] = ()) -> int:
    """Lexicographic model number; the first ground atom is the most
    significant bit"""
    vocab = vocabulary or model.vocabulary
    index = 0
    for atom in ground_atoms(vocab, model.domain_size):
        index = (index << 1) | (atom in model.atoms)
    return index


def count_vector(model: Model, predicates: Sequence[Pred]) -> Tuple[int, ...]:
    return tuple(model.count(pred) for pred in predicates)


def indexed(distribution: Mapping[Model, object], vocabulary: Sequence[Pred] = ()) -> Dict[int, object]:
    """Re-keys a model distribution by model number"""
    return {model_index(m, vocabulary): p for m, p in distribution.items()}


def _univariate_deviation(samples: EmpiricalDistribution, reference: Mapping[Hashable, object]) -> float:
    keys = sorted(set(samples.counts) | set(reference))
    empirical = np.array([samples.counts.get(k, 0) for k in keys], dtype=float) / samples.n_samples
    expected = np.array([float(reference.get(k, 0)) for k in keys], dtype=float)
    return float(np.max(np.abs(np.cumsum(empirical) - np.cumsum(expected))))


def _grid(values: Mapping[Tuple[int, ...], float], axes) -> np.ndarray:
    positions = [{v: i for i, v in enumerate(axis)} for axis in axes]
    grid = np.zeros([len(axis) for axis in axes], dtype=float)
    for key, mass in values.items():
        grid[tuple(pos[v] for pos, v in zip(positions, key))] += mass
    for axis in range(grid.ndim):
        grid = np.cumsum(grid, axis=axis)
    return grid


def _multivariate_deviation(samples: EmpiricalDistribution, reference: Mapping[Hashable, object]) -> float:
    keys = set(samples.counts) | set(reference)
    dimension = len(next(iter(keys)))
    axes = [sorted({key[d] for key in keys}) for d in range(dimension)]
    empirical = _grid({k: c / samples.n_samples for k, c in samples.counts.items()}, axes)
    expected = _grid({k: float(p) for k, p in reference.items()}, axes)
    return float(np.max(np.abs(empirical - expected)))


def ks_test(
    samples: EmpiricalDistribution,
    reference: Mapping[Hashable, object],
    alpha: float = 0.05,
) -> KsResult:
    """Kolmogorov-Smirnov test of the samples against an exact reference
    distribution given as outcome -> probability"""
    if samples.n_samples == 0:
        raise SamplingError("empty sample set")
    if samples.mode == "count":
        dimension = samples.dimension
        deviation = _multivariate_deviation(samples, reference)
    else:
        dimension = 1
        deviation = _univariate_deviation(samples, reference)
    bound = dkw_bound(samples.n_samples, dimension, alpha)
    rejected = deviation > bound
    logger.info(
        f"KS over {len(samples.counts)} outcomes, {samples.n_samples} samples: "
        f"deviation {deviation:.5f}, bound {bound:.5f}{' (rejected)' if rejected else ''}"
    )
    return KsResult(deviation, bound, rejected, alpha, dimension, samples.n_samples,
                    len(set(samples.counts) | set(reference)))


def loglog_slope(sizes: Sequence[int], seconds: Sequence[float]) -> float:
    """Slope of log(seconds) against log(size); a polynomial runtime of
    degree d gives a slope near d"""
    if len(sizes) != len(seconds) or len(sizes) < 2:
        raise ValueError("need at least two (size, seconds) pairs")
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.maximum(np.asarray(seconds, dtype=float), 1e-9))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
