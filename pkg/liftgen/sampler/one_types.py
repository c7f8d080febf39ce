from typing import Dict

from logzero import logger

from ..cells.types import OneType
from ..errors import SamplingError
from ..fol.syntax import Formula
from ..wfomc.counter import Branch, LiftedCounter
from .rng import RandomSource, random_partition, sample_discrete


def sample_1types(
    counter: LiftedCounter,
    branch: Branch,
    constraints: Formula,
    rng: RandomSource,
) -> Dict[int, OneType]:
    """Draws a 1-type configuration with probability proportional to its
    multinomial times its conditioned count, then spreads it over the
    elements uniformly"""
    types = branch.graph.valid_types
    options, weights = [], []
    for config, value in counter.one_type_configurations(branch):
        weight = counter.algebra.extract(value, constraints)
        if weight > 0:
            options.append(config)
            weights.append(weight)
    if not options:
        raise SamplingError("no 1-type configuration has positive weight")
    config = options[sample_discrete(weights, rng)]
    logger.debug(f"1-type configuration {config.counts}")
    elements = list(range(1, counter.domain_size + 1))
    parts = random_partition(elements, config.counts, rng)
    return {e: t for t, part in zip(types, parts) for e in part}
