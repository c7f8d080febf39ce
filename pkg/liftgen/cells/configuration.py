from functools import lru_cache
from typing import Iterator, Sequence, Tuple

import gmpy2
from gmpy2 import mpz

from ..errors import InconsistencyError
from .types import Configuration


def config_space(total: int, parts: int) -> Iterator[Configuration]:
    """All non-negative integer vectors of length ``parts`` summing to ``total``.

    Yields binom(total + parts - 1, parts - 1) configurations, with the first
    entry varying slowest and taking its largest value first.
    """
    if parts <= 0:
        raise InconsistencyError("configuration space needs at least one part")
    if total < 0:
        raise InconsistencyError("configuration total must be non-negative")
    for counts in _compositions(total, parts):
        yield Configuration(counts, total)


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _multinomial(counts: Tuple[int, ...]) -> mpz:
    result = mpz(1)
    running = 0
    for c in counts:
        running += c
        result *= gmpy2.comb(running, c)
    return result


def multinomial(counts: Sequence[int]) -> mpz:
    """(sum counts)! / prod(c!)"""
    return _multinomial(tuple(counts))
