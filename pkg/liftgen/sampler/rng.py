"""Exact discrete sampling over big integers.

Random bits come from numpy's PCG64 in 32-bit words; uniform integers are
drawn by rejection so every choice is exact whatever the size of the
weights.
"""
from typing import List, Sequence, TypeVar

import gmpy2
import numpy as np
from gmpy2 import mpq

from ..cells.configuration import multinomial
from ..errors import SamplingError

T = TypeVar("T")

WORD_BITS = 32


class RandomSource:
    """Seeded bit source that also keeps the exact probability of every
    choice made through it"""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._generator = np.random.Generator(np.random.PCG64(self.seed))
        self.trace_probability = mpq(1)

    def spawn(self, offset: int) -> "RandomSource":
        return RandomSource(self.seed + offset)

    def reset_trace(self) -> None:
        self.trace_probability = mpq(1)

    def record(self, probability: mpq) -> None:
        self.trace_probability *= probability

    def getrandbits(self, k: int) -> int:
        if k <= 0:
            return 0
        words = -(-k // WORD_BITS)
        chunk = self._generator.integers(0, 1 << WORD_BITS, size=words, dtype=np.uint64)
        value = 0
        for word in chunk:
            value = (value << WORD_BITS) | int(word)
        return value >> (words * WORD_BITS - k)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n)"""
        if n <= 0:
            raise SamplingError("randbelow needs a positive bound")
        k = int(n).bit_length()
        r = self.getrandbits(k)
        while r >= n:
            r = self.getrandbits(k)
        return r

    def shuffle(self, items: List[T]) -> None:
        """Fisher-Yates, in place"""
        for i in reversed(range(1, len(items))):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]


def sample_discrete(weights: Sequence[mpq], rng: RandomSource) -> int:
    """Index i with probability weights[i] / sum(weights), drawn exactly"""
    values = [mpq(w) for w in weights]
    if any(w < 0 for w in values):
        raise SamplingError("negative weight in discrete distribution")
    total = sum(values, mpq(0))
    if total == 0:
        raise SamplingError("no valid choice: all weights are zero")
    denominator = gmpy2.mpz(1)
    for w in values:
        denominator = gmpy2.lcm(denominator, w.denominator)
    integers = [int(w.numerator * (denominator // w.denominator)) for w in values]
    r = rng.randbelow(sum(integers))
    for index, weight in enumerate(integers):
        if r < weight:
            rng.record(values[index] / total)
            return index
        r -= weight
    raise SamplingError("discrete draw fell outside the support")


def random_partition(items: Sequence[T], sizes: Sequence[int], rng: RandomSource) -> List[List[T]]:
    """Uniformly random ordered partition of items into parts of the given sizes"""
    if sum(sizes) != len(items):
        raise SamplingError(f"partition sizes {tuple(sizes)} do not add up to {len(items)} items")
    pool = list(items)
    rng.shuffle(pool)
    rng.record(mpq(1, multinomial(sizes)))
    parts, start = [], 0
    for size in sizes:
        parts.append(pool[start:start + size])
        start += size
    return parts
