"""Shared brute-force oracles and instance samplers for the test suite.

The oracles enumerate full Cartesian products with itertools, independent of
the fold/bitset engines under test.
"""

import itertools
import random

import pytest

from sumsetlab import FiniteSet, Integers


def brute_sumset(structure, sets):
    """Enumerate every k-tuple and fold it through the composition law."""
    out = set()
    for combo in itertools.product(*[s.elements for s in sets]):
        value = combo[0]
        for c in combo[1:]:
            value = structure.compose(value, c)
        out.add(value)
    return out


def int_set(*xs):
    return FiniteSet(Integers(), tuple(xs))


def random_int_set(rng: random.Random, max_size=8, lo=0, hi=50) -> FiniteSet:
    size = rng.randrange(1, max_size + 1)
    return FiniteSet(Integers(), tuple(rng.sample(range(lo, hi + 1), min(size, hi - lo + 1))))


def random_subset(rng: random.Random, pool, max_size) -> tuple:
    size = rng.randrange(1, min(max_size, len(pool)) + 1)
    return tuple(rng.sample(list(pool), size))


@pytest.fixture
def rng():
    return random.Random(0x5E75)
