"""Keyed random streams via counter-based splitting.

Every consumer of randomness receives its own generator derived from
(root seed, purpose tag, *indices). Streams are therefore independent of
the order in which work is executed: running the clients of a round in
any order, or in parallel, draws exactly the same numbers.
"""
from __future__ import annotations

import numpy as np

# Purpose tags keep unrelated streams apart even at equal indices.
TAG_SAMPLING = 1
TAG_LOCAL = 2
TAG_CENTERS = 3
TAG_OFFSETS = 4


def substream(seed: int, *path: int) -> np.random.Generator:
    """Derive the generator keyed by (seed, *path).

    Philox is counter-based, so distinct keys give statistically
    independent streams and the derivation is pure arithmetic.
    """
    if seed < 0:
        raise ValueError(f"root seed must be nonnegative, got {seed}")
    key = np.random.SeedSequence(entropy=(int(seed),) + tuple(int(x) for x in path))
    return np.random.Generator(np.random.Philox(key))
