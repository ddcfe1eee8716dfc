"""Deterministic random streams via the Philox counter-based generator.

Every stochastic routine takes an explicit nonnegative seed and derives
independent streams keyed by (seed, index), so runs are reproducible and
independent work items can be computed in any order.
"""

import numpy as np

_MAX64 = 2**64


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Independent generator for a (seed, index) pair."""
    seed = int(seed)
    index = int(index)
    if not 0 <= seed < _MAX64:
        raise ValueError("seed must satisfy 0 <= seed < 2**64")
    if not 0 <= index < _MAX64:
        raise ValueError("stream index must satisfy 0 <= index < 2**64")
    return np.random.Generator(np.random.Philox(key=(seed << 64) | index))
