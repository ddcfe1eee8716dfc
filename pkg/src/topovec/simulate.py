"""Random modular-network simulator and labeled benchmark datasets.

Nodes are split evenly into contiguous modules. An edge inside a module
draws its weight from N(1, 0.5^2) with probability r and from the noise
distribution N(0, 0.5^2) otherwise; an edge between modules swaps the two
probabilities. Negative weights are clipped to zero, so generated networks
stay connected through the filtration.

Generation is reproducible across platforms: edges are visited in (i < j)
row-major order with one (branch coin, normal variate) uniform pair per
edge, and normal variates come from the inverse CDF applied to the uniform
bits.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .graph import WeightedNetwork
from .rng import stream

WEIGHT_SIGMA = 0.5
CONNECTED_MEAN = 1.0
GROUP_LABELS = ("L1", "L2")

# Stream index used to draw per-network child seeds in benchmark generation.
_CHILD_SEED_STREAM = 1


@dataclass(frozen=True)
class ModularSpec:
    """Parameters of one random modular network."""

    node_count: int
    module_count: int
    within_probability: float
    seed: int

    def __post_init__(self):
        if self.node_count < 2:
            raise ValueError("node_count must be at least 2")
        if self.module_count < 1:
            raise ValueError("module_count must be at least 1")
        if self.node_count % self.module_count != 0:
            raise ValueError(
                f"module_count {self.module_count} must divide node_count "
                f"{self.node_count} evenly"
            )
        if not 0.0 <= self.within_probability <= 1.0:
            raise ValueError("within_probability must be in [0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


def module_assignment(node_count: int, module_count: int) -> np.ndarray:
    """Module index per node; contiguous blocks of equal size."""
    if node_count % module_count != 0:
        raise ValueError("module_count must divide node_count evenly")
    return np.repeat(np.arange(module_count), node_count // module_count)


def generate(spec: ModularSpec) -> WeightedNetwork:
    """Generate one random modular network, deterministic in spec.seed."""
    n = spec.node_count
    iu, ju = np.triu_indices(n, k=1)
    modules = module_assignment(n, spec.module_count)
    within = modules[iu] == modules[ju]

    rng = stream(spec.seed)
    draws = rng.random((iu.size, 2))  # row-major fill: one pair per edge
    coin = draws[:, 0]
    u = np.clip(draws[:, 1], np.finfo(float).tiny, None)
    z = ndtri(u)

    connect_prob = np.where(within, spec.within_probability, 1.0 - spec.within_probability)
    mean = np.where(coin < connect_prob, CONNECTED_MEAN, 0.0)
    w = np.maximum(0.0, mean + WEIGHT_SIGMA * z)

    matrix = np.zeros((n, n))
    matrix[iu, ju] = w
    matrix += matrix.T
    return WeightedNetwork(matrix)


def generate_benchmark(
    sizes,
    r: float,
    per_group: int,
    seed: int,
    modules: tuple[int, int] = (3, 5),
) -> tuple[list[WeightedNetwork], list[str]]:
    """Generate the two-group modular benchmark.

    Group L1 uses modules[0] modules and group L2 uses modules[1]. Each
    (group, size) pair contributes per_group networks, so both labels get
    per_group * len(sizes) networks. Per-network seeds are drawn up front
    from a dedicated stream, so generation order does not matter.
    """
    sizes = [int(s) for s in sizes]
    if not sizes:
        raise ValueError("sizes must be nonempty")
    if per_group < 1:
        raise ValueError("per_group must be at least 1")
    if len(modules) != len(GROUP_LABELS):
        raise ValueError(f"expected {len(GROUP_LABELS)} module counts, got {len(modules)}")

    total = len(GROUP_LABELS) * len(sizes) * per_group
    child_seeds = stream(seed, _CHILD_SEED_STREAM).integers(0, 2**63, size=total)

    networks: list[WeightedNetwork] = []
    labels: list[str] = []
    k = 0
    for label, module_count in zip(GROUP_LABELS, modules):
        for size in sizes:
            for _ in range(per_group):
                spec = ModularSpec(
                    node_count=size,
                    module_count=module_count,
                    within_probability=r,
                    seed=int(child_seeds[k]),
                )
                networks.append(generate(spec))
                labels.append(label)
                k += 1
    return networks, labels
