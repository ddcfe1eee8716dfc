"""Fixed-length vector embedding of network barcodes at a reference size.

A network's sorted birth and death sets are resampled through their quantile
functions to the block lengths of a reference network size, so networks of
different sizes land in one vector space whose p-norm reproduces the scaled
Wasserstein distances. When the reference size equals the network size the
blocks are simply the raw sorted sets.
"""

from dataclasses import dataclass

import numpy as np

from .barcode import counts_for_size, decompose
from .graph import WeightedNetwork
from .wasserstein import pseudoinverse_sample


@dataclass(frozen=True, eq=False)
class TopologicalVector:
    """Quantile samples of a barcode: births block then deaths block."""

    ref_size: int
    births_block: np.ndarray
    deaths_block: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, TopologicalVector):
            return NotImplemented
        return (
            self.ref_size == other.ref_size
            and np.array_equal(self.births_block, other.births_block)
            and np.array_equal(self.deaths_block, other.deaths_block)
        )

    def __post_init__(self):
        if self.ref_size < 3:
            raise ValueError("reference size must be at least 3")
        births = np.asarray(self.births_block, dtype=float)
        deaths = np.asarray(self.deaths_block, dtype=float)
        m, n = counts_for_size(self.ref_size)
        if births.size != m or deaths.size != n:
            raise ValueError(
                f"reference size {self.ref_size} requires block lengths "
                f"({m}, {n}), got ({births.size}, {deaths.size})"
            )
        for arr, name in ((births, "births_block"), (deaths, "deaths_block")):
            if arr.size > 1 and np.any(np.diff(arr) < 0):
                raise ValueError(f"{name} must be sorted ascending")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def concatenated(self) -> np.ndarray:
        return np.concatenate([self.births_block, self.deaths_block])


def embed(net: WeightedNetwork, ref_size: int) -> TopologicalVector:
    """Embed one network at the given reference size.

    The caller is responsible for choosing ref_size at least as large as the
    largest network in the analysis; `embed_dataset` does this for a whole
    dataset.
    """
    ref_size = int(ref_size)
    if ref_size < 3:
        raise ValueError("reference size must be at least 3")
    if net.node_count == 2:
        raise ValueError(
            "2-node networks have an empty death set and cannot be embedded; "
            "use networks with at least 3 nodes"
        )
    decomposition = decompose(net)
    m, n = counts_for_size(ref_size)
    return TopologicalVector(
        ref_size=ref_size,
        births_block=pseudoinverse_sample(decomposition.births, m),
        deaths_block=pseudoinverse_sample(decomposition.deaths, n),
    )


def embed_dataset(
    nets, ref_size: int | None = None
) -> list[TopologicalVector]:
    """Embed every network at a shared reference size.

    Defaults to the largest node count in the dataset; an explicit override
    may only increase it.
    """
    nets = list(nets)
    if not nets:
        raise ValueError("cannot embed an empty dataset")
    largest = max(net.node_count for net in nets)
    if ref_size is None:
        ref_size = largest
    elif ref_size < largest:
        raise ValueError(
            f"reference size {ref_size} is below the largest network size {largest}"
        )
    return [embed(net, ref_size) for net in nets]


def reconstruct_barcode(vec: TopologicalVector) -> tuple[np.ndarray, np.ndarray]:
    """Recover the sorted birth and death sets stored in a vector."""
    return np.array(vec.births_block), np.array(vec.deaths_block)
