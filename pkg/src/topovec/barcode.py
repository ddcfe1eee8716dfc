"""Birth-death decomposition and Betti curves under edge-weight filtration.

Thresholding a network at epsilon keeps the edges with weight strictly
greater than epsilon. Sweeping epsilon upward removes edges one at a time;
each removal either splits a connected component (that weight is a component
birth value) or destroys an independent cycle (a cycle death value). The
birth values are exactly the maximum-spanning-tree edge weights; every other
edge weight is a cycle death. For a complete network on v nodes this yields
v - 1 births and 1 + v(v-3)/2 deaths.
"""

from dataclasses import dataclass

import numpy as np

from ._kernels import kruskal_tree_mask
from .graph import WeightedNetwork


def counts_for_size(v: int) -> tuple[int, int]:
    """Birth and death multiset sizes for a complete network on v nodes."""
    if v < 2:
        raise ValueError("node count must be at least 2")
    return v - 1, 1 + v * (v - 3) // 2


def _check_ascending(values: np.ndarray, name: str) -> None:
    if values.size > 1 and np.any(np.diff(values) < 0):
        raise ValueError(f"{name} must be sorted ascending")


@dataclass(frozen=True, eq=False)
class BirthDeathDecomposition:
    """Sorted component-birth and cycle-death values of a network."""

    births: np.ndarray
    deaths: np.ndarray
    node_count: int

    def __eq__(self, other):
        if not isinstance(other, BirthDeathDecomposition):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and np.array_equal(self.births, other.births)
            and np.array_equal(self.deaths, other.deaths)
        )

    def __post_init__(self):
        births = np.asarray(self.births, dtype=float)
        deaths = np.asarray(self.deaths, dtype=float)
        expected = counts_for_size(self.node_count)
        if (births.size, deaths.size) != expected:
            raise ValueError(
                f"expected {expected[0]} births and {expected[1]} deaths for "
                f"{self.node_count} nodes, got {births.size} and {deaths.size}"
            )
        _check_ascending(births, "births")
        _check_ascending(deaths, "deaths")
        births.setflags(write=False)
        deaths.setflags(write=False)
        object.__setattr__(self, "births", births)
        object.__setattr__(self, "deaths", deaths)


@dataclass(frozen=True, eq=False)
class BettiCurve:
    """Component and cycle counts evaluated just above each threshold."""

    thresholds: np.ndarray
    beta0: np.ndarray
    beta1: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, BettiCurve):
            return NotImplemented
        return (
            np.array_equal(self.thresholds, other.thresholds)
            and np.array_equal(self.beta0, other.beta0)
            and np.array_equal(self.beta1, other.beta1)
        )

    def __post_init__(self):
        thresholds = np.asarray(self.thresholds, dtype=float)
        beta0 = np.asarray(self.beta0, dtype=int)
        beta1 = np.asarray(self.beta1, dtype=int)
        if not (thresholds.size == beta0.size == beta1.size):
            raise ValueError("thresholds, beta0 and beta1 must have equal length")
        if np.any(np.diff(thresholds) <= 0):
            raise ValueError("thresholds must be strictly ascending")
        if np.any(beta0 < 0) or np.any(beta1 < 0):
            raise ValueError("Betti numbers cannot be negative")
        if np.any(np.diff(beta0) < 0):
            raise ValueError("component counts must be non-decreasing in the threshold")
        if np.any(np.diff(beta1) > 0):
            raise ValueError("cycle counts must be non-increasing in the threshold")
        for arr, name in ((thresholds, "thresholds"), (beta0, "beta0"), (beta1, "beta1")):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def decompose(net: WeightedNetwork) -> BirthDeathDecomposition:
    """Split the edge-weight multiset into component births and cycle deaths.

    Births are the maximum-spanning-tree weights, found by Kruskal's
    algorithm over edges sorted by (weight descending, smaller node index,
    larger node index); deaths are all remaining weights. Both come back
    sorted ascending.
    """
    n = net.node_count
    iu, ju = np.triu_indices(n, k=1)
    w = net.weights[iu, ju]
    # lexsort: last key is primary.
    order = np.lexsort((ju, iu, -w))
    in_tree = kruskal_tree_mask(order, iu, ju, n)
    return BirthDeathDecomposition(
        births=np.sort(w[in_tree]),
        deaths=np.sort(w[~in_tree]),
        node_count=n,
    )


def betti_curves(net: WeightedNetwork, thresholds) -> BettiCurve:
    """Count components and independent cycles of each thresholded graph.

    An edge survives threshold eps iff its weight is strictly greater than
    eps. Components are counted by union-find; cycles follow from the
    1-skeleton Euler relation beta1 = |E| - |V| + beta0.
    """
    eps = np.asarray(thresholds, dtype=float)
    if eps.ndim != 1 or eps.size == 0:
        raise ValueError("thresholds must be a nonempty 1-D sequence")
    if np.any(np.diff(eps) <= 0):
        raise ValueError("thresholds must be strictly ascending")
    n = net.node_count
    iu, ju = np.triu_indices(n, k=1)
    w = net.weights[iu, ju]
    # Sweep thresholds downward, adding edges as they start to survive.
    order = np.argsort(-w, kind="stable")
    parent = list(range(n))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    components = n
    beta0 = np.empty(eps.size, dtype=int)
    edge_counts = np.empty(eps.size, dtype=int)
    pos = 0
    for t in range(eps.size - 1, -1, -1):
        while pos < order.size and w[order[pos]] > eps[t]:
            e = order[pos]
            ra, rb = find(int(iu[e])), find(int(ju[e]))
            if ra != rb:
                parent[rb] = ra
                components -= 1
            pos += 1
        beta0[t] = components
        edge_counts[t] = pos
    beta1 = edge_counts - n + beta0
    return BettiCurve(thresholds=eps, beta0=beta0, beta1=beta1)
