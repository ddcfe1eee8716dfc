"""Shared fixtures-in-spirit: sample networks and independent oracles."""

import itertools

import numpy as np

import topovec as tv

K4_EDGES = [(0, 1, 6.0), (0, 2, 5.0), (1, 2, 4.0), (0, 3, 3.0), (1, 3, 2.0), (2, 3, 1.0)]

# Star-heavy 4-node networks whose component-birth sets are {3,4,5} and
# {2,2.5,3}; used by the golden distance checks.
G1_EDGES = [(0, 1, 5.0), (0, 2, 4.0), (0, 3, 3.0), (1, 2, 1.0), (1, 3, 2.0), (2, 3, 0.5)]
G2_EDGES = [(0, 1, 3.0), (0, 2, 2.5), (0, 3, 2.0), (1, 2, 1.0), (1, 3, 1.5), (2, 3, 0.5)]


def make_k4() -> tv.WeightedNetwork:
    return tv.from_edge_list(K4_EDGES, 4)


def random_network(rng: np.random.Generator, n: int, low=0.1, high=5.0) -> tv.WeightedNetwork:
    upper = np.triu(rng.uniform(low, high, size=(n, n)), 1)
    return tv.WeightedNetwork(upper + upper.T)


def random_tied_network(rng: np.random.Generator, n: int, levels=(1.0, 2.0, 3.0)) -> tv.WeightedNetwork:
    upper = np.triu(rng.choice(levels, size=(n, n)), 1)
    return tv.WeightedNetwork(upper + upper.T)


def max_spanning_weights_bruteforce(net: tv.WeightedNetwork) -> np.ndarray:
    """Best spanning-tree weight multiset by enumerating all edge subsets.

    Independent of the greedy route: tries every (n-1)-subset of edges,
    keeps the spanning acyclic ones, and maximizes total weight. Only
    usable for small n.
    """
    n = net.node_count
    edges = net.edges()
    best_total = -np.inf
    best = None
    for subset in itertools.combinations(edges, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        acyclic = True
        for i, j, _ in subset:
            ri, rj = find(i), find(j)
            if ri == rj:
                acyclic = False
                break
            parent[ri] = rj
        if not acyclic:
            continue
        total = sum(w for _, _, w in subset)
        if total > best_total:
            best_total = total
            best = subset
    return np.sort([w for _, _, w in best])


def component_count_bruteforce(net: tv.WeightedNetwork, eps: float) -> int:
    """Connected components of the graph keeping edges with w > eps, by BFS."""
    n = net.node_count
    adjacency = [[] for _ in range(n)]
    for i, j, w in net.edges():
        if w > eps:
            adjacency[i].append(j)
            adjacency[j].append(i)
    seen = [False] * n
    components = 0
    for start in range(n):
        if seen[start]:
            continue
        components += 1
        queue = [start]
        seen[start] = True
        while queue:
            node = queue.pop()
            for other in adjacency[node]:
                if not seen[other]:
                    seen[other] = True
                    queue.append(other)
    return components


def quantile_oracle(values, j: int, k: int) -> float:
    """Smallest v with CDF(v) >= j/k, by linear scan in integer arithmetic."""
    values = list(values)
    n = len(values)
    for v in values:
        count = sum(1 for u in values if u <= v)
        if count * k >= j * n:
            return v
    return values[-1]


def random_vector(rng: np.random.Generator, ref_size: int, scale=5.0) -> tv.TopologicalVector:
    m, n = tv.counts_for_size(ref_size)
    return tv.TopologicalVector(
        ref_size=ref_size,
        births_block=np.sort(rng.uniform(0.0, scale, size=m)),
        deaths_block=np.sort(rng.uniform(0.0, scale, size=n)),
    )


def random_gapped_vector(rng: np.random.Generator, ref_size: int, min_gap=0.25) -> tv.TopologicalVector:
    """Vector whose block coordinates are separated by at least min_gap."""
    m, n = tv.counts_for_size(ref_size)

    def block(size):
        steps = rng.uniform(min_gap, 1.0, size=size)
        return np.cumsum(steps) + rng.uniform(0.0, 1.0)

    return tv.TopologicalVector(
        ref_size=ref_size, births_block=block(m), deaths_block=block(n)
    )


def separable_corner_dataset() -> tv.LabeledDataset:
    """Three well-separated classes, each duplicated; one-vs-rest separable."""

    def vec(b0, b1, d0):
        return tv.TopologicalVector(3, np.array([b0, b1]), np.array([d0]))

    vectors = (
        vec(0.0, 0.0, 0.0), vec(0.0, 0.1, 0.0),
        vec(10.0, 10.0, 0.0), vec(10.0, 10.1, 0.0),
        vec(0.0, 0.0, 10.0), vec(0.0, 0.1, 10.0),
    )
    labels = ("a", "a", "b", "b", "c", "c")
    return tv.LabeledDataset(vectors=vectors, labels=labels)
