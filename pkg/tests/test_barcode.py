import numpy as np
import pytest

import topovec as tv
from helpers import (
    component_count_bruteforce,
    make_k4,
    max_spanning_weights_bruteforce,
    random_network,
    random_tied_network,
)


def test_counts_for_size():
    assert tv.counts_for_size(4) == (3, 3)
    assert tv.counts_for_size(2) == (1, 0)
    assert tv.counts_for_size(90) == (89, 3916)
    with pytest.raises(ValueError):
        tv.counts_for_size(1)


def test_k4_decomposition():
    d = tv.decompose(make_k4())
    assert np.array_equal(d.births, [3.0, 5.0, 6.0])
    assert np.array_equal(d.deaths, [1.0, 2.0, 4.0])


def test_k4_decomposition_matches_bruteforce():
    net = make_k4()
    assert np.array_equal(tv.decompose(net).births, max_spanning_weights_bruteforce(net))


def test_two_node_network():
    d = tv.decompose(tv.from_edge_list([(0, 1, 7.0)], 2))
    assert np.array_equal(d.births, [7.0])
    assert d.deaths.size == 0


def test_equal_weights_k4():
    upper = np.triu(np.full((4, 4), 2.5), 1)
    d = tv.decompose(tv.WeightedNetwork(upper + upper.T))
    assert np.array_equal(d.births, [2.5, 2.5, 2.5])
    assert np.array_equal(d.deaths, [2.5, 2.5, 2.5])


def test_births_match_bruteforce_on_random_networks():
    rng = np.random.default_rng(5)
    for _ in range(15):
        n = int(rng.integers(3, 7))
        net = random_network(rng, n)
        assert np.allclose(tv.decompose(net).births, max_spanning_weights_bruteforce(net))


def test_decomposition_invariants_random():
    rng = np.random.default_rng(7)
    for n in (2, 3, 5, 10, 25, 50):
        for _ in range(20):
            net = random_network(rng, n)
            d = tv.decompose(net)
            assert d.births.size == n - 1
            assert d.deaths.size == 1 + n * (n - 3) // 2
            combined = np.sort(np.concatenate([d.births, d.deaths]))
            assert np.array_equal(combined, np.sort(net.edge_weights()))
            assert np.all(np.diff(d.births) >= 0)
            assert np.all(np.diff(d.deaths) >= 0)


def test_birth_multiset_tie_independent():
    rng = np.random.default_rng(13)
    for _ in range(20):
        n = int(rng.integers(3, 9))
        net = random_tied_network(rng, n)
        births = tv.decompose(net).births
        perm = rng.permutation(n)
        relabeled = tv.WeightedNetwork(net.weights[np.ix_(perm, perm)])
        assert np.array_equal(tv.decompose(relabeled).births, births)


def test_k4_betti_values():
    net = make_k4()
    curve = tv.betti_curves(net, [0.5, 3.5, 6.5])
    assert curve.beta0.tolist() == [1, 2, 4]
    assert curve.beta1.tolist() == [3, 1, 0]


def test_betti_matches_bruteforce():
    rng = np.random.default_rng(23)
    for _ in range(10):
        n = int(rng.integers(3, 12))
        net = random_network(rng, n)
        weights = net.edge_weights()
        grid = np.unique(np.concatenate([[weights.min() - 1.0], weights]))
        curve = tv.betti_curves(net, grid)
        for t, eps in enumerate(grid):
            beta0 = component_count_bruteforce(net, eps)
            edges = int(np.sum(weights > eps))
            assert curve.beta0[t] == beta0
            assert curve.beta1[t] == edges - n + beta0


def test_betti_monotonicity_and_euler():
    rng = np.random.default_rng(29)
    for _ in range(20):
        n = int(rng.integers(3, 25))
        net = random_network(rng, n)
        weights = net.edge_weights()
        grid = np.unique(weights)
        curve = tv.betti_curves(net, grid)
        assert np.all(np.diff(curve.beta0) >= 0)
        assert np.all(np.diff(curve.beta1) <= 0)
        for t, eps in enumerate(grid):
            edges = int(np.sum(weights > eps))
            assert curve.beta0[t] - curve.beta1[t] + edges == n


def test_betti_steps_match_decomposition_multiplicities():
    rng = np.random.default_rng(31)
    for _ in range(15):
        n = int(rng.integers(3, 10))
        net = random_tied_network(rng, n)
        d = tv.decompose(net)
        distinct = np.unique(net.edge_weights())
        grid = np.concatenate([[distinct[0] - 1.0], distinct])
        curve = tv.betti_curves(net, grid)
        for t, w in enumerate(distinct):
            birth_mult = int(np.sum(d.births == w))
            death_mult = int(np.sum(d.deaths == w))
            assert curve.beta0[t + 1] - curve.beta0[t] == birth_mult
            assert curve.beta1[t] - curve.beta1[t + 1] == death_mult


def test_unsorted_thresholds_rejected():
    net = make_k4()
    with pytest.raises(ValueError, match="ascending"):
        tv.betti_curves(net, [2.0, 1.0])
    with pytest.raises(ValueError, match="ascending"):
        tv.betti_curves(net, [1.0, 1.0])


def test_decomposition_validation():
    with pytest.raises(ValueError, match="expected"):
        tv.BirthDeathDecomposition(births=[1.0], deaths=[], node_count=3)
    with pytest.raises(ValueError, match="ascending"):
        tv.BirthDeathDecomposition(births=[2.0, 1.0], deaths=[3.0], node_count=3)
