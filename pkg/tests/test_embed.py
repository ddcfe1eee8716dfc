import math

import numpy as np
import pytest

import topovec as tv
from helpers import G1_EDGES, make_k4, random_network

INF = math.inf


def test_identity_embedding_k4():
    vec = tv.embed(make_k4(), 4)
    assert np.array_equal(vec.births_block, [3.0, 5.0, 6.0])
    assert np.array_equal(vec.deaths_block, [1.0, 2.0, 4.0])


def test_upsampled_births_block():
    net = tv.from_edge_list(G1_EDGES, 4)  # births {3,4,5}
    vec = tv.embed(net, 7)
    assert vec.births_block.tolist() == [3, 3, 4, 4, 5, 5]
    assert vec.deaths_block.size == 1 + 7 * 4 // 2


def test_block_lengths():
    vec = tv.embed(make_k4(), 4)
    assert vec.births_block.size == 3
    assert vec.deaths_block.size == 3


def test_embed_rejects_small_inputs():
    with pytest.raises(ValueError, match="at least 3"):
        tv.embed(make_k4(), 2)
    two = tv.from_edge_list([(0, 1, 1.0)], 2)
    with pytest.raises(ValueError, match="2-node"):
        tv.embed(two, 5)


def test_embed_dataset_mixed_sizes():
    rng = np.random.default_rng(3)
    nets = [random_network(rng, n) for n in (60, 90, 120)]
    vectors = tv.embed_dataset(nets)
    assert all(v.ref_size == 120 for v in vectors)
    assert all(v.births_block.size == 119 for v in vectors)
    assert all(v.deaths_block.size == 7021 for v in vectors)


def test_embed_dataset_same_size_uses_raw_sets():
    rng = np.random.default_rng(5)
    nets = [random_network(rng, 12) for _ in range(4)]
    vectors = tv.embed_dataset(nets)
    for net, vec in zip(nets, vectors):
        d = tv.decompose(net)
        assert np.array_equal(vec.births_block, d.births)
        assert np.array_equal(vec.deaths_block, d.deaths)


def test_embed_dataset_single_network():
    rng = np.random.default_rng(6)
    vectors = tv.embed_dataset([random_network(rng, 9)])
    assert vectors[0].ref_size == 9


def test_embed_dataset_rejects_low_ref_size():
    rng = np.random.default_rng(7)
    nets = [random_network(rng, 10), random_network(rng, 20)]
    with pytest.raises(ValueError, match="below the largest"):
        tv.embed_dataset(nets, ref_size=15)


def test_embed_dataset_allows_upsampling_override():
    rng = np.random.default_rng(8)
    vectors = tv.embed_dataset([random_network(rng, 10)], ref_size=12)
    assert vectors[0].ref_size == 12


def test_reconstruct_round_trip():
    rng = np.random.default_rng(9)
    for _ in range(50):
        n = int(rng.integers(3, 20))
        net = random_network(rng, n)
        births, deaths = tv.reconstruct_barcode(tv.embed(net, n))
        d = tv.decompose(net)
        assert np.array_equal(births, d.births)
        assert np.array_equal(deaths, d.deaths)


def test_permutation_invariance():
    rng = np.random.default_rng(10)
    for _ in range(20):
        n = int(rng.integers(3, 15))
        net = random_network(rng, n)
        perm = rng.permutation(n)
        relabeled = tv.WeightedNetwork(net.weights[np.ix_(perm, perm)])
        va = tv.embed(net, n + 2)
        vb = tv.embed(relabeled, n + 2)
        assert np.array_equal(va.births_block, vb.births_block)
        assert np.array_equal(va.deaths_block, vb.deaths_block)


def test_isometry_with_concatenated_norm():
    rng = np.random.default_rng(11)
    for _ in range(25):
        ref = int(rng.integers(3, 12))
        nets = [random_network(rng, int(rng.integers(3, ref + 1))) for _ in range(2)]
        va, vb = tv.embed_dataset(nets, ref_size=ref)
        diff = va.concatenated() - vb.concatenated()
        for p in (1, 2, INF):
            norm = np.linalg.norm(diff, ord=(np.inf if p == INF else p))
            assert tv.product_metric(va, vb, p) == pytest.approx(norm, rel=1e-12, abs=1e-12)


def test_same_size_product_metric_uses_exact_distances():
    rng = np.random.default_rng(12)
    for _ in range(20):
        n = int(rng.integers(3, 12))
        net_a, net_b = random_network(rng, n), random_network(rng, n)
        va, vb = tv.embed_dataset([net_a, net_b])
        da, db = tv.decompose(net_a), tv.decompose(net_b)
        m, k = tv.counts_for_size(n)
        for p in (1, 2):
            wb = tv.wasserstein_exact(da.births, db.births, p)
            wd = tv.wasserstein_exact(da.deaths, db.deaths, p)
            expected = ((m * wb) ** p + (k * wd) ** p) ** (1.0 / p)
            assert tv.product_metric(va, vb, p) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_vector_validation():
    with pytest.raises(ValueError, match="block lengths"):
        tv.TopologicalVector(4, np.array([1.0, 2.0]), np.array([1.0, 2.0, 3.0]))
    with pytest.raises(ValueError, match="ascending"):
        tv.TopologicalVector(4, np.array([3.0, 2.0, 4.0]), np.array([1.0, 2.0, 3.0]))
    with pytest.raises(ValueError, match="at least 3"):
        tv.TopologicalVector(2, np.array([1.0]), np.array([]))
