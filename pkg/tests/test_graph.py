import itertools

import numpy as np
import pytest

from conftest import complete, enumerate_optimum, random_graph, triangle
from tricolor.graph import (
    MonoWeightCache,
    WeightedGraph,
    apply_recolor,
    bfs_collect,
    connected_components,
    induced_subgraph,
    objective,
    pair_recolor_delta,
    recolor_delta,
    vertex_weight_within,
)


def test_objective_triangle():
    g = triangle()
    assert objective(g, [0, 1, 2]) == 0.0
    assert objective(g, [0, 0, 0]) == 3.0


def test_objective_k4_matches_enumeration():
    # Frozen from the 81-coloring enumeration: best partition is 2+1+1.
    g = complete(4)
    assert enumerate_optimum(g) == 1.0


def test_objective_rejects_bad_coloring():
    g = triangle()
    with pytest.raises(ValueError):
        objective(g, [0, 1])
    with pytest.raises(ValueError):
        objective(g, [0, 1, 3])


def test_objective_invariant_under_color_permutation(rng):
    g = random_graph(12, 30, rng)
    colors = rng.integers(0, 3, 12)
    base = objective(g, colors)
    for perm in itertools.permutations(range(3)):
        mapped = np.array([perm[c] for c in colors])
        assert objective(g, mapped) == pytest.approx(base, abs=1e-9)


def test_graph_construction_rules():
    with pytest.raises(ValueError):
        WeightedGraph(3, [(0, 0, 1.0)])  # self-loop
    with pytest.raises(ValueError):
        WeightedGraph(3, [(0, 1, -2.0)])  # negative weight
    with pytest.raises(ValueError):
        WeightedGraph(3, [(0, 5, 1.0)])  # out of range
    g = WeightedGraph(3, [(0, 1, 1.5), (1, 0, 2.5)])  # parallel edges merge
    assert g.m == 1 and g.edge_w[0] == 4.0
    g.validate()


def test_recolor_delta_identity_and_path():
    g = WeightedGraph(2, [(0, 1, 5.0)])
    cache = MonoWeightCache(g, [0, 0])
    assert recolor_delta(g, cache, 1, 0) == 0.0
    assert recolor_delta(g, cache, 1, 1) == -5.0
    with pytest.raises(ValueError):
        recolor_delta(g, cache, 7, 1)


def test_recolor_delta_against_full_recompute(rng):
    g = random_graph(10, 25, rng)
    colors = rng.integers(0, 3, 10)
    cache = MonoWeightCache(g, colors)
    for _ in range(1000):
        v = int(rng.integers(10))
        c = int(rng.integers(3))
        before = objective(g, cache.colors)
        predicted = recolor_delta(g, cache, v, c)
        trial = cache.colors.copy()
        trial[v] = c
        assert predicted == pytest.approx(objective(g, trial) - before, abs=1e-9)
        apply_recolor(g, cache, v, c)  # walk around a bit


def test_pair_recolor_delta_against_recompute(rng):
    g = random_graph(9, 20, rng)
    cache = MonoWeightCache(g, rng.integers(0, 3, 9))
    for u, v, w in g.edges():
        for cu in range(3):
            for cv in range(3):
                predicted = pair_recolor_delta(g, cache, u, v, w, cu, cv)
                trial = cache.colors.copy()
                trial[u], trial[v] = cu, cv
                truth = objective(g, trial) - objective(g, cache.colors)
                assert predicted == pytest.approx(truth, abs=1e-9)


def test_edge_weight_lookup():
    g = WeightedGraph(3, [(0, 1, 2.5)])
    assert g.edge_weight(0, 1) == 2.5
    assert g.edge_weight(1, 0) == 2.5
    assert g.edge_weight(0, 2) == 0.0


def test_apply_recolor_matches_rebuild(rng):
    g = random_graph(10, 25, rng)
    cache = MonoWeightCache(g, rng.integers(0, 3, 10))
    for _ in range(500):
        apply_recolor(g, cache, int(rng.integers(10)), int(rng.integers(3)))
    fresh = MonoWeightCache(g, cache.colors)
    assert np.allclose(cache.w, fresh.w, atol=1e-9)
    assert cache.total == pytest.approx(fresh.total, abs=1e-9)
    cache.check_consistent()


def test_cache_total_identity(rng):
    # Each monochromatic edge is seen from both endpoints, so the per-vertex
    # conflict weights sum to twice the objective.
    g = random_graph(20, 60, rng)
    cache = MonoWeightCache(g, rng.integers(0, 3, 20))
    per_vertex = cache.w[np.arange(g.n), cache.colors].sum()
    assert per_vertex == pytest.approx(2.0 * cache.total, abs=1e-9)


def test_cache_drift_bound(rng):
    g = random_graph(40, 200, rng)
    cache = MonoWeightCache(g, rng.integers(0, 3, 40))
    for _ in range(10_000):
        apply_recolor(g, cache, int(rng.integers(40)), int(rng.integers(3)))
    drift = abs(cache.total - objective(g, cache.colors))
    assert drift <= 1e-6 * (1.0 + g.total_weight)


def test_connected_components():
    assert connected_components(WeightedGraph(3)) == [[0], [1], [2]]
    g = WeightedGraph(4, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    assert sorted(len(c) for c in connected_components(g)) == [1, 3]
    g2 = WeightedGraph(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)])
    assert connected_components(g2) == [[0, 1, 2], [3, 4, 5]]


def test_component_objectives_sum_to_whole(rng):
    g = WeightedGraph(
        7,
        [(0, 1, 3.0), (1, 2, 2.0), (0, 2, 5.0), (3, 4, 7.0), (4, 5, 1.0)],
    )
    colors = rng.integers(0, 3, 7)
    total = 0.0
    for comp in connected_components(g):
        sub, mapping = induced_subgraph(g, comp)
        total += objective(sub, colors[sorted(mapping, key=mapping.get)])
    assert total == pytest.approx(objective(g, colors), abs=1e-9)


def test_induced_subgraph():
    g = complete(4)
    sub, mapping = induced_subgraph(g, [3, 1, 0])
    assert sub.n == 3 and sub.m == 3
    assert mapping == {0: 0, 1: 1, 3: 2}
    whole, _ = induced_subgraph(g, range(4))
    assert whole.m == g.m
    single, _ = induced_subgraph(g, [2])
    assert single.n == 1 and single.m == 0
    with pytest.raises(ValueError):
        induced_subgraph(g, [0, 9])


def test_bfs_collect():
    g = WeightedGraph(3, [(0, 1, 1), (1, 2, 1)])
    assert bfs_collect(g, 0, height=0) == [0]
    assert bfs_collect(g, 0, height=1) == [0, 1]
    assert bfs_collect(g, 0, height=5) == [0, 1, 2]
    # star: center 0, five leaves; ties broken by ascending index
    star = WeightedGraph(6, [(0, i, 1.0) for i in range(1, 6)])
    assert bfs_collect(star, 0, count=3) == [0, 1, 2]
    with pytest.raises(ValueError):
        bfs_collect(g, 0)
    with pytest.raises(ValueError):
        bfs_collect(g, 0, height=1, count=1)


def test_vertex_weight_within():
    g = triangle()
    assert vertex_weight_within(g, set(), 0) == 0.0
    assert vertex_weight_within(g, {0, 1, 2}, 1) == 2.0
    g2 = WeightedGraph(3, [(0, 1, 3.0), (0, 2, 7.0)])
    assert vertex_weight_within(g2, {1}, 0) == 3.0
    mask = np.array([False, True, False])
    assert vertex_weight_within(g2, mask, 0) == 3.0
