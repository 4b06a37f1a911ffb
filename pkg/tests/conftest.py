import itertools

import numpy as np
import pytest

from tricolor.graph import WeightedGraph, objective


def triangle(w=1.0):
    return WeightedGraph(3, [(0, 1, w), (1, 2, w), (0, 2, w)])


def complete(n, w=1.0):
    return WeightedGraph(n, [(i, j, w) for i in range(n) for j in range(i + 1, n)])


def path(weights):
    return WeightedGraph(len(weights) + 1, [(i, i + 1, w) for i, w in enumerate(weights)])


def cycle(n, w=1.0):
    return WeightedGraph(n, [(i, (i + 1) % n, w) for i in range(n)])


def star(leaf_weights):
    return WeightedGraph(len(leaf_weights) + 1, [(0, i + 1, w) for i, w in enumerate(leaf_weights)])


def random_graph(n, m, rng, wmax=100.0):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    idx = rng.choice(len(pairs), size=m, replace=False)
    return WeightedGraph(n, [(pairs[k][0], pairs[k][1], rng.random() * wmax) for k in idx])


def enumerate_optimum(g):
    """Independent oracle: minimum objective over all 3^n colorings."""
    best = None
    for colors in itertools.product(range(3), repeat=g.n):
        val = objective(g, colors)
        if best is None or val < best:
            best = val
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)
