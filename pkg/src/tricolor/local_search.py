"""Greedy construction and variable neighborhood descent (VND).

VND is the canonical improvement procedure of this package, shared by every
metaheuristic: first-improvement descent over

* N1 -- recolor one vertex (vertices scanned in index order, colors
  ascending), and
* N2 -- recolor both endpoints of an edge at once (edges scanned in
  descending weight, the 8 non-identity color pairs in lexicographic order);
  any N2 improvement restarts the descent from N1.

The result is a local optimum for both neighborhoods.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import MonoWeightCache, WeightedGraph, apply_recolor

VND_TOL = 1e-12


@dataclass(frozen=True)
class GreedySpec:
    randomized: bool = False
    seed: int = 0


def greedy_construct(g: WeightedGraph, spec: GreedySpec = GreedySpec()) -> np.ndarray:
    """Color vertices in descending total incident weight, cheapest color first.

    Each vertex takes the color adding the least monochromatic weight against
    already-colored neighbors.  Deterministic mode breaks ties by lowest
    vertex index and lowest color; randomized mode picks uniformly among tied
    vertices and tied colors.
    """
    n = g.n
    if spec.randomized:
        rng = np.random.Generator(np.random.PCG64(spec.seed))
        order = np.empty(n, dtype=np.int64)
        filled = 0
        for value in sorted(set(g.weighted_degree.tolist()), reverse=True):
            group = np.flatnonzero(g.weighted_degree == value)
            # Repeated uniform picks among the tied == a random permutation.
            order[filled:filled + len(group)] = rng.permutation(group)
            filled += len(group)
    else:
        order = np.lexsort((np.arange(n), -g.weighted_degree))

    colors = np.full(n, -1, dtype=np.int64)
    wcol = np.zeros((n, 3), dtype=np.float64)
    for v in order.tolist():
        row = wcol[v]
        if spec.randomized:
            ties = np.flatnonzero(row == row.min())
            c = int(ties[rng.integers(len(ties))])
        else:
            c = int(np.argmin(row))
        colors[v] = c
        nbr, wt = g.neighbors(v)
        wcol[nbr, c] += wt
    return colors


def _first_n1_move(g: WeightedGraph, cache: MonoWeightCache):
    delta = cache.w - cache.w[np.arange(g.n), cache.colors][:, None]
    hits = np.argwhere(delta < -VND_TOL)
    if len(hits) == 0:
        return None
    return int(hits[0][0]), int(hits[0][1])


def _first_n2_move(g: WeightedGraph, cache: MonoWeightCache, order: np.ndarray):
    if g.m == 0:
        return None
    u, v, w = g.edge_u[order], g.edge_v[order], g.edge_w[order]
    cu, cv = cache.colors[u], cache.colors[v]
    wu, wv = cache.w[u], cache.w[v]
    m = len(order)
    du = wu - wu[np.arange(m), cu][:, None]  # (m, 3): delta of u alone
    dv = wv - wv[np.arange(m), cv][:, None]
    ks = np.arange(3)
    corr = (
        (ks[:, None] == ks[None, :])[None, :, :].astype(np.float64)
        - (ks[None, :, None] == cv[:, None, None])
        - (ks[None, None, :] == cu[:, None, None])
        + (cu == cv)[:, None, None]
    )
    delta = du[:, :, None] + dv[:, None, :] + w[:, None, None] * corr
    hits = np.argwhere(delta.reshape(m, 9) < -VND_TOL)
    if len(hits) == 0:
        return None
    e, pair = int(hits[0][0]), int(hits[0][1])
    return int(u[e]), int(v[e]), pair // 3, pair % 3


def vnd_inplace(g: WeightedGraph, cache: MonoWeightCache) -> float:
    """Descend to a joint N1/N2 local optimum; returns the final objective."""
    n2_order = np.lexsort((np.arange(g.m), -g.edge_w))
    while True:
        while True:
            move = _first_n1_move(g, cache)
            if move is None:
                break
            apply_recolor(g, cache, move[0], move[1])
        pair_move = _first_n2_move(g, cache, n2_order)
        if pair_move is None:
            return cache.total
        pu, pv, ca, cb = pair_move
        apply_recolor(g, cache, pu, ca)
        apply_recolor(g, cache, pv, cb)


def vnd(g: WeightedGraph, colors) -> np.ndarray:
    """Variable neighborhood descent; returns an improved copy of ``colors``."""
    cache = MonoWeightCache(g, colors)
    vnd_inplace(g, cache)
    return cache.colors
