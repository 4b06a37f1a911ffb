"""Weighted graphs, 3-colorings and constant-time recoloring moves.

The objective throughout the package is the total weight of monochromatic
edges, i.e. edges whose two endpoints carry the same color out of {0, 1, 2}.
A ``MonoWeightCache`` keeps, for every vertex and color, the weight of edges
into neighbors of that color, which makes evaluating a single-vertex recolor
an O(1) lookup and applying it an O(deg) update.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

N_COLORS = 3


class WeightedGraph:
    """Simple undirected graph with nonnegative real edge weights.

    Vertices are 0-based integers.  Parallel edges in the input are merged by
    summing their weights; self-loops are rejected.  Instances are immutable
    after construction and safe to share across workers.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int, float]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        self.n = int(n)

        merged: dict[tuple[int, int], float] = {}
        for i, j, w in edges:
            i, j = int(i), int(j)
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) out of range for n={n}")
            if i == j:
                raise ValueError(f"self-loop at vertex {i} is not allowed")
            w = float(w)
            if not np.isfinite(w) or w < 0.0:
                raise ValueError(f"edge ({i},{j}) has invalid weight {w}")
            key = (i, j) if i < j else (j, i)
            merged[key] = merged.get(key, 0.0) + w

        pairs = sorted(merged)
        self.m = len(pairs)
        self.edge_u = np.fromiter((p[0] for p in pairs), dtype=np.int64, count=self.m)
        self.edge_v = np.fromiter((p[1] for p in pairs), dtype=np.int64, count=self.m)
        self.edge_w = np.fromiter((merged[p] for p in pairs), dtype=np.float64, count=self.m)

        # CSR adjacency, neighbors in ascending index order per vertex.
        src = np.concatenate([self.edge_u, self.edge_v])
        dst = np.concatenate([self.edge_v, self.edge_u])
        wts = np.concatenate([self.edge_w, self.edge_w])
        order = np.lexsort((dst, src))
        self._adj_nbr = dst[order]
        self._adj_wt = wts[order]
        self._adj_start = np.searchsorted(src[order], np.arange(n + 1))

        self.weighted_degree = np.zeros(n, dtype=np.float64)
        np.add.at(self.weighted_degree, self.edge_u, self.edge_w)
        np.add.at(self.weighted_degree, self.edge_v, self.edge_w)
        self.total_weight = float(self.edge_w.sum())

    def neighbors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """Return (neighbor indices, edge weights) of ``v`` as array views."""
        a, b = self._adj_start[v], self._adj_start[v + 1]
        return self._adj_nbr[a:b], self._adj_wt[a:b]

    def degree(self, v: int) -> int:
        return int(self._adj_start[v + 1] - self._adj_start[v])

    def edges(self) -> Iterable[tuple[int, int, float]]:
        """Iterate edges as (u, v, weight) with u < v, in canonical order."""
        for u, v, w in zip(self.edge_u, self.edge_v, self.edge_w):
            yield int(u), int(v), float(w)

    def edge_weight(self, i: int, j: int) -> float:
        """Weight of edge (i, j), or 0.0 if the edge is absent."""
        nbr, wt = self.neighbors(i)
        k = np.searchsorted(nbr, j)
        if k < len(nbr) and nbr[k] == j:
            return float(wt[k])
        return 0.0

    def validate(self) -> None:
        """Check structural invariants; raises ValueError on inconsistency."""
        if np.any(self.edge_u >= self.edge_v):
            raise ValueError("edge list is not in canonical u < v form")
        if np.any(self.edge_w < 0) or not np.all(np.isfinite(self.edge_w)):
            raise ValueError("edge weights must be finite and nonnegative")
        pairs = set(zip(self.edge_u.tolist(), self.edge_v.tolist()))
        if len(pairs) != self.m:
            raise ValueError("duplicate edges present")
        from_adj = set()
        for v in range(self.n):
            nbr, wt = self.neighbors(v)
            for u, w in zip(nbr.tolist(), wt.tolist()):
                if u == v:
                    raise ValueError(f"self-loop at {v} in adjacency")
                key = (v, u) if v < u else (u, v)
                from_adj.add((key, w))
        if from_adj != {((int(u), int(v)), float(w)) for u, v, w in self.edges()}:
            raise ValueError("adjacency lists inconsistent with edge set")

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


def check_coloring(g: WeightedGraph, colors: Sequence[int] | np.ndarray) -> np.ndarray:
    """Validate a coloring against ``g`` and return it as an int64 array."""
    c = np.asarray(colors, dtype=np.int64)
    if c.shape != (g.n,):
        raise ValueError(f"coloring has length {c.shape}, expected ({g.n},)")
    if c.size and (c.min() < 0 or c.max() >= N_COLORS):
        raise ValueError("colors must lie in {0, 1, 2}")
    return c


def objective(g: WeightedGraph, colors: Sequence[int] | np.ndarray) -> float:
    """Total weight of monochromatic edges under ``colors``."""
    c = check_coloring(g, colors)
    if g.m == 0:
        return 0.0
    mono = c[g.edge_u] == c[g.edge_v]
    return float(g.edge_w[mono].sum())


class MonoWeightCache:
    """Per-vertex, per-color conflict weights for a coloring of ``g``.

    ``w[v, c]`` is the total weight of edges from ``v`` into neighbors
    currently colored ``c``; ``total`` is the current objective.  The cache
    and its coloring form one mutable unit: mutate only through
    ``apply_recolor``.
    """

    def __init__(self, g: WeightedGraph, colors: Sequence[int] | np.ndarray):
        self.g = g
        self.colors = check_coloring(g, colors).copy()
        self.w = np.zeros((g.n, N_COLORS), dtype=np.float64)
        self.total = 0.0
        self.rebuild()

    def rebuild(self) -> None:
        """Recompute the table and objective from scratch in O(n + m)."""
        g, c = self.g, self.colors
        self.w[:] = 0.0
        if g.m:
            np.add.at(self.w, (g.edge_u, c[g.edge_v]), g.edge_w)
            np.add.at(self.w, (g.edge_v, c[g.edge_u]), g.edge_w)
        self.total = float(g.edge_w[c[g.edge_u] == c[g.edge_v]].sum()) if g.m else 0.0

    def copy(self) -> "MonoWeightCache":
        out = object.__new__(MonoWeightCache)
        out.g = self.g
        out.colors = self.colors.copy()
        out.w = self.w.copy()
        out.total = self.total
        return out

    def check_consistent(self, atol: float = 1e-9) -> None:
        fresh = MonoWeightCache(self.g, self.colors)
        if not np.allclose(self.w, fresh.w, atol=atol):
            raise ValueError("cache table drifted from rebuild")
        if abs(self.total - fresh.total) > atol * (1.0 + self.g.total_weight):
            raise ValueError("cache total drifted from rebuild")


def recolor_delta(g: WeightedGraph, cache: MonoWeightCache, v: int, new_color: int) -> float:
    """Objective change if vertex ``v`` were recolored; does not mutate."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    if not 0 <= new_color < N_COLORS:
        raise ValueError(f"color {new_color} out of range")
    return float(cache.w[v, new_color] - cache.w[v, cache.colors[v]])


def apply_recolor(g: WeightedGraph, cache: MonoWeightCache, v: int, new_color: int) -> float:
    """Recolor ``v`` in place, updating the cache in O(deg(v)); returns delta."""
    delta = recolor_delta(g, cache, v, new_color)
    old = int(cache.colors[v])
    if new_color != old:
        nbr, wt = g.neighbors(v)
        # Neighbors are distinct in a simple graph, so fancy indexing is safe.
        cache.w[nbr, old] -= wt
        cache.w[nbr, new_color] += wt
        cache.colors[v] = new_color
        cache.total += delta
    return delta


def pair_recolor_delta(
    g: WeightedGraph,
    cache: MonoWeightCache,
    u: int,
    v: int,
    w_uv: float,
    cu: int,
    cv: int,
) -> float:
    """Objective change when endpoints of edge (u, v) take colors (cu, cv).

    Inclusion-exclusion over the shared edge corrects the two single-vertex
    deltas, which each count (u, v) against the other endpoint's old color.
    """
    ou, ov = int(cache.colors[u]), int(cache.colors[v])
    d = float(cache.w[u, cu] - cache.w[u, ou] + cache.w[v, cv] - cache.w[v, ov])
    d += w_uv * ((cu == cv) - (cu == ov) - (cv == ou) + (ou == ov))
    return d


def connected_components(g: WeightedGraph) -> list[list[int]]:
    """Maximal connected vertex sets, each ascending, ordered by minimum vertex."""
    seen = np.zeros(g.n, dtype=bool)
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            x = stack.pop()
            nbr, _ = g.neighbors(x)
            for y in nbr.tolist():
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def induced_subgraph(g: WeightedGraph, vertices: Iterable[int]) -> tuple[WeightedGraph, dict[int, int]]:
    """Subgraph on ``vertices`` plus the old->new index map (ascending order)."""
    vs = sorted(set(int(v) for v in vertices))
    if vs and (vs[0] < 0 or vs[-1] >= g.n):
        raise ValueError("vertex out of range in induced_subgraph")
    mapping = {v: i for i, v in enumerate(vs)}
    edges = []
    for v in vs:
        nbr, wt = g.neighbors(v)
        for u, w in zip(nbr.tolist(), wt.tolist()):
            if v < u and u in mapping:
                edges.append((mapping[v], mapping[u], w))
    return WeightedGraph(len(vs), edges), mapping


def bfs_collect(
    g: WeightedGraph,
    root: int,
    *,
    height: int | None = None,
    count: int | None = None,
) -> list[int]:
    """Vertices in BFS order from ``root``.

    Exactly one of ``height`` (all vertices at distance <= height) or
    ``count`` (first min(count, reachable) vertices) must be given.  Vertices
    at equal depth are visited in ascending index order.
    """
    if (height is None) == (count is None):
        raise ValueError("give exactly one of height= or count=")
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} out of range")
    if count is not None and count <= 0:
        return []
    dist = {root: 0}
    order = [root]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        if height is not None and dist[x] >= height:
            continue
        nbr, _ = g.neighbors(x)
        for y in nbr.tolist():
            if y not in dist:
                dist[y] = dist[x] + 1
                order.append(y)
                if count is not None and len(order) == count:
                    return order
    return order


def vertex_weight_within(g: WeightedGraph, members, v: int) -> float:
    """Total weight of edges from ``v`` into the vertex set ``members``.

    ``members`` may be any container supporting ``in`` or a boolean mask of
    length n; ``v`` itself need not belong to the set.
    """
    nbr, wt = g.neighbors(v)
    if isinstance(members, np.ndarray) and members.dtype == bool:
        return float(wt[members[nbr]].sum())
    if not isinstance(members, (set, frozenset, dict)):
        members = set(members)
    return float(sum(w for u, w in zip(nbr.tolist(), wt.tolist()) if u in members))
