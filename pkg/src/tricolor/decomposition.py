"""Graph decomposition for lower bounds.

Deleting every edge that crosses a cluster boundary can only lower the
optimum, so the sum of per-cluster optimal objectives is a valid lower bound
for the whole graph.  Two clusterings are provided: a spectral embedding of
the normalized Laplacian followed by size-capped k-means, and a greedy
heavy-edge agglomeration baseline.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .exact import BudgetError, branch_and_bound
from .graph import WeightedGraph, induced_subgraph
from .local_search import GreedySpec, greedy_construct, vnd

DENSE_EIG_LIMIT = 2000
EIG_TOL = 1e-8


class CapacityError(ValueError):
    """k clusters of cap Q cannot hold all n vertices."""


class EigensolverError(RuntimeError):
    """Eigensolver failed to reach the requested residual tolerance."""


@dataclass
class ClusterPartition:
    """Disjoint vertex clusters, each holding at most ``cap`` vertices."""

    clusters: list[list[int]]
    cap: int

    def validate(self, n: int) -> None:
        seen: set[int] = set()
        for cl in self.clusters:
            if not cl:
                raise ValueError("empty cluster in partition")
            if len(cl) > self.cap:
                raise ValueError(f"cluster of size {len(cl)} exceeds cap {self.cap}")
            for v in cl:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} out of range")
                if v in seen:
                    raise ValueError(f"vertex {v} in two clusters")
                seen.add(v)
        if len(seen) != n:
            raise ValueError("clusters do not cover all vertices")

    def labels(self, n: int) -> np.ndarray:
        out = np.full(n, -1, dtype=np.int64)
        for j, cl in enumerate(self.clusters):
            out[cl] = j
        return out


@dataclass
class SpectralEmbedding:
    points: np.ndarray  # n x k, rows unit norm (zero rows allowed)
    eigenvalues: np.ndarray  # k smallest, ascending
    vectors: np.ndarray  # raw eigenvectors (columns), before row normalization


def normalized_laplacian(g: WeightedGraph) -> np.ndarray:
    """I - D^(-1/2) W D^(-1/2) as a dense symmetric matrix.

    Isolated vertices get a zero row and diagonal entry 0 (their degree
    matrix entry is not invertible and they never affect the objective).
    """
    n = g.n
    d = g.weighted_degree
    lap = np.zeros((n, n), dtype=np.float64)
    np.fill_diagonal(lap, (d > 0).astype(np.float64))
    if g.m:
        off = _off_diagonal(g, d)
        lap[g.edge_u, g.edge_v] = off
        lap[g.edge_v, g.edge_u] = off
    return lap


def _off_diagonal(g: WeightedGraph, d: np.ndarray) -> np.ndarray:
    # A zero-weight edge contributes nothing even when its endpoint degrees
    # vanish, so avoid the 0/0.
    out = np.zeros(g.m)
    pos = g.edge_w > 0
    out[pos] = -g.edge_w[pos] / np.sqrt(d[g.edge_u[pos]] * d[g.edge_v[pos]])
    return out


def _laplacian_sparse(g: WeightedGraph) -> scipy.sparse.csr_matrix:
    d = g.weighted_degree
    diag = (d > 0).astype(np.float64)
    rows = np.concatenate([np.arange(g.n), g.edge_u, g.edge_v])
    cols = np.concatenate([np.arange(g.n), g.edge_v, g.edge_u])
    off = _off_diagonal(g, d) if g.m else np.zeros(0)
    vals = np.concatenate([diag, off, off])
    return scipy.sparse.csr_matrix((vals, (rows, cols)), shape=(g.n, g.n))


def spectral_embedding(g: WeightedGraph, k: int, tol: float = EIG_TOL) -> SpectralEmbedding:
    """Rows of the k smallest eigenvectors of L_sym, normalized to unit norm.

    Dense symmetric solve up to ``DENSE_EIG_LIMIT`` vertices, Lanczos-type
    (ARPACK, shifted to the top of the spectrum) above.  Every returned pair
    must satisfy ||L u - lambda u|| <= tol or an EigensolverError names the
    worst residual.  All-zero rows (possible for isolated vertices) are kept
    as zero instead of being normalized.
    """
    n = g.n
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    if n <= DENSE_EIG_LIMIT or k >= n - 1:
        lap = normalized_laplacian(g)
        evals, evecs = scipy.linalg.eigh(lap, subset_by_index=(0, k - 1))
        operator = lap
    else:
        lsp = _laplacian_sparse(g)
        shifted = 2.0 * scipy.sparse.identity(n, format="csr") - lsp
        v0 = np.random.Generator(np.random.PCG64(0x5EED)).random(n)
        try:
            mu, evecs = scipy.sparse.linalg.eigsh(
                shifted, k=k, which="LA", v0=v0, maxiter=10 * n, tol=tol / 10
            )
        except scipy.sparse.linalg.ArpackNoConvergence as err:
            raise EigensolverError(f"Lanczos did not converge within {10 * n} iterations") from err
        evals = 2.0 - mu
        order = np.argsort(evals, kind="stable")
        evals, evecs = evals[order], evecs[:, order]
        operator = lsp

    resid = np.linalg.norm(operator @ evecs - evecs * evals[None, :], axis=0)
    worst = float(resid.max()) if len(resid) else 0.0
    if worst > tol:
        raise EigensolverError(f"eigenpair residual {worst:.3e} exceeds tolerance {tol:g}")

    # Stable sign: make the largest-magnitude entry of each column positive.
    for j in range(evecs.shape[1]):
        lead = int(np.argmax(np.abs(evecs[:, j])))
        if evecs[lead, j] < 0:
            evecs[:, j] = -evecs[:, j]

    norms = np.linalg.norm(evecs, axis=1)
    points = np.zeros_like(evecs)
    nz = norms > 1e-12
    points[nz] = evecs[nz] / norms[nz, None]
    return SpectralEmbedding(points, evals, evecs)


def balanced_kmeans(
    g: WeightedGraph,
    points: np.ndarray,
    k: int,
    cap: int,
    max_iter: int = 100,
    seed: int = 0,
) -> ClusterPartition:
    """k-means on embedding rows with a hard per-cluster size cap.

    Each round: one classical assignment step (squared Euclidean, empty
    clusters reseeded from the point farthest from its center), then clusters
    above the cap repeatedly evict the member with the least edge weight
    inside the cluster into the under-capacity cluster where that vertex is
    heaviest.  Stops when cluster composition repeats or ``max_iter`` runs
    out.  Centers are recomputed from the eviction-adjusted clusters; the
    initial centers are uniform random points in the unit cube.
    """
    n = len(points)
    if k < 1:
        raise ValueError("k must be at least 1")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if k * cap < n:
        raise CapacityError(f"k={k} clusters of cap {cap} cannot hold {n} vertices")
    rng = np.random.Generator(np.random.PCG64(seed))
    dim = points.shape[1]
    labels: np.ndarray | None = None
    centers = rng.random((k, dim))

    for _ in range(max_iter):
        if labels is not None:
            for j in range(k):
                members = points[labels == j]
                if len(members):  # empty clusters keep their old center
                    centers[j] = members.mean(axis=0)

        d2 = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = np.argmin(d2, axis=1)
        sizes = np.bincount(new_labels, minlength=k)
        for j in range(k):
            if sizes[j] == 0:
                own = d2[np.arange(n), new_labels]
                movable = np.flatnonzero(sizes[new_labels] > 1)
                if len(movable) == 0:
                    continue  # k > n: some clusters must stay empty
                v = int(movable[np.argmax(own[movable])])
                sizes[new_labels[v]] -= 1
                new_labels[v] = j
                sizes[j] += 1

        for idx in range(k):
            while sizes[idx] > cap:
                members = np.flatnonzero(new_labels == idx)
                weights = np.array(
                    [_weight_to_clusters(g, new_labels, k, int(v))[idx] for v in members]
                )
                v = int(members[np.argmin(weights)])
                per_cluster = _weight_to_clusters(g, new_labels, k, v)
                per_cluster[sizes >= cap] = -np.inf
                per_cluster[idx] = -np.inf
                target = int(np.argmax(per_cluster))
                sizes[idx] -= 1
                new_labels[v] = target
                sizes[target] += 1

        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels

    clusters = [np.flatnonzero(labels == j).tolist() for j in range(k)]
    clusters = [cl for cl in clusters if cl]
    part = ClusterPartition(clusters, cap)
    part.validate(n)
    return part


def _weight_to_clusters(g: WeightedGraph, labels: np.ndarray, k: int, v: int) -> np.ndarray:
    nbr, wt = g.neighbors(v)
    if len(nbr) == 0:
        return np.zeros(k)
    return np.bincount(labels[nbr], weights=wt, minlength=k).astype(np.float64)


def spectral_clusters(g: WeightedGraph, cap: int, max_iter: int = 100, seed: int = 0) -> ClusterPartition:
    """Spectral embedding into k = ceil(n / cap) dimensions, then capped k-means."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if g.n == 0:
        return ClusterPartition([], cap)
    k = ceil(g.n / cap)
    emb = spectral_embedding(g, k)
    return balanced_kmeans(g, emb.points, k, cap, max_iter=max_iter, seed=seed)


def heavy_edge_clusters(g: WeightedGraph, cap: int, seed: int | None = None) -> ClusterPartition:
    """Greedy agglomeration along edges in descending weight order.

    Two endpoint clusters merge whenever the union still fits the cap; ties
    between equal weights go to the lower canonical edge index.  The
    procedure is deterministic; ``seed`` is accepted for interface symmetry
    with the spectral method and ignored.
    """
    if cap < 2:
        raise ValueError("heavy-edge clustering needs cap >= 2")
    parent = list(range(g.n))
    size = [1] * g.n

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    order = np.lexsort((np.arange(g.m), -g.edge_w))
    for e in order.tolist():
        ru, rv = find(int(g.edge_u[e])), find(int(g.edge_v[e]))
        if ru != rv and size[ru] + size[rv] <= cap:
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]

    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    clusters = sorted((sorted(cl) for cl in groups.values()), key=lambda cl: cl[0])
    part = ClusterPartition(clusters, cap)
    part.validate(g.n)
    return part


def default_cluster_solver(sub: WeightedGraph):
    """Exact solve of one cluster, warm-started from greedy + VND."""
    start = vnd(sub, greedy_construct(sub, GreedySpec()))
    return branch_and_bound(sub, initial=start)


def cluster_lower_bounds(
    g: WeightedGraph,
    partition: ClusterPartition,
    solver=None,
    max_cluster: int = 60,
) -> list[float]:
    """Proven optimal objective of each cluster's induced subgraph."""
    partition.validate(g.n)
    solver = solver or default_cluster_solver
    bounds = []
    for cl in partition.clusters:
        if len(cl) > max_cluster:
            raise BudgetError(f"cluster of size {len(cl)} exceeds exact-solver limit {max_cluster}")
        sub, _ = induced_subgraph(g, cl)
        res = solver(sub)
        if not res.proven_optimal:
            raise BudgetError(f"exact solve of a {len(cl)}-vertex cluster exhausted its budget")
        bounds.append(res.value)
    return bounds


def lower_bound(
    g: WeightedGraph,
    partition: ClusterPartition,
    solver=None,
    max_cluster: int = 60,
) -> float:
    """Sum of per-cluster optima; a valid lower bound for the full objective."""
    return float(sum(cluster_lower_bounds(g, partition, solver, max_cluster)))
