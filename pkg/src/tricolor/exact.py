"""Exact solvers for small (sub)instances, plus an LP-format model export.

Both solvers optionally take frozen vertex colors (used when solving a
subgraph whose boundary is pinned to the surrounding coloring).  The
branch-and-bound is the in-repo substitute for a commercial MILP engine;
``export_blp`` writes the equivalent 0/1 linear model for external solvers.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph, check_coloring, objective

PRUNE_TOL = 1e-12
BRUTE_FORCE_LIMIT = 12


class BudgetError(RuntimeError):
    """Instance too large for the requested exact method."""


@dataclass
class SolveResult:
    coloring: np.ndarray
    value: float
    proven_optimal: bool
    nodes_explored: int


def _check_fixed(g: WeightedGraph, fixed) -> dict[int, int]:
    out: dict[int, int] = {}
    for v, c in (fixed or {}).items():
        v, c = int(v), int(c)
        if not 0 <= v < g.n:
            raise ValueError(f"fixed vertex {v} out of range")
        if c not in (0, 1, 2):
            raise ValueError(f"fixed color {c} out of range")
        out[v] = c
    return out


def brute_force(g: WeightedGraph, fixed=None) -> SolveResult:
    """Enumerate all colorings of the free vertices (at most 12 of them).

    Ties are broken by the lexicographically smallest color sequence.
    """
    fixed = _check_fixed(g, fixed)
    free = [v for v in range(g.n) if v not in fixed]
    f = len(free)
    if f > BRUTE_FORCE_LIMIT:
        raise BudgetError(f"{f} free vertices exceed the brute-force limit of {BRUTE_FORCE_LIMIT}")

    total = 3**f
    pos = {v: t for t, v in enumerate(free)}
    # Row index == mixed-radix encoding of the free colors, with the lowest
    # free vertex most significant, so row order == lexicographic order.
    cf = np.empty((total, f), dtype=np.int8)
    for t in range(f):
        period = 3 ** (f - 1 - t)
        cf[:, t] = (np.arange(total) // period) % 3

    vals = np.zeros(total, dtype=np.float64)
    for u, v, w in g.edges():
        if u in pos and v in pos:
            vals += w * (cf[:, pos[u]] == cf[:, pos[v]])
        elif u in pos:
            vals += w * (cf[:, pos[u]] == fixed[v])
        elif v in pos:
            vals += w * (cf[:, pos[v]] == fixed[u])
        elif fixed[u] == fixed[v]:
            vals += w

    best = int(np.argmin(vals))
    coloring = np.zeros(g.n, dtype=np.int64)
    for v, c in fixed.items():
        coloring[v] = c
    coloring[free] = cf[best]
    return SolveResult(coloring, objective(g, coloring), True, total)


def branch_and_bound(
    g: WeightedGraph,
    fixed=None,
    *,
    max_nodes: int = 10_000_000,
    time_limit: float | None = None,
    initial=None,
) -> SolveResult:
    """Depth-first branch and bound over single-vertex color assignments.

    Vertices are branched in descending weighted-degree order; at each vertex
    colors are tried cheapest-conflict first.  The node bound is the
    monochromatic weight among assigned vertices plus, for every unassigned
    vertex, the smallest conflict weight it must pay toward the assignment;
    a node is pruned when its bound is within ``PRUNE_TOL`` of the incumbent.
    When no colors are frozen, the first branched vertex is pinned to color 0
    and colors {0, 1} only are allowed until a second color appears.

    Exhausting ``max_nodes`` or ``time_limit`` returns the incumbent with
    ``proven_optimal=False`` rather than raising.
    """
    fixed = _check_fixed(g, fixed)
    n = g.n
    free = [v for v in range(n) if v not in fixed]
    free.sort(key=lambda v: (-g.weighted_degree[v], v))
    nfree = len(free)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), nfree + 1000))

    adj = []
    for v in range(n):
        nbr, wt = g.neighbors(v)
        adj.append(list(zip(nbr.tolist(), wt.tolist())))
    colors = [-1] * n
    for v, c in fixed.items():
        colors[v] = c
    wass = [[0.0, 0.0, 0.0] for _ in range(n)]
    assigned_mono = 0.0
    for u, v, w in g.edges():
        cu, cv = colors[u], colors[v]
        if cu >= 0 and cv >= 0 and cu == cv:
            assigned_mono += w
    for v in free:
        wa = wass[v]
        for u, w in adj[v]:
            cu = colors[u]
            if cu >= 0:
                wa[cu] += w
    sum_min = 0.0
    for v in free:
        wa = wass[v]
        sum_min += min(wa[0], wa[1], wa[2])

    best_colors: list[int] | None = None
    best_val = float("inf")
    if initial is not None:
        init = check_coloring(g, initial).copy()
        for v, c in fixed.items():
            init[v] = c
        best_colors = init.tolist()
        best_val = objective(g, init)

    symmetry = not fixed
    nodes = 0
    exhausted = False
    t0 = time.monotonic()

    def dfs(depth: int, seen_nonzero: bool) -> None:
        nonlocal assigned_mono, sum_min, nodes, best_colors, best_val, exhausted
        if exhausted:
            return
        if depth == nfree:
            if assigned_mono < best_val:
                best_val = assigned_mono
                best_colors = colors.copy()
            return
        v = free[depth]
        wa = wass[v]
        if symmetry and depth == 0:
            cands = [0]
        elif symmetry and not seen_nonzero:
            cands = [0, 1] if wa[0] <= wa[1] else [1, 0]
        else:
            cands = sorted((0, 1, 2), key=lambda c: (wa[c], c))
        for c in cands:
            nodes += 1
            if nodes >= max_nodes:
                exhausted = True
                return
            if time_limit is not None and nodes % 2048 == 0 and time.monotonic() - t0 > time_limit:
                exhausted = True
                return
            min_v = min(wa[0], wa[1], wa[2])
            assigned_mono += wa[c]
            sum_min -= min_v
            colors[v] = c
            touched = []
            for u, w in adj[v]:
                if colors[u] < 0:
                    wu = wass[u]
                    old = wu[0] if wu[0] < wu[1] else wu[1]
                    if wu[2] < old:
                        old = wu[2]
                    wu[c] += w
                    new = wu[0] if wu[0] < wu[1] else wu[1]
                    if wu[2] < new:
                        new = wu[2]
                    sum_min += new - old
                    touched.append((u, w))
            if assigned_mono + sum_min < best_val - PRUNE_TOL:
                dfs(depth + 1, seen_nonzero or c != 0)
            for u, w in touched:
                wu = wass[u]
                old = wu[0] if wu[0] < wu[1] else wu[1]
                if wu[2] < old:
                    old = wu[2]
                wu[c] -= w
                new = wu[0] if wu[0] < wu[1] else wu[1]
                if wu[2] < new:
                    new = wu[2]
                sum_min += new - old
            colors[v] = -1
            assigned_mono -= wa[c]
            sum_min += min_v
            if exhausted:
                return

    dfs(0, False)

    if best_colors is None:
        # Budget too small to reach any leaf: complete greedily with color 0.
        fallback = colors.copy()
        for v in free:
            fallback[v] = 0
        best_colors = fallback
    out = np.array(best_colors, dtype=np.int64)
    return SolveResult(out, objective(g, out), not exhausted, nodes)


def export_blp(g: WeightedGraph, fixed=None, path="model.lp") -> None:
    """Write the 0/1 linear model in LP text format.

    Variables: x_i_k (vertex i has color k) and, per edge, y_i_j_k (both ends
    of (i, j) colored k).  The objective sums a_ij * y_ij_k; every vertex gets
    exactly one color; y_ij_k >= x_i_k + x_j_k - 1 links the two; frozen
    vertices add x_v_c = 1.
    """
    fixed = _check_fixed(g, fixed)
    xvars = [f"x_{i}_{k}" for i in range(g.n) for k in range(3)]
    yvars = [f"y_{u}_{v}_{k}" for u, v, _ in g.edges() for k in range(3)]

    lines = ["\\ weighted 3-coloring of a graph as a 0/1 linear program", "Minimize"]
    terms = []
    for u, v, w in g.edges():
        for k in range(3):
            terms.append(f"{w!r} y_{u}_{v}_{k}")
    if not terms and g.n > 0:
        terms = ["0 x_0_0"]
    if terms:
        lines.append(" obj: " + " + ".join(terms[:4]))
        for start in range(4, len(terms), 4):
            lines.append("      + " + " + ".join(terms[start:start + 4]))
    else:
        lines.append(" obj: 0")
    lines.append("Subject To")
    for i in range(g.n):
        lines.append(f" assign_{i}: x_{i}_0 + x_{i}_1 + x_{i}_2 = 1")
    for u, v, _ in g.edges():
        for k in range(3):
            lines.append(f" link_{u}_{v}_{k}: y_{u}_{v}_{k} - x_{u}_{k} - x_{v}_{k} >= -1")
    for v in sorted(fixed):
        lines.append(f" fix_{v}: x_{v}_{fixed[v]} = 1")
    lines.append("Binary")
    for name in xvars + yvars:
        lines.append(f" {name}")
    lines.append("End")
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


def read_blp_summary(path) -> dict[str, int]:
    """Re-parse an exported LP file and count its variables and constraints."""
    counts = {"x_vars": 0, "y_vars": 0, "assign": 0, "link": 0, "fix": 0, "objective_terms": 0}
    section = None
    with open(path, "r", encoding="utf-8") as f:
        for raw in f:
            line = raw.strip()
            if not line or line.startswith("\\"):
                continue
            low = line.lower()
            if low in ("minimize", "subject to", "binary", "end"):
                section = low
                continue
            if section == "minimize":
                counts["objective_terms"] += sum(
                    1 for tok in line.split() if tok.startswith(("x_", "y_"))
                )
            elif section == "subject to":
                name = line.split(":", 1)[0].strip()
                for kind in ("assign", "link", "fix"):
                    if name.startswith(kind + "_"):
                        counts[kind] += 1
            elif section == "binary":
                for tok in line.split():
                    if tok.startswith("x_"):
                        counts["x_vars"] += 1
                    elif tok.startswith("y_"):
                        counts["y_vars"] += 1
    return counts
