"""Approximation algorithms: HSA, VNS, GLS, IPI and the combined AllMH.

All drivers share the same contract: they take an initial coloring (GLS
builds its own population instead), a ``StopCondition``, and a seed or numpy
Generator, and return ``(SolveResult, Timeline)``.  The timeline records the
incumbent objective at every improvement, starting with the initial solution
at time zero, and is therefore non-increasing.

Timing goes through a small clock abstraction.  The default wall clock makes
``time_limit`` mean real seconds.  For byte-reproducible runs pass a
``TickClock``: every poll then advances a fixed quantum, so identical seeds
give identical timelines regardless of machine load.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass

import numpy as np

from .exact import SolveResult, branch_and_bound
from .graph import (
    MonoWeightCache,
    WeightedGraph,
    apply_recolor,
    bfs_collect,
    check_coloring,
    objective,
    recolor_delta,
)
from .local_search import GreedySpec, greedy_construct, vnd, vnd_inplace

log = logging.getLogger(__name__)


class Clock:
    """Wall clock; ``elapsed`` polls monotonic time since construction."""

    def __init__(self):
        self._t0 = time.monotonic()

    @property
    def current(self) -> float:
        return time.monotonic() - self._t0

    def elapsed(self) -> float:
        return self.current

    def advance(self, dt: float) -> None:
        pass

    def spawn(self) -> "Clock":
        return Clock()


class TickClock:
    """Deterministic clock: every ``elapsed`` poll adds a fixed quantum.

    Time limits measured against it count polls, not seconds, which makes
    runs reproducible byte for byte at the cost of the limit being virtual.
    """

    def __init__(self, quantum: float = 0.001):
        self.quantum = quantum
        self._time = 0.0

    @property
    def current(self) -> float:
        return self._time

    def elapsed(self) -> float:
        self._time += self.quantum
        return self._time

    def advance(self, dt: float) -> None:
        self._time += dt

    def spawn(self) -> "TickClock":
        return TickClock(self.quantum)


@dataclass(frozen=True)
class StopCondition:
    """Run budget; the run halts when either member triggers.

    ``time_limit`` is in clock seconds (virtual under a TickClock);
    ``stale_limit`` counts consecutive outer iterations without incumbent
    improvement (one iteration = one annealing run / VNS cycle / GLS
    generation / IPI sweep / AllMH round).
    """

    time_limit: float | None = None
    stale_limit: int | None = None


class Timeline:
    """(elapsed seconds, incumbent objective) samples, one per improvement."""

    def __init__(self):
        self.samples: list[tuple[float, float]] = []

    def record(self, t: float, value: float) -> None:
        self.samples.append((float(t), float(value)))

    def final_value(self) -> float:
        return self.samples[-1][1]

    def is_non_increasing(self) -> bool:
        vals = [v for _, v in self.samples]
        return all(a >= b for a, b in zip(vals, vals[1:]))

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write("elapsed_ms,objective\n")
            for t, v in self.samples:
                f.write(f"{t * 1000.0:.3f},{v!r}\n")


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


class _RunState:
    """Incumbent, timeline and stop bookkeeping shared by all drivers."""

    def __init__(self, g: WeightedGraph, stop: StopCondition, clock=None):
        self.g = g
        self.stop = stop
        self.clock = clock if clock is not None else Clock()
        self.best_colors: np.ndarray | None = None
        self.best_value = math.inf
        self.timeline = Timeline()
        self.stale = 0
        self.iterations = 0

    def offer(self, colors: np.ndarray, value: float) -> bool:
        """Register a candidate; records exact objective on improvement."""
        if value >= self.best_value:
            return False
        exact = objective(self.g, colors)
        if exact >= self.best_value:
            return False
        self.best_value = exact
        self.best_colors = colors.copy()
        self.timeline.record(self.clock.elapsed(), exact)
        return True

    def record_external(self, t: float, value: float, colors: np.ndarray) -> bool:
        if value >= self.best_value:
            return False
        self.best_value = value
        self.best_colors = colors.copy()
        self.timeline.record(t, value)
        return True

    def note_iteration(self, improved: bool) -> None:
        self.iterations += 1
        self.stale = 0 if improved else self.stale + 1

    def time_expired(self) -> bool:
        return self.stop.time_limit is not None and self.clock.elapsed() >= self.stop.time_limit

    def done(self) -> bool:
        if self.time_expired():
            return True
        return self.stop.stale_limit is not None and self.stale >= self.stop.stale_limit

    def result(self, proven: bool = False) -> SolveResult:
        return SolveResult(self.best_colors.copy(), self.best_value, proven, self.iterations)


# ---------------------------------------------------------------------------
# Hybrid simulated annealing


@dataclass(frozen=True)
class HsaParams:
    """Log-schedule annealing: T_i = t0 / ln(i + 1) within each run.

    A run restarts from the incumbent (with the schedule reset) once the
    temperature falls to ``t_min`` or after ``run_stale`` iterations without
    an incumbent improvement, whichever comes first; with the default
    t_min = 0 only the staleness trigger ever fires.
    """

    t0: float = 100.0
    t_min: float = 0.0
    run_stale: int = 300


def temperature(params: HsaParams, i: int) -> float:
    return params.t0 / math.log(i + 1)


def acceptance_probability(delta: float, temp: float) -> float:
    """Metropolis rule: 1 for improving moves, exp(-delta/T) otherwise."""
    if delta <= 0:
        return 1.0
    if temp <= 0:
        return 0.0
    return math.exp(-delta / temp)


def hsa(
    g: WeightedGraph,
    c0,
    params: HsaParams = HsaParams(),
    stop: StopCondition = StopCondition(stale_limit=1000),
    seed=0,
    clock=None,
) -> tuple[SolveResult, Timeline]:
    """Simulated annealing hybridized with VND.

    The annealing walk itself is classic: each iteration proposes one
    uniformly random vertex recolored to a uniformly random different color
    and applies the Metropolis test at the current temperature.  On top of
    the walk, every iteration descends a snapshot of the walk state with VND
    (skipped while the walk has not moved, which makes it an exact no-op)
    and harvests the descended solution into the incumbent; the walk
    continues from its own rough state so the descent cannot collapse the
    exploration.  Runs restart from the incumbent as described in
    ``HsaParams``.
    """
    rng = as_rng(seed)
    state = _RunState(g, stop, clock)
    walk = MonoWeightCache(g, c0)
    state.offer(walk.colors, walk.total)
    if g.n == 0:
        return state.result(True), state.timeline

    i = 1
    run_stale = 0
    run_improved = False
    walk_moved = True
    while not state.done():
        temp = temperature(params, i)
        v = int(rng.integers(g.n))
        new_color = int((walk.colors[v] + 1 + rng.integers(2)) % 3)
        delta = recolor_delta(g, walk, v, new_color)
        accept = delta <= 0
        if not accept and temp > 0:
            accept = rng.random() < math.exp(-delta / temp)
        if accept:
            apply_recolor(g, walk, v, new_color)
            walk_moved = True
        improved = False
        if walk_moved:
            polished = MonoWeightCache(g, walk.colors)
            vnd_inplace(g, polished)
            walk_moved = False
            improved = state.offer(polished.colors, polished.total)
        run_improved |= improved
        run_stale = 0 if improved else run_stale + 1
        if temp <= params.t_min or run_stale >= params.run_stale:
            # One annealing run ends; staleness is counted in runs.
            state.note_iteration(run_improved)
            walk = MonoWeightCache(g, state.best_colors)
            i = 1
            run_stale = 0
            run_improved = False
            walk_moved = True
        else:
            i += 1
    return state.result(), state.timeline


# ---------------------------------------------------------------------------
# Variable neighborhood search


@dataclass(frozen=True)
class VnsParams:
    k_max: int = 10
    l_max: int = 50


def shake(g: WeightedGraph, colors, k: int, l: int, seed=0) -> np.ndarray:
    """Cyclically shift colors inside k random BFS balls of height l.

    Each repetition roots a ball at a uniform vertex; if the ball swallows
    the whole graph the remaining repetitions are abandoned, otherwise every
    color c in the ball becomes (c + s) mod 3 for a random s in {1, 2}.
    """
    if k < 1 or l < 0:
        raise ValueError("need k >= 1 and l >= 0")
    rng = as_rng(seed)
    out = check_coloring(g, colors).copy()
    if g.n == 0:
        return out
    for _ in range(k):
        root = int(rng.integers(g.n))
        ball = bfs_collect(g, root, height=l)
        if len(ball) == g.n:
            break
        s = 1 + int(rng.integers(2))
        out[ball] = (out[ball] + s) % 3
    return out


def vns(
    g: WeightedGraph,
    c0,
    params: VnsParams = VnsParams(),
    stop: StopCondition = StopCondition(stale_limit=100),
    seed=0,
    clock=None,
) -> tuple[SolveResult, Timeline]:
    """Shake-and-descend search over growing perturbation sizes.

    One outer cycle runs k = 1, 2, ... and for each k shakes with every ball
    height l = 1..min(k, l_max), descending each perturbation with VND and
    keeping the better of the old and new solutions; k resets after reaching
    k_max.  Staleness counts improvement-free outer cycles.
    """
    rng = as_rng(seed)
    state = _RunState(g, stop, clock)
    x = check_coloring(g, c0).copy()
    x_val = objective(g, x)
    state.offer(x, x_val)
    if g.n == 0:
        return state.result(True), state.timeline

    while not state.done():
        improved_cycle = False
        k = 1
        while True:
            for l in range(1, min(k, params.l_max) + 1):
                if state.time_expired():
                    state.note_iteration(improved_cycle)
                    return state.result(), state.timeline
                shaken = shake(g, x, k, l, rng)
                cache = MonoWeightCache(g, shaken)
                vnd_inplace(g, cache)
                if cache.total < x_val:
                    x = cache.colors.copy()
                    x_val = cache.total
                    improved_cycle |= state.offer(x, x_val)
            k += 1
            if k >= params.k_max:
                break
        state.note_iteration(improved_cycle)
    return state.result(), state.timeline


# ---------------------------------------------------------------------------
# Genetic local search


@dataclass(frozen=True)
class GlsParams:
    n_pop: int = 50
    n_off: int = 25
    p_mut: float = 0.2
    p_vnd: float = 0.8


def fitness_of(g: WeightedGraph, value: float) -> float:
    """Total edge weight over (1 + objective): higher is better."""
    return g.total_weight / (1.0 + value)


def mutation_bounds(n: int) -> tuple[int, int]:
    lower = max(1, min(10, n // 10))
    return lower, max(lower, n // 5)


def one_point_crossover(a: np.ndarray, b: np.ndarray, i_star: int) -> tuple[np.ndarray, np.ndarray]:
    """Cut before 0-based position i_star - 1; i_star ranges over 2..n."""
    cut = i_star - 1
    c1 = np.concatenate([a[:cut], b[cut:]])
    c2 = np.concatenate([b[:cut], a[cut:]])
    return c1, c2


def gls(
    g: WeightedGraph,
    params: GlsParams = GlsParams(),
    stop: StopCondition = StopCondition(stale_limit=100),
    seed=0,
    seed_population=None,
    clock=None,
) -> tuple[SolveResult, Timeline]:
    """Genetic local search over colorings.

    Population: deterministic greedy + VND, then randomized greedy + VND
    until n_pop distinct members (tiny graphs may saturate below n_pop, in
    which case random colorings are tried and any remaining shortfall is
    accepted).  ``seed_population`` members replace the worst generated ones.
    Parents are drawn fitness-proportionally (distinct within a pair,
    polygamy across pairs); one-point crossover yields both complementary
    children; each offspring mutates with p_mut (a random-center BFS prefix
    recolored coin-wise) and is VND-improved with p_vnd; the next population
    keeps the n_pop fittest distinct colorings of parents plus offspring.
    """
    if params.n_pop < 2:
        raise ValueError("population size must be at least 2")
    if not 0 <= params.p_mut <= 1 or not 0 <= params.p_vnd <= 1:
        raise ValueError("probabilities must lie in [0, 1]")
    if params.n_off < 1 or params.n_off > params.n_pop:
        raise ValueError("need 1 <= n_off <= n_pop")
    rng = as_rng(seed)
    state = _RunState(g, stop, clock)
    n = g.n

    members: dict[bytes, tuple[np.ndarray, float]] = {}

    def add(colors: np.ndarray) -> bool:
        key = colors.tobytes()
        if key in members:
            return False
        members[key] = (colors, objective(g, colors))
        return True

    add(vnd(g, greedy_construct(g, GreedySpec())))
    attempts = 0
    while len(members) < params.n_pop and attempts < 30 * params.n_pop:
        attempts += 1
        spec = GreedySpec(randomized=True, seed=int(rng.integers(2**63)))
        add(vnd(g, greedy_construct(g, spec)))
    while len(members) < params.n_pop and attempts < 60 * params.n_pop:
        attempts += 1
        add(rng.integers(0, 3, n).astype(np.int64))

    pop = sorted(members.values(), key=lambda cv: cv[1])
    if seed_population is not None:
        for extra in seed_population:
            extra = check_coloring(g, extra).copy()
            if extra.tobytes() in {c.tobytes() for c, _ in pop}:
                continue
            pop[-1] = (extra, objective(g, extra))  # replace current worst
            pop.sort(key=lambda cv: cv[1])

    for colors, value in pop:
        state.offer(colors, value)
    if n == 0:
        return state.result(True), state.timeline

    def mutate(colors: np.ndarray) -> None:
        center = int(rng.integers(n))
        lo, hi = mutation_bounds(n)
        kk = int(rng.integers(lo, hi + 1))
        for u in bfs_collect(g, center, count=kk):
            if rng.random() < 0.5:
                colors[u] = (colors[u] + 1 + rng.integers(2)) % 3

    while not state.done():
        if len(pop) < 2:
            break  # search space saturated; nothing left to recombine
        values = np.array([v for _, v in pop])
        fit = np.array([fitness_of(g, v) for v in values])
        probs = fit / fit.sum() if fit.sum() > 0 else np.full(len(pop), 1.0 / len(pop))

        offspring: list[np.ndarray] = []
        for _ in range((params.n_off + 1) // 2):
            first = int(rng.choice(len(pop), p=probs))
            rest = probs.copy()
            rest[first] = 0.0
            total = rest.sum()
            rest = rest / total if total > 0 else np.array(
                [0.0 if t == first else 1.0 / (len(pop) - 1) for t in range(len(pop))]
            )
            second = int(rng.choice(len(pop), p=rest))
            if n >= 2:
                i_star = int(rng.integers(2, n + 1))
                c1, c2 = one_point_crossover(pop[first][0], pop[second][0], i_star)
            else:
                c1, c2 = pop[first][0].copy(), pop[second][0].copy()
            offspring.extend([c1, c2])
        offspring = offspring[: params.n_off]

        for child in offspring:
            if rng.random() < params.p_mut:
                mutate(child)
        offspring = [
            vnd(g, child) if rng.random() < params.p_vnd else child for child in offspring
        ]

        improved = False
        candidates = pop + [(child, objective(g, child)) for child in offspring]
        candidates.sort(key=lambda cv: cv[1])
        seen: set[bytes] = set()
        next_pop: list[tuple[np.ndarray, float]] = []
        for colors, value in candidates:
            key = colors.tobytes()
            if key in seen:
                continue
            seen.add(key)
            next_pop.append((colors, value))
            if len(next_pop) == params.n_pop:
                break
        pop = next_pop
        improved = state.offer(pop[0][0], pop[0][1])
        state.note_iteration(improved)
    return state.result(), state.timeline


# ---------------------------------------------------------------------------
# Iterative partial improvement


@dataclass(frozen=True)
class IpiParams:
    max_sub: int = 20


def build_subgraph_cover(g: WeightedGraph, max_sub: int, seed=0) -> list[list[int]]:
    """Vertex-disjoint subgraph seeds for the partial exact solves.

    Working on an edge-erasable copy of the graph: grow a set from a random
    unvisited vertex by repeatedly sampling a frontier vertex with
    probability proportional to its edge weight into the set (uniformly if
    all frontier weights are zero) until the set reaches ``max_sub`` or the
    frontier empties; then erase the set's internal edges, drop its boundary
    vertices from the unvisited pool, and repeat until the pool is empty.
    """
    if max_sub < 1:
        raise ValueError("max_sub must be at least 1")
    rng = as_rng(seed)
    work: list[dict[int, float]] = []
    for v in range(g.n):
        nbr, wt = g.neighbors(v)
        work.append(dict(zip(nbr.tolist(), wt.tolist())))
    unvisited = set(range(g.n))
    groups: list[list[int]] = []

    while unvisited:
        pool = sorted(unvisited)
        v = pool[int(rng.integers(len(pool)))]
        unvisited.remove(v)
        group = [v]
        in_group = {v}
        weight_to_group = {u: w for u, w in work[v].items() if u in unvisited}
        while len(group) < max_sub and weight_to_group:
            frontier = sorted(weight_to_group)
            wts = np.array([weight_to_group[u] for u in frontier])
            total = wts.sum()
            if total > 0:
                u = frontier[int(rng.choice(len(frontier), p=wts / total))]
            else:
                u = frontier[int(rng.integers(len(frontier)))]
            del weight_to_group[u]
            unvisited.remove(u)
            group.append(u)
            in_group.add(u)
            for x, w in work[u].items():
                if x in unvisited and x not in in_group:
                    weight_to_group[x] = weight_to_group.get(x, 0.0) + w
        groups.append(sorted(group))
        for a in group:
            for b in [b for b in work[a] if b in in_group]:
                del work[a][b]
                del work[b][a]
        boundary = {x for a in group for x in work[a]}
        unvisited -= boundary
    return groups


def _default_subsolver(sub: WeightedGraph, fixed, initial) -> SolveResult:
    return branch_and_bound(sub, fixed, initial=initial, max_nodes=2_000_000)


def ipi(
    g: WeightedGraph,
    c0,
    params: IpiParams = IpiParams(),
    stop: StopCondition = StopCondition(stale_limit=20),
    seed=0,
    solver=None,
    clock=None,
) -> tuple[SolveResult, Timeline]:
    """Iteratively re-solve small induced subproblems to proven optimality.

    Each sweep builds a fresh subgraph cover and, for every set, exactly
    solves the subgraph spanned by the set plus its edges to the boundary,
    with boundary colors frozen at the current solution, then installs the
    result.  Solves are warm-started with the current colors, so installs
    never worsen the objective; a solver that exhausts its budget simply
    contributes its best coloring (logged, not fatal).
    """
    rng = as_rng(seed)
    solver = solver or _default_subsolver
    state = _RunState(g, stop, clock)
    cache = MonoWeightCache(g, c0)
    state.offer(cache.colors, cache.total)
    if g.n == 0:
        return state.result(True), state.timeline

    proven = False
    while not state.done():
        improved_sweep = False
        groups = build_subgraph_cover(g, params.max_sub, rng)
        # A sweep whose groups cover V with no boundaries anywhere solved all
        # connected components unconstrained: the result is proven optimal.
        sweep_exact = sum(len(grp) for grp in groups) == g.n
        for group in groups:
            if state.time_expired():
                state.note_iteration(improved_sweep)
                return state.result(proven), state.timeline
            gset = set(group)
            boundary = sorted(
                {int(u) for v in group for u in g.neighbors(v)[0].tolist() if u not in gset}
            )
            verts = group + boundary
            index = {v: i for i, v in enumerate(verts)}
            sub_edges = []
            for v in group:
                nbr, wt = g.neighbors(v)
                for u, w in zip(nbr.tolist(), wt.tolist()):
                    if u in gset:
                        if v < u:
                            sub_edges.append((index[v], index[u], w))
                    else:
                        sub_edges.append((index[v], index[u], w))
            sub = WeightedGraph(len(verts), sub_edges)
            fixed = {index[b]: int(cache.colors[b]) for b in boundary}
            restriction = cache.colors[verts]
            res = solver(sub, fixed, restriction)
            if not res.proven_optimal:
                log.info("subproblem on %d vertices hit its budget; keeping best found", len(group))
            sweep_exact = sweep_exact and not boundary and res.proven_optimal
            if res.value > objective(sub, restriction) + 1e-12:
                continue  # a budget-starved solver may not beat the current colors
            for v in group:
                new_color = int(res.coloring[index[v]])
                if new_color != cache.colors[v]:
                    apply_recolor(g, cache, v, new_color)
            improved_sweep |= state.offer(cache.colors, cache.total)
        proven = proven or sweep_exact
        state.note_iteration(improved_sweep)
        if proven:
            break
    return state.result(proven), state.timeline


# ---------------------------------------------------------------------------
# Combined metaheuristic


def all_mh(
    g: WeightedGraph,
    c0,
    stop: StopCondition = StopCondition(stale_limit=5),
    seed=0,
    clock=None,
    hsa_params: HsaParams = HsaParams(),
    vns_params: VnsParams = VnsParams(),
    gls_params: GlsParams = GlsParams(),
    ipi_params: IpiParams = IpiParams(),
) -> tuple[SolveResult, Timeline]:
    """Run HSA, VNS, IPI and GLS in rotation from the shared incumbent.

    Every sub-call receives a fifth of the time limit (clipped to what
    remains) and a fifth of the stale limit; GLS gets the incumbent injected
    into its initial population in place of the worst generated member.
    """
    state = _RunState(g, stop, clock)
    root_ss = np.random.SeedSequence(seed if not isinstance(seed, np.random.Generator) else seed.integers(2**63))
    current = check_coloring(g, c0).copy()
    state.offer(current, objective(g, current))
    if g.n == 0:
        return state.result(True), state.timeline

    sub_stale = max(1, stop.stale_limit // 5) if stop.stale_limit is not None else None

    def sub_stop() -> StopCondition | None:
        if stop.time_limit is None:
            return StopCondition(None, sub_stale)
        remaining = stop.time_limit - state.clock.current
        if remaining <= 0:
            return None
        return StopCondition(min(stop.time_limit / 5.0, remaining), sub_stale)

    while not state.done():
        improved_round = False
        for name in ("hsa", "vns", "ipi", "gls"):
            budget = sub_stop()
            if budget is None:
                break
            child = np.random.Generator(np.random.PCG64(root_ss.spawn(1)[0]))
            sub_clock = state.clock.spawn()
            start = state.clock.current
            if name == "hsa":
                res, tl = hsa(g, current, hsa_params, budget, child, clock=sub_clock)
            elif name == "vns":
                res, tl = vns(g, current, vns_params, budget, child, clock=sub_clock)
            elif name == "ipi":
                res, tl = ipi(g, current, ipi_params, budget, child, clock=sub_clock)
            else:
                res, tl = gls(
                    g, gls_params, budget, child, seed_population=[current], clock=sub_clock
                )
            state.clock.advance(sub_clock.current)
            for t, value in tl.samples:
                if value < state.best_value:
                    improved_round |= state.record_external(start + t, value, res.coloring)
            current = res.coloring.copy()
        state.note_iteration(improved_round)
    return state.result(), state.timeline
