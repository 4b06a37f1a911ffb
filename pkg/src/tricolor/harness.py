"""Batch experiment driver with CSV reporting.

Runs every (instance, algorithm, repetition) combination with seeds derived
from one root seed, writes a timeline CSV per run plus one ``summary.csv``,
and reports each algorithm's best objective as a ratio against the strongest
available bound (heavy-edge LB, spectral LB2, or the exact optimum on small
instances).  In deterministic mode runs execute sequentially on a tick clock,
so repeated invocations with the same root seed produce byte-identical CSVs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .decomposition import heavy_edge_clusters, lower_bound, spectral_clusters
from .exact import BRUTE_FORCE_LIMIT, brute_force
from .graph import WeightedGraph, objective
from .instances import GenSpec, generate, read_coloring, read_graph
from .local_search import GreedySpec, greedy_construct, vnd
from .metaheuristics import (
    Clock,
    StopCondition,
    TickClock,
    Timeline,
    all_mh,
    gls,
    hsa,
    ipi,
    vns,
)

ALGORITHMS = ("greedy", "vnd", "hsa", "vns", "gls", "ipi", "allmh")


class ConfigError(ValueError):
    """Bad experiment configuration, raised before any run starts."""


@dataclass(frozen=True)
class ExperimentSpec:
    instances: tuple  # paths (str) and/or GenSpec entries
    algorithms: tuple[str, ...]
    repetitions: int = 10
    stop: StopCondition = StopCondition(time_limit=600.0, stale_limit=100)
    root_seed: int = 0
    out_dir: str = "results"
    deterministic: bool = False
    lb_cap: int = 20

    def validate(self) -> None:
        if self.repetitions < 1:
            raise ConfigError("repetitions must be at least 1")
        if not self.instances:
            raise ConfigError("no instances given")
        for algo in self.algorithms:
            if algo not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {algo!r}; known: {', '.join(ALGORITHMS)}")
        for inst in self.instances:
            if isinstance(inst, GenSpec):
                continue
            if not Path(inst).is_file():
                raise ConfigError(f"instance file not found: {inst}")


@dataclass
class RunRecord:
    value: float
    time_to_best_ms: float
    timeline: Timeline


@dataclass
class RunSummary:
    instance: str
    n: int
    m: int
    algo: str
    mean: float
    std: float
    best: float
    worst: float
    lb: float
    lb2: float
    exact: float | None
    ratio: float | None  # None renders as n/a
    mean_time_to_best_ms: float

    def csv_row(self) -> str:
        exact = "" if self.exact is None else repr(self.exact)
        ratio = "n/a" if self.ratio is None else f"{self.ratio:.6f}"
        return ",".join(
            [
                self.instance,
                str(self.n),
                str(self.m),
                self.algo,
                repr(self.mean),
                repr(self.std),
                repr(self.best),
                repr(self.worst),
                repr(self.lb),
                repr(self.lb2),
                exact,
                ratio,
                f"{self.mean_time_to_best_ms:.3f}",
            ]
        )


SUMMARY_HEADER = "instance,n,m,algo,mean,std,best,worst,lb,lb2,exact,ratio,mean_time_to_best_ms"


def _instance_name(inst) -> str:
    if isinstance(inst, GenSpec):
        return inst.name()
    return Path(inst).stem


def _load_instance(inst) -> WeightedGraph:
    if isinstance(inst, GenSpec):
        return generate(inst)
    return read_graph(inst)


def run_single(
    algo: str,
    g: WeightedGraph,
    stop: StopCondition,
    seed,
    deterministic: bool = False,
) -> tuple[np.ndarray, float, Timeline]:
    """Run one algorithm once; returns (coloring, value, timeline)."""
    clock = TickClock() if deterministic else Clock()
    if algo in ("greedy", "vnd"):
        colors = greedy_construct(g, GreedySpec())
        if algo == "vnd":
            colors = vnd(g, colors)
        value = objective(g, colors)
        tl = Timeline()
        tl.record(clock.elapsed(), value)
        return colors, value, tl
    init = greedy_construct(g, GreedySpec())
    if algo == "hsa":
        res, tl = hsa(g, init, stop=stop, seed=seed, clock=clock)
    elif algo == "vns":
        res, tl = vns(g, init, stop=stop, seed=seed, clock=clock)
    elif algo == "gls":
        res, tl = gls(g, stop=stop, seed=seed, clock=clock)
    elif algo == "ipi":
        res, tl = ipi(g, init, stop=stop, seed=seed, clock=clock)
    elif algo == "allmh":
        res, tl = all_mh(g, init, stop=stop, seed=seed, clock=clock)
    else:
        raise ConfigError(f"unknown algorithm {algo!r}")
    return res.coloring, res.value, tl


def _ratio(best: float, denom: float) -> float | None:
    if denom > 0:
        return best / denom
    if best <= 1e-9:
        return 1.0
    return None


def compute_bounds(g: WeightedGraph, cap: int, seed: int = 0) -> tuple[float, float]:
    """(heavy-edge LB, spectral LB2); isolated-component-proof defaults."""
    lb = lower_bound(g, heavy_edge_clusters(g, max(2, cap)))
    lb2 = lower_bound(g, spectral_clusters(g, cap, seed=seed))
    return lb, lb2


def run_experiment(spec: ExperimentSpec):
    """Execute the experiment; returns (summaries, records) and writes CSVs.

    ``records[(instance, algo)]`` holds the per-repetition RunRecords backing
    each summary row.  Files: ``<out_dir>/summary.csv`` and
    ``<out_dir>/timelines/<instance>_<algo>_<rep>.csv``.
    """
    spec.validate()
    out_dir = Path(spec.out_dir)
    (out_dir / "timelines").mkdir(parents=True, exist_ok=True)

    summaries: list[RunSummary] = []
    records: dict[tuple[str, str], list[RunRecord]] = {}
    for inst_idx, inst in enumerate(spec.instances):
        g = _load_instance(inst)
        name = _instance_name(inst)
        lb, lb2 = compute_bounds(g, spec.lb_cap, seed=spec.root_seed)
        exact_val = None
        if g.n <= BRUTE_FORCE_LIMIT:
            exact_val = brute_force(g).value
        for algo_idx, algo in enumerate(spec.algorithms):
            runs: list[RunRecord] = []
            for rep in range(spec.repetitions):
                ss = np.random.SeedSequence(
                    spec.root_seed, spawn_key=(inst_idx, algo_idx, rep)
                )
                rng = np.random.Generator(np.random.PCG64(ss))
                colors, value, tl = run_single(algo, g, spec.stop, rng, spec.deterministic)
                tl.write_csv(out_dir / "timelines" / f"{name}_{algo}_{rep}.csv")
                runs.append(RunRecord(value, tl.samples[-1][0] * 1000.0, tl))
            records[(name, algo)] = runs
            summaries.append(summarize(name, g, algo, runs, lb, lb2, exact_val))

    with open(out_dir / "summary.csv", "w", encoding="utf-8", newline="\n") as f:
        f.write(SUMMARY_HEADER + "\n")
        for row in summaries:
            f.write(row.csv_row() + "\n")
    return summaries, records


def summarize(
    name: str,
    g: WeightedGraph,
    algo: str,
    runs: list[RunRecord],
    lb: float,
    lb2: float,
    exact_val: float | None,
) -> RunSummary:
    values = np.array([r.value for r in runs])
    best = float(values.min())
    denom = max(lb, lb2, exact_val if exact_val is not None else -math.inf)
    return RunSummary(
        instance=name,
        n=g.n,
        m=g.m,
        algo=algo,
        mean=float(values.mean()),
        std=float(values.std()),
        best=best,
        worst=float(values.max()),
        lb=lb,
        lb2=lb2,
        exact=exact_val,
        ratio=_ratio(best, denom),
        mean_time_to_best_ms=float(np.mean([r.time_to_best_ms for r in runs])),
    )


@dataclass
class CheckReport:
    objective: float
    color_counts: list[int]
    mono_edges: int

    def lines(self) -> list[str]:
        return [
            f"objective {self.objective!r}",
            "color_counts " + " ".join(str(c) for c in self.color_counts),
            f"mono_edges {self.mono_edges}",
        ]


def check(graph_path, coloring_path) -> CheckReport:
    """Validate a coloring file against a graph file and score it.

    Raises ParseError for malformed files and ValueError when the coloring
    length does not match the graph.
    """
    g = read_graph(graph_path)
    colors = read_coloring(coloring_path)
    if len(colors) != g.n:
        raise ValueError(
            f"coloring has {len(colors)} entries but the graph has {g.n} vertices"
        )
    value = objective(g, colors)
    counts = np.bincount(colors, minlength=3)[:3].tolist()
    mono = int((colors[g.edge_u] == colors[g.edge_v]).sum()) if g.m else 0
    return CheckReport(value, counts, mono)


def load_spec_toml(path) -> ExperimentSpec:
    """Read an ExperimentSpec from a TOML file.

    Top-level keys: algorithms (list), repetitions, root_seed, out_dir,
    deterministic, time_limit, stale_limit, lb_cap; instances as a list of
    ``[[instance]]`` tables each holding either ``path`` or generator fields
    (family, n, m or r, seed, weight_max).
    """
    try:
        import tomllib  # Python >= 3.11
    except ModuleNotFoundError:  # pragma: no cover
        import tomli as tomllib
    with open(path, "rb") as f:
        data = tomllib.load(f)
    instances: list = []
    for entry in data.get("instance", []):
        if "path" in entry:
            instances.append(entry["path"])
        else:
            instances.append(
                GenSpec(
                    family=entry["family"],
                    n=int(entry["n"]),
                    m=int(entry["m"]) if "m" in entry else None,
                    r=float(entry["r"]) if "r" in entry else None,
                    weight_max=float(entry.get("weight_max", 100.0)),
                    seed=int(entry.get("seed", 0)),
                )
            )
    stop = StopCondition(
        time_limit=float(data["time_limit"]) if "time_limit" in data else None,
        stale_limit=int(data["stale_limit"]) if "stale_limit" in data else None,
    )
    return ExperimentSpec(
        instances=tuple(instances),
        algorithms=tuple(data.get("algorithms", list(ALGORITHMS))),
        repetitions=int(data.get("repetitions", 10)),
        stop=stop,
        root_seed=int(data.get("root_seed", 0)),
        out_dir=str(data.get("out_dir", "results")),
        deterministic=bool(data.get("deterministic", False)),
        lb_cap=int(data.get("lb_cap", 20)),
    )
