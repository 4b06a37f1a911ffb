import dataclasses

import numpy as np
import pytest

from conftest import random_graph, triangle
from tricolor.exact import brute_force
from tricolor.graph import WeightedGraph, objective
from tricolor.harness import (
    ConfigError,
    ExperimentSpec,
    check,
    load_spec_toml,
    run_experiment,
)
from tricolor.instances import GenSpec, generate, write_coloring, write_graph
from tricolor.metaheuristics import StopCondition

FAST_STOP = StopCondition(time_limit=2.0, stale_limit=5)


def make_spec(tmp_path, **kw):
    base = dict(
        instances=(GenSpec("random", n=10, m=20, seed=1),),
        algorithms=("greedy",),
        repetitions=1,
        stop=FAST_STOP,
        root_seed=7,
        out_dir=str(tmp_path / "out"),
        deterministic=True,
        lb_cap=5,
    )
    base.update(kw)
    return ExperimentSpec(**base)


def test_single_deterministic_rep_has_zero_std(tmp_path):
    spec = make_spec(tmp_path)
    summaries, _ = run_experiment(spec)
    assert len(summaries) == 1
    assert summaries[0].std == 0.0
    assert summaries[0].best == summaries[0].mean == summaries[0].worst


def test_zero_weight_instance_ratio_is_one(tmp_path):
    g = WeightedGraph(4, [(0, 1, 0.0), (2, 3, 0.0)])
    path = tmp_path / "zero.txt"
    write_graph(g, path)
    spec = make_spec(tmp_path, instances=(str(path),))
    summaries, _ = run_experiment(spec)
    assert summaries[0].ratio == 1.0


def test_exact_column_and_ratio_small_instance(tmp_path):
    spec = make_spec(
        tmp_path,
        instances=(GenSpec("random", n=10, m=20, seed=3),),
        algorithms=("greedy", "vnd", "hsa"),
        repetitions=2,
    )
    summaries, _ = run_experiment(spec)
    opt = brute_force(generate(GenSpec("random", n=10, m=20, seed=3))).value
    for row in summaries:
        assert row.exact == pytest.approx(opt, abs=1e-9)
        assert row.ratio is None or row.ratio >= 1 - 1e-9
        assert row.best <= row.mean <= row.worst


def test_summary_recomputable_from_records(tmp_path):
    spec = make_spec(
        tmp_path,
        algorithms=("hsa", "vns"),
        repetitions=3,
    )
    summaries, records = run_experiment(spec)
    csv_lines = (tmp_path / "out" / "summary.csv").read_text().splitlines()
    assert len(csv_lines) == 1 + len(summaries)
    for row in summaries:
        runs = records[(row.instance, row.algo)]
        values = np.array([r.value for r in runs])
        assert row.mean == float(values.mean())
        assert row.std == float(values.std())
        assert row.best == float(values.min())
        assert row.worst == float(values.max())
        assert row.csv_row() in csv_lines


def test_deterministic_reruns_are_byte_identical(tmp_path):
    spec_a = make_spec(
        tmp_path,
        algorithms=("greedy", "hsa", "gls", "allmh"),
        repetitions=2,
        out_dir=str(tmp_path / "a"),
    )
    spec_b = dataclasses.replace(spec_a, out_dir=str(tmp_path / "b"))
    run_experiment(spec_a)
    run_experiment(spec_b)
    a, b = tmp_path / "a", tmp_path / "b"
    assert (a / "summary.csv").read_bytes() == (b / "summary.csv").read_bytes()
    tls_a = sorted((a / "timelines").iterdir())
    tls_b = sorted((b / "timelines").iterdir())
    assert [p.name for p in tls_a] == [p.name for p in tls_b]
    assert all(x.read_bytes() == y.read_bytes() for x, y in zip(tls_a, tls_b))


def test_timelines_non_increasing_and_final_matches(tmp_path):
    spec = make_spec(
        tmp_path,
        algorithms=("hsa", "vns", "gls", "ipi", "allmh"),
        repetitions=2,
    )
    summaries, records = run_experiment(spec)
    for (name, algo), runs in records.items():
        for run in runs:
            assert run.timeline.is_non_increasing()
            assert run.timeline.final_value() == pytest.approx(run.value, abs=1e-9)


def test_config_validation(tmp_path):
    with pytest.raises(ConfigError):
        make_spec(tmp_path, algorithms=("unknown",)).validate()
    with pytest.raises(ConfigError):
        make_spec(tmp_path, instances=("/nonexistent/file.txt",)).validate()
    with pytest.raises(ConfigError):
        make_spec(tmp_path, repetitions=0).validate()


def test_check_valid_and_invalid(tmp_path, rng):
    gpath = tmp_path / "tri.txt"
    write_graph(triangle(), gpath)
    cpath = tmp_path / "proper.txt"
    write_coloring([0, 1, 2], cpath)
    report = check(gpath, cpath)
    assert report.objective == 0.0
    assert report.color_counts == [1, 1, 1]
    assert report.mono_edges == 0

    short = tmp_path / "short.txt"
    write_coloring([0, 1], short)
    with pytest.raises(ValueError):
        check(gpath, short)


def test_check_matches_objective_on_random_pairs(tmp_path, rng):
    for t in range(50):
        n = int(rng.integers(2, 15))
        g = random_graph(n, int(rng.integers(1, n * (n - 1) // 2 + 1)), rng)
        colors = rng.integers(0, 3, n)
        gp = tmp_path / f"g{t}.txt"
        cp = tmp_path / f"c{t}.txt"
        write_graph(g, gp)
        write_coloring(colors, cp)
        assert check(gp, cp).objective == pytest.approx(objective(g, colors), abs=1e-12)


def test_load_spec_toml(tmp_path):
    gpath = tmp_path / "g.txt"
    write_graph(triangle(), gpath)
    cfg = tmp_path / "exp.toml"
    cfg.write_text(
        f"""
out_dir = "{tmp_path / 'res'}"
repetitions = 2
root_seed = 5
deterministic = true
algorithms = ["greedy", "vnd"]
stale_limit = 4
lb_cap = 3

[[instance]]
path = "{gpath}"

[[instance]]
family = "random"
n = 8
m = 12
seed = 9
"""
    )
    spec = load_spec_toml(cfg)
    spec.validate()
    assert spec.repetitions == 2
    assert spec.algorithms == ("greedy", "vnd")
    assert spec.stop.stale_limit == 4 and spec.stop.time_limit is None
    assert len(spec.instances) == 2
    summaries, _ = run_experiment(spec)
    assert len(summaries) == 4
