"""A miniature batch experiment.

Two generated instances, three algorithms, three repetitions each, run in
deterministic mode (virtual clock): repeating this script reproduces the
CSVs byte for byte.  The summary reports each algorithm's spread and its
best objective as a ratio over the strongest lower bound.
"""

import tempfile
from pathlib import Path

from tricolor import ExperimentSpec, GenSpec, StopCondition, run_experiment

out_dir = Path(tempfile.mkdtemp()) / "results"
spec = ExperimentSpec(
    instances=(
        GenSpec("random", n=50, m=500, seed=5),
        GenSpec("udg", n=80, r=0.25, seed=5),
    ),
    algorithms=("vnd", "hsa", "gls"),
    repetitions=3,
    stop=StopCondition(time_limit=2.0, stale_limit=10),
    root_seed=2024,
    out_dir=str(out_dir),
    deterministic=True,
    lb_cap=15,
)
summaries, records = run_experiment(spec)

print(f"{'instance':24s} {'algo':6s} {'mean':>10s} {'std':>8s} {'best':>10s} {'ratio':>7s}")
for row in summaries:
    ratio = "n/a" if row.ratio is None else f"{row.ratio:.3f}"
    print(f"{row.instance:24s} {row.algo:6s} {row.mean:10.2f} {row.std:8.2f} "
          f"{row.best:10.2f} {ratio:>7s}")

print("\nfiles under", out_dir)
for p in sorted(out_dir.rglob("*"))[:6]:
    print("   ", p.relative_to(out_dir))
print("    ...")
