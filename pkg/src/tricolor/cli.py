"""Command line front end.

Subcommands: generate, lb, exact, solve, experiment, check.  Run
``tricolor <subcommand> -h`` for options.
"""

from __future__ import annotations

import argparse
import sys

from .decomposition import cluster_lower_bounds, heavy_edge_clusters, spectral_clusters
from .exact import branch_and_bound, export_blp
from .graph import objective
from .harness import check, load_spec_toml, run_experiment, run_single
from .instances import (
    GenSpec,
    ParseError,
    gen_udg,
    generate,
    read_coloring,
    read_graph,
    write_coloring,
    write_graph,
)
from .local_search import vnd
from .metaheuristics import Clock, StopCondition, TickClock, Timeline, all_mh, gls, hsa, ipi, vns


def _cmd_generate(args) -> int:
    spec = GenSpec(
        family=args.family,
        n=args.n,
        m=args.m,
        r=args.r,
        weight_max=args.weight_max,
        seed=args.seed,
    )
    if spec.family == "udg":
        g, _ = gen_udg(spec)
    else:
        g = generate(spec)
    write_graph(g, args.out)
    print(f"wrote {args.out}: n={g.n} m={g.m}")
    return 0


def _cmd_lb(args) -> int:
    g = read_graph(args.graph)
    if args.method == "spectral":
        part = spectral_clusters(g, args.q, seed=args.seed)
    else:
        part = heavy_edge_clusters(g, args.q, seed=args.seed)
    bounds = cluster_lower_bounds(g, part, max_cluster=args.max_cluster)
    print(f"lower_bound {sum(bounds)!r}")
    print("cluster,size,bound")
    for idx, (cl, b) in enumerate(zip(part.clusters, bounds)):
        print(f"{idx},{len(cl)},{b!r}")
    return 0


def _cmd_exact(args) -> int:
    g = read_graph(args.graph)
    fixed = {}
    if args.fixed:
        with open(args.fixed, "r", encoding="utf-8") as f:
            for lineno, raw in enumerate(f, start=1):
                s = raw.split()
                if not s:
                    continue
                if len(s) != 2:
                    raise ParseError(f"{args.fixed}:{lineno}: expected 'vertex color'")
                fixed[int(s[0])] = int(s[1])
    if args.export_lp:
        export_blp(g, fixed, args.export_lp)
        print(f"wrote {args.export_lp}")
    res = branch_and_bound(g, fixed, max_nodes=args.max_nodes)
    print(f"value {res.value!r}")
    print(f"proven_optimal {res.proven_optimal}")
    print(f"nodes {res.nodes_explored}")
    if args.out:
        write_coloring(res.coloring, args.out)
        print(f"wrote {args.out}")
    return 0


def _cmd_solve(args) -> int:
    g = read_graph(args.graph)
    stop = StopCondition(time_limit=args.time_limit, stale_limit=args.stale_limit)
    if args.init != "greedy":
        init = read_coloring(args.init)
        if len(init) != g.n:
            raise ValueError("initial coloring length does not match graph")
    else:
        init = None
    colors, value, tl = _solve_with_init(args.algo, g, stop, args.seed, args.deterministic, init)
    print(f"objective {value!r}")
    if args.out:
        write_coloring(colors, args.out)
        print(f"wrote {args.out}")
    if args.timeline:
        tl.write_csv(args.timeline)
        print(f"wrote {args.timeline}")
    return 0


def _solve_with_init(algo, g, stop, seed, deterministic, init):
    if init is None:
        return run_single(algo, g, stop, seed, deterministic)
    clock = TickClock() if deterministic else Clock()
    if algo in ("greedy", "vnd"):
        colors = vnd(g, init) if algo == "vnd" else init
        tl = Timeline()
        tl.record(clock.elapsed(), objective(g, colors))
        return colors, objective(g, colors), tl
    runner = {"hsa": hsa, "vns": vns, "ipi": ipi, "allmh": all_mh}.get(algo)
    if runner is not None:
        res, tl = runner(g, init, stop=stop, seed=seed, clock=clock)
    else:
        res, tl = gls(g, stop=stop, seed=seed, seed_population=[init], clock=clock)
    return res.coloring, res.value, tl


def _cmd_experiment(args) -> int:
    spec = load_spec_toml(args.config)
    summaries, _ = run_experiment(spec)
    print(f"wrote {spec.out_dir}/summary.csv ({len(summaries)} rows)")
    return 0


def _cmd_check(args) -> int:
    try:
        report = check(args.graph, args.coloring)
    except (ParseError, ValueError) as err:
        print(f"invalid: {err}", file=sys.stderr)
        return 2
    for line in report.lines():
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tricolor", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a benchmark instance")
    g.add_argument("--family", choices=("random", "udg"), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, default=None, help="edge count (random family)")
    g.add_argument("--r", type=float, default=None, help="radius (udg family)")
    g.add_argument("--weight-max", type=float, default=100.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_generate)

    lb = sub.add_parser("lb", help="decomposition lower bound")
    lb.add_argument("graph")
    lb.add_argument("--method", choices=("spectral", "heavy"), default="spectral")
    lb.add_argument("--q", type=int, default=20, help="cluster size cap")
    lb.add_argument("--seed", type=int, default=0)
    lb.add_argument("--max-cluster", type=int, default=60)
    lb.set_defaults(func=_cmd_lb)

    ex = sub.add_parser("exact", help="exact solve / LP export")
    ex.add_argument("graph")
    ex.add_argument("--fixed", default=None, help="file of 'vertex color' lines")
    ex.add_argument("--export-lp", default=None)
    ex.add_argument("--max-nodes", type=int, default=10_000_000)
    ex.add_argument("--out", default=None, help="write the best coloring here")
    ex.set_defaults(func=_cmd_exact)

    so = sub.add_parser("solve", help="run one heuristic")
    so.add_argument("graph")
    so.add_argument(
        "--algo",
        choices=("greedy", "vnd", "hsa", "vns", "gls", "ipi", "allmh"),
        required=True,
    )
    so.add_argument("--time-limit", type=float, default=None)
    so.add_argument("--stale-limit", type=int, default=None)
    so.add_argument("--seed", type=int, default=0)
    so.add_argument("--init", default="greedy", help="'greedy' or a coloring file")
    so.add_argument("--out", default=None)
    so.add_argument("--timeline", default=None)
    so.add_argument("--deterministic", action="store_true")
    so.set_defaults(func=_cmd_solve)

    xp = sub.add_parser("experiment", help="run a batch experiment from a TOML config")
    xp.add_argument("--config", required=True)
    xp.set_defaults(func=_cmd_experiment)

    ck = sub.add_parser("check", help="validate and score a coloring file")
    ck.add_argument("graph")
    ck.add_argument("coloring")
    ck.set_defaults(func=_cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
