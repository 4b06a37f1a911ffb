"""The metaheuristic portfolio on one instance.

Runs greedy construction, VND, and the five search algorithms under a small
identical budget, then prints the incumbent trajectory of the combined
method.  Every algorithm only ever improves its incumbent, so each timeline
is non-increasing.
"""

import numpy as np

from tricolor import (
    GenSpec,
    GreedySpec,
    StopCondition,
    all_mh,
    gen_random,
    gls,
    greedy_construct,
    hsa,
    ipi,
    objective,
    vnd,
    vns,
)

g = gen_random(GenSpec("random", n=100, m=1000, seed=9))
init = greedy_construct(g, GreedySpec())
print(f"instance n={g.n} m={g.m}")
print(f"greedy        {objective(g, init):10.2f}")
print(f"greedy + VND  {objective(g, vnd(g, init)):10.2f}")

budget = StopCondition(time_limit=5.0, stale_limit=20)
for name, run in [
    ("hsa", lambda: hsa(g, init, stop=budget, seed=1)),
    ("vns", lambda: vns(g, init, stop=budget, seed=1)),
    ("gls", lambda: gls(g, stop=budget, seed=1)),
    ("ipi", lambda: ipi(g, init, stop=budget, seed=1)),
    ("allmh", lambda: all_mh(g, init, stop=StopCondition(time_limit=5.0, stale_limit=3), seed=1)),
]:
    res, timeline = run()
    print(f"{name:6s} {res.value:10.2f}   ({len(timeline.samples)} improvements)")
    if name == "allmh":
        print("\nallmh incumbent trajectory:")
        for t, value in timeline.samples:
            print(f"   {t * 1000:9.1f} ms   {value:10.2f}")
