"""Exact solving and decomposition lower bounds.

Small instances are solved to proven optimality by branch and bound (checked
against brute force).  For larger graphs, clustering plus per-cluster exact
solves yields a valid lower bound: cutting the cross-cluster edges can only
help, so the sum of cluster optima never exceeds the true optimum.
"""

import tempfile
from pathlib import Path

from tricolor import (
    GenSpec,
    branch_and_bound,
    brute_force,
    export_blp,
    gen_random,
    heavy_edge_clusters,
    lower_bound,
    spectral_clusters,
)

small = gen_random(GenSpec("random", n=10, m=20, seed=3))
bf = brute_force(small)
bb = branch_and_bound(small)
print(f"n=10: brute force {bf.value:.4f} over {bf.nodes_explored} colorings; "
      f"branch&bound {bb.value:.4f} in {bb.nodes_explored} nodes, proven={bb.proven_optimal}")

big = gen_random(GenSpec("random", n=200, m=2000, seed=1))
heavy = heavy_edge_clusters(big, 20)
spectral = spectral_clusters(big, 20, seed=1)
lb = lower_bound(big, heavy)
lb2 = lower_bound(big, spectral)
print(f"n=200: heavy-edge clustering LB  = {lb:.2f}  ({len(heavy.clusters)} clusters)")
print(f"n=200: spectral clustering  LB2 = {lb2:.2f}  ({len(spectral.clusters)} clusters)")
print("the spectral bound concentrates weight inside clusters, so it is usually tighter")

# The 0/1 linear model can be handed to any external MILP solver.
lp_path = Path(tempfile.mkdtemp()) / "small.lp"
export_blp(small, path=lp_path)
print("LP model written to", lp_path, f"({lp_path.stat().st_size} bytes)")
