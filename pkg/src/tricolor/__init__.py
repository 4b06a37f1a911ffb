"""Weighted 3-coloring toolkit.

Color the vertices of an edge-weighted graph with three colors so that the
total weight of monochromatic edges is as small as possible.  The package
provides the graph machinery, instance generators, exact solvers,
decomposition lower bounds, a portfolio of metaheuristics, and a batch
experiment harness (also exposed as the ``tricolor`` command).
"""

from .decomposition import (
    CapacityError,
    ClusterPartition,
    EigensolverError,
    SpectralEmbedding,
    balanced_kmeans,
    heavy_edge_clusters,
    lower_bound,
    normalized_laplacian,
    spectral_clusters,
    spectral_embedding,
)
from .exact import BudgetError, SolveResult, branch_and_bound, brute_force, export_blp
from .graph import (
    MonoWeightCache,
    WeightedGraph,
    apply_recolor,
    bfs_collect,
    connected_components,
    induced_subgraph,
    objective,
    recolor_delta,
    vertex_weight_within,
)
from .harness import ExperimentSpec, RunSummary, check, run_experiment
from .instances import GenSpec, ParseError, gen_random, gen_udg, read_graph, write_graph
from .local_search import GreedySpec, greedy_construct, vnd
from .metaheuristics import (
    GlsParams,
    HsaParams,
    IpiParams,
    StopCondition,
    Timeline,
    VnsParams,
    all_mh,
    build_subgraph_cover,
    gls,
    hsa,
    ipi,
    shake,
    vns,
)

__version__ = "0.1.0"
