"""Maximal k-biplex enumeration for bipartite graphs."""

from .bigraph import (
    BipartiteGraph,
    ParseError,
    Side,
    core_decompose,
    gen_er,
    load_edge_list,
    theta_core,
    write_edge_list,
)
from .biplex import (
    Biplex,
    canonical_key,
    extend_to_max,
    initial_solution,
    is_kbiplex,
    is_maximal,
)
from .large import enumerate_large
from .localenum import (
    AlmostSatContext,
    RPartition,
    compute_l_remo,
    enum_almost_sat,
    enum_r_subsets,
    partition_r,
)
from .oracle import (
    PathStep,
    PathTrace,
    brute_force_mbps,
    construct_left_anchored_path,
    similarity,
    verify_run,
)
from .traversal import (
    RunConfig,
    RunStats,
    SolutionStore,
    b_traversal,
    collect_mbps,
    i_traversal,
    right_shrinking_check,
    run_traversal,
)

__all__ = [
    "AlmostSatContext",
    "BipartiteGraph",
    "Biplex",
    "ParseError",
    "PathStep",
    "PathTrace",
    "RPartition",
    "RunConfig",
    "RunStats",
    "Side",
    "SolutionStore",
    "b_traversal",
    "brute_force_mbps",
    "canonical_key",
    "collect_mbps",
    "compute_l_remo",
    "construct_left_anchored_path",
    "core_decompose",
    "enum_almost_sat",
    "enum_r_subsets",
    "enumerate_large",
    "extend_to_max",
    "gen_er",
    "i_traversal",
    "initial_solution",
    "is_kbiplex",
    "is_maximal",
    "load_edge_list",
    "partition_r",
    "right_shrinking_check",
    "run_traversal",
    "similarity",
    "theta_core",
    "verify_run",
    "write_edge_list",
]

__version__ = "0.1.0"
