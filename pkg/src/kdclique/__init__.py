"""Exact maximum k-defective clique solver.

A k-defective clique is a vertex set whose induced subgraph misses at most
k edges of being complete.  This package finds a maximum one exactly, using
a coloring-based upper bound for pruning, bound-driven graph reduction, and
a binary branch-and-bound search, plus a brute-force oracle and a benchmark
CLI for verification.
"""

from .bounds import (
    CostBuckets,
    DeficiencyPartition,
    color_bound,
    cost_buckets,
    greedy_color,
    pair_extension_bound,
    partition_by_deficiency,
    staircase_increment,
    vertex_extension_bound,
)
from .graph import Graph, build_graph
from .instances import Instance, InstanceSpec, ParseError, parse_instance, write_dimacs
from .oracle import OracleLimitError, OracleResult, bitmask_reference, brute_force
from .records import RunRecord, emit_records
from .reduction import ReductionStats, check_edges, check_vertices, preprocess
from .search import (
    SolveResult,
    SolverConfig,
    branch_and_bound,
    greedy_lower_bound,
    node_reduction,
    solve,
)

__all__ = [
    "CostBuckets",
    "DeficiencyPartition",
    "Graph",
    "Instance",
    "InstanceSpec",
    "OracleLimitError",
    "OracleResult",
    "ParseError",
    "ReductionStats",
    "RunRecord",
    "SolveResult",
    "SolverConfig",
    "bitmask_reference",
    "branch_and_bound",
    "brute_force",
    "build_graph",
    "check_edges",
    "check_vertices",
    "color_bound",
    "cost_buckets",
    "emit_records",
    "greedy_color",
    "greedy_lower_bound",
    "node_reduction",
    "pair_extension_bound",
    "parse_instance",
    "partition_by_deficiency",
    "preprocess",
    "solve",
    "staircase_increment",
    "vertex_extension_bound",
    "write_dimacs",
]

__version__ = "0.1.0"
