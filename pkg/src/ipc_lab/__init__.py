"""Isometric path complexity toolkit.

Exact computation of the complexity parameter (how many root-anchored
shortest paths are ever needed to cover one shortest path), a min-over-
roots approximation for covering whole graphs with isometric paths, exact
hyperbolicity, structural witnesses, generated graph families, and
brute-force oracles that keep all of it honest.
"""

__version__ = "0.1.0"

from .bfs_dag import BfsDag, build_bfs_dag, is_antichain, max_antichain
from .complexity import ComplexityReport, GammaTable, gamma_table, ipco, ipco_for_root
from .cover import PathCover, approx_isometric_path_cover, min_dag_path_cover, min_rooted_cover
from .graph import (
    DistanceMatrix,
    DistanceRow,
    Graph,
    all_pairs_distances,
    bfs_distances,
    format_edge_list,
    is_connected,
    is_isometric_path,
    parse_edge_list,
)
from .metric import HalfInteger, gromov_product, hyperbolicity

__all__ = [
    "BfsDag",
    "ComplexityReport",
    "DistanceMatrix",
    "DistanceRow",
    "GammaTable",
    "Graph",
    "HalfInteger",
    "PathCover",
    "all_pairs_distances",
    "approx_isometric_path_cover",
    "bfs_distances",
    "build_bfs_dag",
    "format_edge_list",
    "gamma_table",
    "gromov_product",
    "hyperbolicity",
    "ipco",
    "ipco_for_root",
    "is_antichain",
    "is_connected",
    "is_isometric_path",
    "max_antichain",
    "min_dag_path_cover",
    "min_rooted_cover",
    "parse_edge_list",
]
