"""Exact Moore-Penrose inverses of incidence matrices and signless Laplacians of trees and odd unicyclic graphs."""

from .graph import (
    CycleData,
    Graph,
    GraphClass,
    Kind,
    build_graph,
    classify,
    distances_from,
    edge_edge_distance,
    find_cycle,
    incidence_matrix,
    parity_matrix,
    parse_graph,
    split_tree_at_edge,
    vertex_edge_distance,
)
from .linalg import (
    PenroseReport,
    RationalMatrix,
    inverse,
    matmul,
    penrose_check,
    pseudoinverse_oracle,
    rank,
    rank_factorization,
    from_csv,
    from_json,
    to_csv,
    to_json,
)
from .tree import mp_edge_laplacian, mp_incidence, mp_signless_laplacian, tree_mm_plus
from .unicyclic import inv_edge_laplacian, inv_incidence, inv_signless_laplacian

__version__ = "0.1.0"
