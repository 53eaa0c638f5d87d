"""Exhaustive checks of the combinatorial facts the closed forms rest on.

Each function scans every relevant vertex/edge combination of one graph and
returns the first counterexample as a tuple, or None when the statement holds
everywhere.  Path membership is taken from BFS parent chains, independently of
the head/tail bookkeeping being checked.
"""

from __future__ import annotations

from .graph import (
    Graph,
    Kind,
    _cycle_data,
    edge_edge_distance,
    require_kind,
    vertex_edge_distance,
)
from .tree import edge_pair_split, head_sets, incident_partition
from .unicyclic import _off_cycle_splits, cycle_edge_pair_split


def spanning_forest_counterexample(t: Graph):
    """Tail sizes over E_H(i) plus head sizes over E_T(i) must total n - 1 at every vertex."""
    heads = head_sets(t)
    for i in range(1, t.n + 1):
        part = incident_partition(t, i)
        total = sum(t.n - len(heads[k - 1]) for k in part.eh) + sum(len(heads[k - 1]) for k in part.et)
        if total != t.n - 1:
            return ("spanning-forest", i, total)
    return None


def tree_path_counterexample(t: Graph):
    """An edge is on the i-j path iff it separates i from j; parity of the edge-distance sum flips exactly then."""
    heads = head_sets(t)
    for i in range(1, t.n + 1):
        for j in range(i, t.n + 1):
            path = set(t.path_edges(i, j))
            dij = t.d(i, j)
            for k in range(1, t.m + 1):
                on_path = k in path
                if on_path != ((i in heads[k - 1]) != (j in heads[k - 1])):
                    return ("a", k, i, j)
                s = vertex_edge_distance(t, i, k) + vertex_edge_distance(t, j, k)
                same = (s - dij) % 2 == 0
                if not on_path and not same:
                    return ("b", k, i, j)
                if on_path and same:
                    return ("c", k, i, j)
    return None


def tree_edge_pair_counterexample(t: Graph):
    """Vertices in the middle component keep the parity of d(ei, ej); the others flip it."""
    for ei in range(1, t.m + 1):
        for ej in range(1, t.m + 1):
            if ei == ej:
                continue
            middle = edge_pair_split(t, ei, ej).middle
            dee = edge_edge_distance(t, ei, ej)
            for k in range(1, t.n + 1):
                s = vertex_edge_distance(t, k, ei) + vertex_edge_distance(t, k, ej)
                same = (s - dee) % 2 == 0
                if k in middle and not same:
                    return ("a", ei, ej, k)
                if k not in middle and same:
                    return ("b", ei, ej, k)
    return None


def cycle_distance_counterexample(u: Graph):
    """Parity facts for an edge against a vertex pair in an odd unicyclic graph.

    Off-cycle edge cutting off both i and j <=> the edge lies on both approach
    paths to the cycle; a cycle edge on the i-j path flips parity, off it keeps
    parity; a shared approach-path edge keeps parity.
    """
    require_kind(u, Kind.ODD_UNICYCLIC)
    cd = _cycle_data(u)
    splits = _off_cycle_splits(u)
    approach = {v: frozenset(p.path_edges) for v, p in cd.projection.items()}
    for i in range(1, u.n + 1):
        for j in range(1, u.n + 1):
            path = set(u.path_edges(i, j))
            dij = u.d(i, j)
            for k in range(1, u.m + 1):
                on_cycle = k in cd.cycle_edges
                away = splits[k - 1].without_cycle
                shared = k in approach[i] and k in approach[j]
                if i != j and ((not on_cycle and i in away and j in away) != shared):
                    return ("iff", k, i, j)
                s = vertex_edge_distance(u, i, k) + vertex_edge_distance(u, j, k)
                same = (s - dij) % 2 == 0
                if on_cycle and k in path and same:
                    return ("a", k, i, j)
                if on_cycle and k not in path and not same:
                    return ("b", k, i, j)
                if shared and not same:
                    return ("c", k, i, j)
    return None


def unicyclic_edge_pair_counterexample(u: Graph):
    """Parity of d(ei,k) + d(ej,k) against d(ei,ej) in the four cycle/off-cycle cases."""
    require_kind(u, Kind.ODD_UNICYCLIC)
    cd = _cycle_data(u)
    splits = _off_cycle_splits(u)
    on = cd.cycle_edges
    for ei in range(1, u.m + 1):
        for ej in range(1, u.m + 1):
            if ei == ej:
                continue
            dee = edge_edge_distance(u, ei, ej)
            both_on = ei in on and ej in on
            between = cycle_edge_pair_split(u, ei, ej).between if both_on else None
            wi = splits[ei - 1].without_cycle
            wj = splits[ej - 1].without_cycle
            for k in range(1, u.n + 1):
                s = vertex_edge_distance(u, k, ei) + vertex_edge_distance(u, k, ej)
                same = (s - dee) % 2 == 0
                if both_on:
                    if k in between and not same:
                        return ("a", ei, ej, k)
                    if k not in between and same:
                        return ("b", ei, ej, k)
                elif ei not in on and ej not in on:
                    if k in wi and k in wj and same:
                        return ("c", ei, ej, k)
                elif ei in on and k in wj and same:
                    return ("d", ei, ej, k)
    return None
