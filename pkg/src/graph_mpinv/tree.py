"""Closed-form Moore-Penrose inverses for trees.

For a tree on ``n`` vertices, deleting edge ``e = {l, m}`` (``l < m``) leaves a
head component holding ``m`` and a tail component holding ``l``.  The sizes of
those components, together with vertex/edge distance parities, determine the
pseudoinverses of the incidence matrix ``M``, the signless Laplacian
``Q = M M^T`` and the signless edge-Laplacian ``S = M^T M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import (
    Graph,
    Kind,
    WrongClassError,
    component,
    edge_edge_distance,
    parity_matrix,
    require_kind,
    split_tree_at_edge,
    vertex_edge_distance,
)
from .linalg import EDGE, VERTEX, RationalMatrix


@dataclass(frozen=True)
class EdgeSplit:
    head_size: int
    tail_size: int


@dataclass(frozen=True)
class IncidentPartition:
    eh: frozenset[int]
    et: frozenset[int]


@dataclass(frozen=True)
class EdgePairSplit:
    middle: frozenset[int]
    side_i: frozenset[int]
    side_j: frozenset[int]


def _sign(d: int) -> int:
    return -1 if d & 1 else 1


def head_sets(t: Graph) -> tuple[frozenset[int], ...]:
    """Head component of every edge, indexed from 0 (``e_1`` first)."""
    cached = t.__dict__.get("_head_sets")
    if cached is None:
        require_kind(t, Kind.TREE)
        cached = tuple(split_tree_at_edge(t, k)[0] for k in range(1, t.m + 1))
        t.__dict__["_head_sets"] = cached
    return cached


def edge_split_sizes(t: Graph) -> tuple[EdgeSplit, ...]:
    return tuple(EdgeSplit(len(h), t.n - len(h)) for h in head_sets(t))


def incident_partition(t: Graph, i: int) -> IncidentPartition:
    heads = head_sets(t)
    eh = frozenset(k for k in t.incident_edges(i) if i in heads[k - 1])
    return IncidentPartition(eh, frozenset(t.incident_edges(i)) - eh)


def mp_incidence(t: Graph) -> RationalMatrix:
    """``M+`` of a tree as an (n-1) x n edge-by-vertex matrix.

    Row ``e``: a vertex in the head of ``e`` gets the tail size, a vertex in the
    tail gets the head size, each signed by the parity of its distance to ``e``
    and divided by ``n``.
    """
    heads = head_sets(t)
    n = t.n
    rows = []
    for k, head in enumerate(heads, start=1):
        hs = len(head)
        ts = n - hs
        rows.append(
            [
                Fraction(_sign(vertex_edge_distance(t, j, k)) * (ts if j in head else hs), n)
                for j in range(1, n + 1)
            ]
        )
    return RationalMatrix(rows, EDGE, VERTEX, shape=(n - 1, n))


def mp_signless_laplacian(t: Graph) -> RationalMatrix:
    """``Q+`` of a tree, entry by entry from component sizes.

    Each edge contributes tail-size squared when both vertices sit in its head,
    head-size squared when both sit in its tail, and minus the product of the
    sizes when it lies on the path between them.
    """
    heads = head_sets(t)
    n = t.n
    sizes = [(len(h), n - len(h)) for h in heads]
    n2 = n * n
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            on_path = set(t.path_edges(i, j))
            total = 0
            for k, head in enumerate(heads, start=1):
                hs, ts = sizes[k - 1]
                if k in on_path:
                    total -= hs * ts
                elif i in head:
                    total += ts * ts
                else:
                    total += hs * hs
            out[i - 1][j - 1] = out[j - 1][i - 1] = Fraction(_sign(t.d(i, j)) * total, n2)
    return RationalMatrix(out, VERTEX, VERTEX, shape=(n, n))


def edge_pair_split(t: Graph, ei: int, ej: int) -> EdgePairSplit:
    """The three components of ``t - {ei, ej}``.

    ``middle`` touches both edges, ``side_i`` only ``ei``, ``side_j`` only ``ej``.
    """
    require_kind(t, Kind.TREE)
    if ei == ej:
        raise WrongClassError(f"edge_pair_split needs distinct edges, got e{ei} twice")
    removed = (ei, ej)
    ends_i, ends_j = t.edge(ei), t.edge(ej)
    comps = {}
    for v in ends_i + ends_j:
        c = component(t, v, removed)
        comps[c] = comps.get(c, set()) | {v}
    middle = side_i = side_j = frozenset()
    for c in comps:
        touches_i = any(v in c for v in ends_i)
        touches_j = any(v in c for v in ends_j)
        if touches_i and touches_j:
            middle = c
        elif touches_i:
            side_i = c
        else:
            side_j = c
    return EdgePairSplit(middle, side_i, side_j)


def mp_edge_laplacian(t: Graph) -> RationalMatrix:
    """``S+`` of a tree, an (n-1) x (n-1) edge-by-edge matrix."""
    heads = head_sets(t)
    n = t.n
    m = t.m
    out = [[Fraction(0)] * m for _ in range(m)]
    for i in range(1, m + 1):
        hs = len(heads[i - 1])
        out[i - 1][i - 1] = Fraction(hs * (n - hs), n)
        for j in range(i + 1, m + 1):
            split = edge_pair_split(t, i, j)
            val = Fraction(
                -_sign(edge_edge_distance(t, i, j)) * len(split.side_i) * len(split.side_j), n
            )
            out[i - 1][j - 1] = out[j - 1][i - 1] = val
    return RationalMatrix(out, EDGE, EDGE, shape=(m, m))


def tree_mm_plus(t: Graph) -> RationalMatrix:
    """``M M+ = I - P/n`` with ``P`` the distance-parity matrix."""
    require_kind(t, Kind.TREE)
    return RationalMatrix.identity(t.n, VERTEX) - parity_matrix(t).scale(Fraction(1, t.n))
