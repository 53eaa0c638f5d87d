"""Exact inverses for odd unicyclic graphs.

A connected graph with as many edges as vertices has exactly one cycle ``C``.
When ``|C|`` is odd the incidence matrix ``M`` is invertible, and ``M^-1``,
``Q^-1 = (M M^T)^-1`` and ``S^-1 = (M^T M)^-1`` have closed forms in terms of
the cycle, the trees hanging off it, and distance parities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import (
    Graph,
    Kind,
    WrongClassError,
    _cycle_data,
    component,
    edge_edge_distance,
    incidence_matrix,
    require_kind,
    vertex_edge_distance,
)
from .linalg import EDGE, VERTEX, MatrixError, RationalMatrix


@dataclass(frozen=True)
class OffCycleSplit:
    with_cycle: frozenset[int]
    without_cycle: frozenset[int]


@dataclass(frozen=True)
class CycleEdgePairSplit:
    between: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.between)


@dataclass(frozen=True)
class CycleDiagnostics:
    cycle_vertices: frozenset[int]
    cycle_edges: frozenset[int]
    pendant_edges: frozenset[int]


def _sign(d: int) -> int:
    return -1 if d & 1 else 1


def off_cycle_split(u: Graph, e: int) -> OffCycleSplit:
    """Split ``u - e`` into the part containing the cycle and the part that does not.

    For a cycle edge the second part is empty.
    """
    require_kind(u, Kind.ODD_UNICYCLIC)
    return _off_cycle_splits(u)[e - 1]


def _off_cycle_splits(u: Graph) -> tuple[OffCycleSplit, ...]:
    cached = u.__dict__.get("_off_cycle_splits")
    if cached is not None:
        return cached
    cd = _cycle_data(u)
    everything = frozenset(range(1, u.n + 1))
    out = []
    for k, (a, b) in enumerate(u.edges, start=1):
        if k in cd.cycle_edges:
            out.append(OffCycleSplit(everything, frozenset()))
            continue
        far = a if cd.projection[a].dist_to_cycle > cd.projection[b].dist_to_cycle else b
        away = component(u, far, (k,))
        out.append(OffCycleSplit(everything - away, away))
    out = tuple(out)
    u.__dict__["_off_cycle_splits"] = out
    return out


def inv_incidence(u: Graph) -> RationalMatrix:
    """``M^-1`` as an n x n edge-by-vertex matrix.

    A cycle edge row is ``(-1)^d(e, j) / 2`` everywhere.  A pendant-tree edge row
    is ``(-1)^d(e, j)`` on the vertices cut off from the cycle and 0 elsewhere.
    """
    require_kind(u, Kind.ODD_UNICYCLIC)
    cd = _cycle_data(u)
    splits = _off_cycle_splits(u)
    half = Fraction(1, 2)
    rows = []
    for k in range(1, u.m + 1):
        if k in cd.cycle_edges:
            rows.append([half * _sign(vertex_edge_distance(u, j, k)) for j in range(1, u.n + 1)])
        else:
            away = splits[k - 1].without_cycle
            rows.append(
                [_sign(vertex_edge_distance(u, j, k)) if j in away else 0 for j in range(1, u.n + 1)]
            )
    return RationalMatrix(rows, EDGE, VERTEX, shape=(u.m, u.n))


def inv_signless_laplacian(u: Graph) -> RationalMatrix:
    """``Q^-1`` from cycle length, projections onto the cycle and shared approach paths."""
    require_kind(u, Kind.ODD_UNICYCLIC)
    cd = _cycle_data(u)
    c = len(cd.cycle_vertices)
    proj = cd.projection
    paths = {v: frozenset(p.path_edges) for v, p in proj.items()}
    n = u.n
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            shared = len(paths[i] & paths[j])
            val = c - 2 * u.d(proj[i].i_star, proj[j].i_star) + 4 * shared
            out[i - 1][j - 1] = out[j - 1][i - 1] = Fraction(_sign(u.d(i, j)) * val, 4)
    return RationalMatrix(out, VERTEX, VERTEX, shape=(n, n))


def cycle_edge_pair_split(u: Graph, ei: int, ej: int) -> CycleEdgePairSplit:
    """Component of ``u - {ei, ej}`` containing the shortest path between the two cycle edges."""
    require_kind(u, Kind.ODD_UNICYCLIC)
    cd = _cycle_data(u)
    for e in (ei, ej):
        if e not in cd.cycle_edges:
            raise WrongClassError(f"e{e} is not on the cycle")
    if ei == ej:
        raise WrongClassError(f"cycle_edge_pair_split needs distinct edges, got e{ei} twice")
    _, a = min((u.d(x, y), x) for x in u.edge(ei) for y in u.edge(ej))
    return CycleEdgePairSplit(component(u, a, (ei, ej)))


def inv_edge_laplacian(u: Graph) -> RationalMatrix:
    """``S^-1`` as an n x n edge-by-edge matrix, by the five-case rule."""
    require_kind(u, Kind.ODD_UNICYCLIC)
    cd = _cycle_data(u)
    splits = _off_cycle_splits(u)
    n = u.n
    on = cd.cycle_edges
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        wi = splits[i - 1].without_cycle
        out[i - 1][i - 1] = Fraction(n, 4) if i in on else Fraction(len(wi))
        for j in range(i + 1, n + 1):
            wj = splits[j - 1].without_cycle
            s = _sign(edge_edge_distance(u, i, j))
            if i in on and j in on:
                val = Fraction(s * (2 * cycle_edge_pair_split(u, i, j).size - n), 4)
            elif i not in on and j not in on:
                val = Fraction(-s * len(wi & wj))
            else:
                val = Fraction(-s * (len(wi) + len(wj)), 2)
            out[i - 1][j - 1] = out[j - 1][i - 1] = val
    return RationalMatrix(out, EDGE, EDGE, shape=(n, n))


def cycle_diagnostics(u: Graph, qinv: RationalMatrix, sinv: RationalMatrix) -> CycleDiagnostics:
    """Read cycle vertices, cycle edges and pendant edges off the diagonals of ``Q^-1`` and ``S^-1``.

    Cycle vertices are where ``Q^-1`` attains its smallest diagonal value
    (``|C|/4``); cycle edges are where the ``S^-1`` diagonal equals ``n/4``;
    pendant edges are where it equals 1.  The last two rules can misfire: a
    cycle edge reads 1 when ``n = 4``, and an off-cycle edge cutting off exactly
    ``n/4`` vertices also reads ``n/4``.
    """
    n = u.n
    if qinv.shape != (n, n) or sinv.shape != (u.m, u.m):
        raise MatrixError(f"expected {n}x{n} and {u.m}x{u.m} matrices")
    qdiag = [qinv[i, i] for i in range(n)]
    sdiag = [sinv[i, i] for i in range(u.m)]
    low = min(qdiag)
    quarter_n = Fraction(n, 4)
    return CycleDiagnostics(
        frozenset(i + 1 for i, x in enumerate(qdiag) if x == low),
        frozenset(k + 1 for k, x in enumerate(sdiag) if x == quarter_n),
        frozenset(k + 1 for k, x in enumerate(sdiag) if x == 1),
    )


def unicyclic_mm_plus_check(u: Graph) -> bool:
    """``M M^-1 = I`` for the closed-form inverse."""
    m = incidence_matrix(u)
    return m @ inv_incidence(u) == RationalMatrix.identity(u.n, VERTEX)
