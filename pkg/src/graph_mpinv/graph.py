"""Simple undirected graphs with 1-based vertex labels and an ordered edge list.

Vertices are ``1..n`` and edges are addressed by their 1-based position in the
edge list (``e_1 .. e_m``).  Every edge is stored with its smaller endpoint
first; for trees the larger endpoint decides which side of the edge is the head.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .linalg import EDGE, VERTEX, RationalMatrix


class GraphError(ValueError):
    """Base class for invalid graph input."""


class EdgeError(GraphError):
    """An invalid edge; ``edge_index`` is its 1-based input position."""

    def __init__(self, edge_index: int, message: str):
        super().__init__(message)
        self.edge_index = edge_index


class SelfLoopError(EdgeError):
    pass


class DuplicateEdgeError(EdgeError):
    pass


class EndpointRangeError(EdgeError):
    pass


class DisconnectedGraphError(GraphError):
    def __init__(self, unreachable: int, source: int = 1):
        super().__init__(f"graph is disconnected: vertex {unreachable} is unreachable from {source}")
        self.unreachable = unreachable


class WrongClassError(GraphError):
    """An operation was given a graph outside the class it is defined for."""


class GraphFormatError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge(self, k: int) -> tuple[int, int]:
        """Endpoints ``(l_k, m_k)`` of the 1-based edge ``k``."""
        if not 1 <= k <= self.m:
            raise IndexError(f"edge index {k} outside 1..{self.m}")
        return self.edges[k - 1]

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``adjacency[v]`` lists ``(neighbour, edge index)``; index 0 is unused."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n + 1)]
        for k, (a, b) in enumerate(self.edges, start=1):
            adj[a].append((b, k))
            adj[b].append((a, k))
        return tuple(tuple(sorted(nb)) for nb in adj)

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(k for _, k in self.adjacency[v]))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def _bfs(self) -> tuple[tuple, tuple]:
        # dist[s][v] (None when unreachable) and parent edge of v in the BFS tree from s
        dist: list = [None]
        parent: list = [None]
        for s in range(1, self.n + 1):
            d = [None] * (self.n + 1)
            p = [0] * (self.n + 1)
            d[s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                for w, k in self.adjacency[u]:
                    if d[w] is None:
                        d[w] = d[u] + 1
                        p[w] = k
                        q.append(w)
            dist.append(tuple(d))
            parent.append(tuple(p))
        return tuple(dist), tuple(parent)

    @cached_property
    def is_connected(self) -> bool:
        return self.n == 0 or all(x is not None for x in self._bfs[0][1][1:])

    def require_connected(self) -> None:
        if not self.is_connected:
            row = self._bfs[0][1]
            raise DisconnectedGraphError(next(v for v in range(1, self.n + 1) if row[v] is None))

    @cached_property
    def dist(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs hop counts, 1-based on both axes (row and column 0 unused)."""
        self.require_connected()
        return self._bfs[0]

    def d(self, i: int, j: int) -> int:
        return self.dist[i][j]

    def path_edges(self, i: int, j: int) -> tuple[int, ...]:
        """Edge indices of the BFS shortest path from ``i`` to ``j``, listed from ``j`` back to ``i``."""
        self.require_connected()
        parent = self._bfs[1][i]
        out = []
        v = j
        while v != i:
            k = parent[v]
            out.append(k)
            a, b = self.edges[k - 1]
            v = a if b == v else b
        return tuple(out)

    @cached_property
    def graph_class(self) -> "GraphClass":
        return _classify(self)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [f"{a} {b}" for a, b in self.edges]
        return "\n".join(lines) + "\n"


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate and normalize an edge list; edge ``k`` is the ``k``-th input pair."""
    if n < 1:
        raise GraphError(f"vertex count must be at least 1, got {n}")
    seen: dict[tuple[int, int], int] = {}
    out = []
    for k, pair in enumerate(edges, start=1):
        u, v = pair
        u, v = int(u), int(v)
        for x in (u, v):
            if not 1 <= x <= n:
                raise EndpointRangeError(k, f"edge e{k}={{{u},{v}}}: endpoint {x} outside 1..{n}")
        if u == v:
            raise SelfLoopError(k, f"edge e{k}={{{u},{v}}} is a self-loop")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(k, f"edge e{k}={{{u},{v}}} duplicates e{seen[key]}")
        seen[key] = k
        out.append(key)
    return Graph(n, tuple(out))


class Kind(str, enum.Enum):
    TREE = "tree"
    ODD_UNICYCLIC = "odd-unicyclic"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class GraphClass:
    kind: Kind
    detail: str


def classify(g: Graph) -> GraphClass:
    return g.graph_class


def _classify(g: Graph) -> GraphClass:
    if not g.is_connected:
        return GraphClass(Kind.UNSUPPORTED, "disconnected")
    if g.m == g.n - 1:
        return GraphClass(Kind.TREE, f"n={g.n} m={g.m}")
    if g.m > g.n:
        return GraphClass(Kind.UNSUPPORTED, "m > n")
    cycle = _prune_leaves(g)
    if len(cycle) % 2 == 0:
        return GraphClass(Kind.UNSUPPORTED, "even cycle")
    return GraphClass(Kind.ODD_UNICYCLIC, f"n={g.n} cycle={len(cycle)}")


def require_kind(g: Graph, kind: Kind) -> None:
    gc = g.graph_class
    if gc.kind is not kind:
        raise WrongClassError(f"expected a {kind.value} graph, got {gc.kind.value} ({gc.detail})")


def distances_from(g: Graph, v: int) -> tuple[int, ...]:
    """Hop counts ``d(v, 1), ..., d(v, n)``."""
    g.require_connected()
    return g.dist[v][1:]


def vertex_edge_distance(g: Graph, j: int, e: int) -> int:
    a, b = g.edge(e)
    row = g.dist[j]
    return min(row[a], row[b])


def edge_edge_distance(g: Graph, ei: int, ek: int) -> int:
    a, b = g.edge(ei)
    return min(vertex_edge_distance(g, a, ek), vertex_edge_distance(g, b, ek))


def component(g: Graph, start: int, removed: Iterable[int] = ()) -> frozenset[int]:
    """Vertices reachable from ``start`` once the edges in ``removed`` are deleted."""
    removed = set(removed)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w, k in g.adjacency[u]:
            if k not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def split_tree_at_edge(t: Graph, e: int) -> tuple[frozenset[int], frozenset[int]]:
    """``(head, tail)``: the components of ``t - e`` holding the larger and smaller endpoint."""
    require_kind(t, Kind.TREE)
    lo, hi = t.edge(e)
    head = component(t, hi, (e,))
    tail = frozenset(range(1, t.n + 1)) - head
    return head, tail


@dataclass(frozen=True)
class Projection:
    i_star: int
    dist_to_cycle: int
    path_edges: tuple[int, ...]  # from the vertex toward i_star


@dataclass(frozen=True)
class CycleData:
    cycle_vertices: tuple[int, ...]
    cycle_edges: frozenset[int]
    projection: dict[int, Projection] = field(hash=False)

    def __len__(self) -> int:
        return len(self.cycle_vertices)


def _prune_leaves(g: Graph) -> frozenset[int]:
    # vertices left after repeatedly stripping degree-1 vertices
    deg = [len(a) for a in g.adjacency]
    alive = [True] * (g.n + 1)
    stack = [v for v in range(1, g.n + 1) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w, _ in g.adjacency[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return frozenset(v for v in range(1, g.n + 1) if alive[v])


def find_cycle(g: Graph) -> CycleData:
    require_kind(g, Kind.ODD_UNICYCLIC)
    return _cycle_data(g)


_CYCLE_CACHE_ATTR = "_cycle_data"


def _cycle_data(g: Graph) -> CycleData:
    cached = g.__dict__.get(_CYCLE_CACHE_ATTR)
    if cached is not None:
        return cached
    on_cycle = _prune_leaves(g)
    start = min(on_cycle)
    nbrs = sorted(w for w, _ in g.adjacency[start] if w in on_cycle)
    order = [start, nbrs[0]]
    while True:
        prev, cur = order[-2], order[-1]
        nxt = next(w for w, _ in g.adjacency[cur] if w in on_cycle and w != prev)
        if nxt == start:
            break
        order.append(nxt)
    cycle_edges = frozenset(
        k for k, (a, b) in enumerate(g.edges, start=1) if a in on_cycle and b in on_cycle
    )

    # multi-source BFS outward from the cycle along non-cycle edges
    proj: dict[int, Projection] = {v: Projection(v, 0, ()) for v in on_cycle}
    q = deque(sorted(on_cycle))
    while q:
        u = q.popleft()
        pu = proj[u]
        for w, k in g.adjacency[u]:
            if w not in proj:
                proj[w] = Projection(pu.i_star, pu.dist_to_cycle + 1, (k,) + pu.path_edges)
                q.append(w)
    data = CycleData(tuple(order), cycle_edges, dict(sorted(proj.items())))
    g.__dict__[_CYCLE_CACHE_ATTR] = data
    return data


def incidence_matrix(g: Graph) -> RationalMatrix:
    rows = [[0] * g.m for _ in range(g.n)]
    for k, (a, b) in enumerate(g.edges):
        rows[a - 1][k] = 1
        rows[b - 1][k] = 1
    return RationalMatrix(rows, VERTEX, EDGE, shape=(g.n, g.m))


def parity_matrix(g: Graph) -> RationalMatrix:
    """``(-1)^d(i,j)`` for all vertex pairs."""
    dist = g.dist
    return RationalMatrix(
        ([-1 if dist[i][j] & 1 else 1 for j in range(1, g.n + 1)] for i in range(1, g.n + 1)),
        VERTEX,
        VERTEX,
        shape=(g.n, g.n),
    )


def signless_laplacian(g: Graph) -> RationalMatrix:
    m = incidence_matrix(g)
    return m @ m.T


def edge_laplacian(g: Graph) -> RationalMatrix:
    m = incidence_matrix(g)
    return m.T @ m


# text format


def parse_graph(text: str) -> tuple[Graph, dict[str, int] | None]:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``; ``#`` lines are comments.

    Labels that are not exactly integers in ``1..n`` are remapped to ``1..k`` in
    sorted order (numerically when all labels are integers).  The second element
    of the result is that mapping, or None when no remapping was needed.
    """
    header = None
    pairs: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise GraphFormatError(lineno, f"expected two fields, got {len(toks)}")
        if header is None:
            try:
                header = (int(toks[0]), int(toks[1]))
            except ValueError:
                raise GraphFormatError(lineno, "header must be two integers 'n m'") from None
            if header[0] < 1 or header[1] < 0:
                raise GraphFormatError(lineno, "header needs n >= 1 and m >= 0")
            continue
        pairs.append((lineno, toks[0], toks[1]))
    if header is None:
        raise GraphFormatError(1, "missing header line 'n m'")
    n, m = header
    if len(pairs) != m:
        where = pairs[m][0] if len(pairs) > m else len(text.splitlines()) + 1
        raise GraphFormatError(where, f"header announces {m} edges, found {len(pairs)}")

    labels = {tok for _, a, b in pairs for tok in (a, b)}
    mapping = None

    def as_int(tok):
        try:
            return int(tok)
        except ValueError:
            return None

    if not all(as_int(t) is not None and 1 <= as_int(t) <= n and str(as_int(t)) == t for t in labels):
        if all(as_int(t) is not None for t in labels):
            ordered = sorted(labels, key=lambda t: (as_int(t), t))
        else:
            ordered = sorted(labels)
        if len(ordered) > n:
            raise GraphFormatError(pairs[0][0], f"{len(ordered)} distinct labels exceed n={n}")
        mapping = {lab: i for i, lab in enumerate(ordered, start=1)}

    edges = []
    for lineno, a, b in pairs:
        edges.append((mapping[a], mapping[b]) if mapping else (int(a), int(b)))
    try:
        g = build_graph(n, edges)
    except EdgeError as exc:
        raise GraphFormatError(pairs[exc.edge_index - 1][0], str(exc)) from None
    return g, mapping
