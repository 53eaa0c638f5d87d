"""``M M+`` for arbitrary connected graphs, and the parity-matrix identities of bipartite ones."""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .graph import Graph, GraphError, incidence_matrix, parity_matrix
from .linalg import VERTEX, RationalMatrix, pseudoinverse_oracle


class NotBipartiteError(GraphError):
    pass


def is_bipartite(g: Graph) -> bool:
    """BFS 2-colouring; an edge between equal colours witnesses an odd cycle."""
    colour = [None] * (g.n + 1)
    for s in range(1, g.n + 1):
        if colour[s] is not None:
            continue
        colour[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w, _ in g.adjacency[u]:
                if colour[w] is None:
                    colour[w] = 1 - colour[u]
                    q.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def predicted_mm_plus(g: Graph) -> RationalMatrix:
    """``I`` when ``g`` has an odd cycle, otherwise ``I - P/n`` with ``P`` the parity matrix."""
    g.require_connected()
    eye = RationalMatrix.identity(g.n, VERTEX)
    if not is_bipartite(g):
        return eye
    return eye - parity_matrix(g).scale(Fraction(1, g.n))


def verify_parity_identities(g: Graph, mplus: RationalMatrix | None = None) -> tuple[bool, bool]:
    """Check ``M+ P = 0`` and ``P^2 = n P`` exactly.

    ``M+`` comes from the rank-factorization oracle unless supplied.
    """
    g.require_connected()
    if not is_bipartite(g):
        raise NotBipartiteError("parity identities need a bipartite graph")
    p = parity_matrix(g)
    if mplus is None:
        mplus = pseudoinverse_oracle(incidence_matrix(g))
    return (mplus @ p).is_zero(), p @ p == p.scale(g.n)
