"""Reproducible trees and odd unicyclic graphs for property testing.

Randomness comes from SplitMix64, defined by the recurrence::

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output z ^ (z >> 31)

Bounded draws use rejection sampling so they are unbiased.  The same seed
produces the same graphs in any implementation that follows these rules.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import Graph, build_graph

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        """Uniform integer in ``[0, k)``."""
        if k <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % k

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def shuffle(self, items: list) -> None:
        # Fisher-Yates from the back
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def prufer_decode(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Edges of the labeled tree on ``1..n`` with Pruefer sequence ``seq``, in decoding order."""
    if n == 1:
        return []
    if len(seq) != n - 2:
        raise ValueError(f"a Pruefer sequence for n={n} has length {n - 2}")
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    a, b = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((a, b))
    return edges


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labeled tree on ``n`` vertices."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = SplitMix64(seed)
    seq = [rng.between(1, n) for _ in range(n - 2)]
    return build_graph(n, prufer_decode(seq, n))


MAX_ENUMERATION_N = 8


def enumerate_trees(n: int) -> Iterator[Graph]:
    """Every labeled tree on ``n`` vertices exactly once (``n**(n-2)`` of them)."""
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise ValueError(f"exhaustive enumeration supports 1 <= n <= {MAX_ENUMERATION_N}, got {n}")
    if n == 1:
        yield build_graph(1, [])
        return
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        yield build_graph(n, prufer_decode(seq, n))


def random_odd_unicyclic(n: int, cycle_len: int, seed: int) -> Graph:
    """An odd cycle of the given length with random trees grown on it.

    Each non-cycle vertex attaches to a uniformly chosen earlier vertex; labels
    and edge order are then shuffled.  The result is not uniform over odd
    unicyclic graphs.
    """
    if cycle_len % 2 == 0 or not 3 <= cycle_len <= n:
        raise ValueError(f"cycle length must be odd with 3 <= cycle_len <= n, got cycle_len={cycle_len}, n={n}")
    rng = SplitMix64(seed)
    edges = [(i, (i + 1) % cycle_len) for i in range(cycle_len)]
    for v in range(cycle_len, n):
        edges.append((rng.below(v), v))
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    rng.shuffle(edges)
    return build_graph(n, [(labels[a], labels[b]) for a, b in edges])


def random_connected(n: int, extra_edges: int, seed: int, bipartite: bool = False) -> Graph:
    """Random spanning tree plus up to ``extra_edges`` additional distinct edges.

    With ``bipartite=True`` extra edges only join vertices at odd tree distance,
    so the result stays bipartite.
    """
    rng = SplitMix64(seed)
    tree = random_tree(n, rng.next_u64())
    edges = set(tree.edges)
    missing = [
        (a, b)
        for a in range(1, n + 1)
        for b in range(a + 1, n + 1)
        if (a, b) not in edges and (not bipartite or tree.d(a, b) % 2 == 1)
    ]
    rng.shuffle(missing)
    out = sorted(edges) + missing[:extra_edges]
    rng.shuffle(out)
    return build_graph(n, out)


def instance_seed(seed: int, index: int) -> int:
    """Seed of the ``index``-th instance in a stream; one SplitMix64 step from a mixed state."""
    return SplitMix64((seed + index * GOLDEN_GAMMA) & MASK64).next_u64()


@dataclass(frozen=True)
class GenSpec:
    kind: str  # "tree" or "unicyclic"
    n: int
    seed: int
    count: int = 1
    cycle_len: int | None = None

    def __post_init__(self):
        if self.kind not in ("tree", "unicyclic"):
            raise ValueError(f"unknown generator kind {self.kind!r}; use 'tree' or 'unicyclic'")
        if self.n < 1 or self.count < 1:
            raise ValueError("n and count must be positive")
        if self.kind == "unicyclic":
            c = self.cycle_len
            if c is None or c % 2 == 0 or not 3 <= c <= self.n:
                raise ValueError(f"unicyclic needs an odd cycle length in 3..n, got {c}")

    def graphs(self) -> Iterator[Graph]:
        for k in range(self.count):
            s = instance_seed(self.seed, k)
            if self.kind == "tree":
                yield random_tree(self.n, s)
            else:
                yield random_odd_unicyclic(self.n, self.cycle_len, s)

    @classmethod
    def parse(cls, tokens: Sequence[str]) -> "GenSpec":
        """Parse ``KIND key=value ...`` with keys ``n``, ``cycle``, ``count``, ``seed``."""
        if not tokens:
            raise ValueError("generator spec needs a kind")
        kind, *rest = tokens
        fields = {}
        for tok in rest:
            key, sep, val = tok.partition("=")
            if not sep or key not in ("n", "cycle", "count", "seed"):
                raise ValueError(f"bad generator field {tok!r}")
            try:
                fields[key] = int(val, 0)
            except ValueError:
                raise ValueError(f"generator field {key} needs an integer, got {val!r}") from None
        if "n" not in fields:
            raise ValueError("generator spec needs n=N")
        return cls(
            kind=kind,
            n=fields["n"],
            seed=fields.get("seed", 0),
            count=fields.get("count", 1),
            cycle_len=fields.get("cycle"),
        )
