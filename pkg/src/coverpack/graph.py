"""Immutable simple graphs over dense integer ids with bounded-distance queries.

Vertex sets are plain sorted duplicate-free lists/tuples of ints throughout
the package.  Graphs are immutable after construction and every operation is
a pure function, so concurrent reads are safe.

Powers of a graph are never materialized; power adjacency is answered by
cap-bounded BFS (and cached per-vertex masks), since the p-th power of a
sparse graph is dense while all queries only ever need dist <= p.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import backend


class GraphError(ValueError):
    """Raised for structurally invalid graph constructions."""


class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted adjacency."""

    __slots__ = ("n", "_adj", "_indptr", "_nbrs", "_pow_cache", "_ball_cache")

    def __init__(self, n: int, adj: Sequence[Sequence[int]]):
        self.n = n
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        indptr = array("i", [0]) * (n + 1)
        total = 0
        for v in range(n):
            total += len(self._adj[v])
            indptr[v + 1] = total
        nbrs = array("i", [0]) * total if total else array("i")
        pos = 0
        for v in range(n):
            for u in self._adj[v]:
                nbrs[pos] = u
                pos += 1
        self._indptr = indptr
        self._nbrs = nbrs
        self._pow_cache: dict[int, list[int]] = {}
        self._ball_cache: dict[int, list[int]] = {}

    # -- basic queries ----------------------------------------------------
    def adj(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    @property
    def csr(self) -> tuple[array, array]:
        return self._indptr, self._nbrs

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self):
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    # -- cached mask helpers ----------------------------------------------
    def power_masks(self, p: int) -> list[int]:
        """Per-vertex bitmask of the other vertices at distance <= p."""
        masks = self._pow_cache.get(p)
        if masks is None:
            indptr, nbrs = self._indptr, self._nbrs
            if p <= 0:
                masks = [0] * self.n
            else:
                masks = []
                for v in range(self.n):
                    m = 0
                    for u in backend.ball_of(self.n, indptr, nbrs, v, p):
                        m |= 1 << u
                    masks.append(m & ~(1 << v))
            self._pow_cache[p] = masks
        return masks

    def ball_masks(self, r: int) -> list[int]:
        """Per-vertex bitmask of the closed distance-r ball (includes v)."""
        masks = self._ball_cache.get(r)
        if masks is None:
            masks = [m | (1 << v) for v, m in enumerate(self.power_masks(r))] if r > 0 else [
                1 << v for v in range(self.n)
            ]
            self._ball_cache[r] = masks
        return masks


@dataclass(frozen=True)
class DistanceMap:
    """BFS distances from a source set, truncated at ``cap`` (None = unbounded).

    ``dist[v]`` is ``None`` for vertices farther than the cap (or unreachable).
    """

    source: tuple[int, ...]
    cap: int | None
    dist: tuple[int | None, ...]

    def distance(self, v: int) -> int | None:
        return self.dist[v]


def vertex_set(ids: Iterable[int], n: int | None = None) -> list[int]:
    """Normalize to a sorted duplicate-free id list, range-checked against n."""
    out = sorted(set(int(v) for v in ids))
    if out and (out[0] < 0 or (n is not None and out[-1] >= n)):
        raise GraphError(f"vertex id out of range: {out[0] if out[0] < 0 else out[-1]}")
    return out


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; duplicate pairs collapse."""
    if not isinstance(n, int) or n < 1:
        raise GraphError(f"graphs need at least one vertex, got n={n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"loop edge at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, adj)


def distances(G: Graph, source: Iterable[int], cap: int | None = None) -> DistanceMap:
    """Breadth-first distances from a nonempty source set, truncated at cap."""
    src = tuple(vertex_set(source, G.n))
    if not src:
        raise GraphError("distance source set must be nonempty")
    indptr, nbrs = G.csr
    raw = backend.bfs_limited(G.n, indptr, nbrs, src, -1 if cap is None else cap)
    return DistanceMap(src, cap, tuple(d if d >= 0 else None for d in raw))


def ball(G: Graph, D: Iterable[int], r: int) -> list[int]:
    """The set of vertices at distance <= r from D (r=0 returns D itself)."""
    Ds = vertex_set(D, G.n)
    if not Ds:
        return []
    if r == 0:
        return Ds
    indptr, nbrs = G.csr
    return list(backend.ball_multi(G.n, indptr, nbrs, Ds, r))


def set_distance(G: Graph, A: Iterable[int], B: Iterable[int], cap: int | None = None) -> int | None:
    """Minimum distance between two vertex sets, or None if above cap/unreachable."""
    As = vertex_set(A, G.n)
    Bs = vertex_set(B, G.n)
    if not As or not Bs:
        return None
    dm = distances(G, As, cap=cap)
    best = None
    for b in Bs:
        d = dm.dist[b]
        if d is not None and (best is None or d < best):
            best = d
    return best


def induced_subgraph(G: Graph, Y: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on Y over re-labeled dense ids.

    Returns ``(H, old_ids)`` where ``old_ids[new] = old``; new ids follow the
    ascending order of Y, so the mapping is a sorted bijection.
    """
    Ys = vertex_set(Y, G.n)
    if not Ys:
        raise GraphError("induced subgraph needs a nonempty vertex set")
    new_of = {v: i for i, v in enumerate(Ys)}
    adj = [[new_of[u] for u in G.adj(v) if u in new_of] for v in Ys]
    return Graph(len(Ys), adj), tuple(Ys)


def q_subdivision(G: Graph, q: int) -> Graph:
    """Replace every edge by a path of length exactly q (q=1 is the identity).

    Original vertices keep their ids; internal path vertices are appended in
    sorted edge order, so the construction is deterministic.
    """
    if q < 1:
        raise GraphError("subdivision length must be positive")
    if q == 1:
        return Graph(G.n, G._adj)
    edges = G.edges()
    n = G.n + (q - 1) * len(edges)
    adj: list[list[int]] = [[] for _ in range(n)]
    nxt = G.n
    for u, v in edges:
        chain = [u] + list(range(nxt, nxt + q - 1)) + [v]
        nxt += q - 1
        for a, b in zip(chain, chain[1:]):
            adj[a].append(b)
            adj[b].append(a)
    return Graph(n, adj)


def attach_pendant_path(G: Graph, a: int, length: int) -> tuple[Graph, int]:
    """Attach a path of exactly ``length`` edges at ``a``; returns the far end."""
    if not (0 <= a < G.n):
        raise GraphError(f"vertex {a} out of range")
    if length < 1:
        raise GraphError("pendant path length must be positive")
    n = G.n + length
    adj = [list(G.adj(v)) for v in range(G.n)] + [[] for _ in range(length)]
    chain = [a] + list(range(G.n, n))
    for x, y in zip(chain, chain[1:]):
        adj[x].append(y)
        adj[y].append(x)
    return Graph(n, adj), n - 1


def disjoint_union(G1: Graph, G2: Graph) -> Graph:
    """Disjoint union; G2's ids are shifted up by G1.n."""
    adj = [list(G1.adj(v)) for v in range(G1.n)]
    adj += [[u + G1.n for u in G2.adj(v)] for v in range(G2.n)]
    return Graph(G1.n + G2.n, adj)


def is_connected(G: Graph) -> bool:
    dm = distances(G, [0])
    return all(d is not None for d in dm.dist)


class GraphBuilder:
    """Mutable adjacency accumulator for assembling gadget graphs."""

    def __init__(self, base: Graph | None = None):
        self._adj: list[set[int]] = [set(base.adj(v)) for v in range(base.n)] if base else []

    @property
    def n(self) -> int:
        return len(self._adj)

    def add_vertex(self) -> int:
        self._adj.append(set())
        return len(self._adj) - 1

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise GraphError(f"loop edge at vertex {u}")
        self._adj[u].add(v)
        self._adj[v].add(u)

    def add_path(self, a: int, b: int, length: int) -> list[int]:
        """Connect two existing vertices by a path of exactly ``length`` edges;
        returns the internal vertices (empty for length 1)."""
        if length < 1:
            raise GraphError("path length must be positive")
        inner = [self.add_vertex() for _ in range(length - 1)]
        chain = [a] + inner + [b]
        for x, y in zip(chain, chain[1:]):
            self.add_edge(x, y)
        return inner

    def build(self) -> Graph:
        return Graph(len(self._adj), self._adj)
