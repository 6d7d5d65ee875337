"""Shared graph fixtures and small independent oracles for the test suite."""

from __future__ import annotations

import itertools

import pytest

import coverpack as cp


def path(n: int) -> cp.Graph:
    return cp.build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> cp.Graph:
    return cp.build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> cp.Graph:
    return cp.build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves: int) -> cp.Graph:
    return cp.build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def spider(legs: int, length: int) -> cp.Graph:
    """Center 0 with `legs` pendant paths of the given length."""
    G = cp.build_graph(1, [])
    for _ in range(legs):
        G, _ = cp.attach_pendant_path(G, 0, length)
    return G


@pytest.fixture(scope="session")
def families():
    return {name: cp.parse_family(name) for name in ("K1", "K2", "K3", "P3", "P4", "C4")}


def brute_distance(G: cp.Graph, u: int, v: int) -> int | None:
    """Distance by breadth-first layers over the raw adjacency, kept separate
    from the library BFS so the two can disagree."""
    frontier = {u}
    seen = {u}
    d = 0
    while frontier:
        if v in frontier:
            return d
        nxt = set()
        for w in frontier:
            for y in G.adj(w):
                if y not in seen:
                    seen.add(y)
                    nxt.add(y)
        frontier = nxt
        d += 1
    return None


def brute_avoiding_paths(G: cp.Graph, u: int, X: set[int], r: int) -> dict[int, int]:
    """Shortest X-avoiding path lengths from u into X by exhaustive DFS over
    simple paths of length <= r; independent of the BFS implementation."""
    best: dict[int, int] = {}
    # layer expansion over the non-X vertices only; shortest avoiding paths
    # never revisit vertices, so plain layering is exact
    frontier = {u: 0}
    seen = {u}
    depth = 0
    while frontier and depth < r:
        depth += 1
        nxt = {}
        for v in frontier:
            for w in G.adj(v):
                if w in X:
                    if w not in best or depth < best[w]:
                        best[w] = depth
                elif w not in seen:
                    seen.add(w)
                    nxt[w] = depth
        frontier = nxt
    return {k: v for k, v in best.items() if v <= r}


def brute_iso(G1: cp.Graph, G2: cp.Graph) -> bool:
    """Isomorphism by trying every vertex bijection."""
    if G1.n != G2.n or G1.num_edges != G2.num_edges:
        return False
    e2 = set(G2.edges())
    for perm in itertools.permutations(range(G1.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in e2 for u, v in G1.edges()):
            return True
    return False


def random_graph(rng, n: int, p_edge: float) -> cp.Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p_edge]
    return cp.build_graph(n, edges)
