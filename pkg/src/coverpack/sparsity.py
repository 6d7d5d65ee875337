"""Structural sparsity toolkit: orders, weak reachability, projections,
path closures, close sets, and a practical wide-set extractor.

All tie-breaks go to the least vertex id so every routine is deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import backend
from .graph import Graph, GraphError, distances, vertex_set


@dataclass(frozen=True)
class LinearOrder:
    """Bijection vertex <-> rank 0..n-1 (rank 0 is the least element)."""

    position: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.position)

    def by_rank(self) -> list[int]:
        out = [0] * self.n
        for v, r in enumerate(self.position):
            out[r] = v
        return out

    @staticmethod
    def identity(n: int) -> "LinearOrder":
        return LinearOrder(tuple(range(n)))

    @staticmethod
    def from_sequence(seq) -> "LinearOrder":
        pos = [0] * len(seq)
        for rank, v in enumerate(seq):
            pos[v] = rank
        return LinearOrder(tuple(pos))


def degeneracy_order(G: Graph) -> LinearOrder:
    """Min-degree peeling (ties: least id); peeled vertices get the high ranks.

    Every vertex then has at most degeneracy-many neighbors of smaller rank.
    """
    n = G.n
    alive = [True] * n
    deg = [G.degree(v) for v in range(n)]
    pos = [0] * n
    for step in range(n):
        best = -1
        for v in range(n):
            if alive[v] and (best < 0 or deg[v] < deg[best]):
                best = v
        alive[best] = False
        pos[best] = n - 1 - step
        for u in G.adj(best):
            if alive[u]:
                deg[u] -= 1
    return LinearOrder(tuple(pos))


def weak_reach_all(G: Graph, L: LinearOrder, k: int) -> list[list[int]]:
    """For every v, the set of vertices weakly k-accessible from v in L.

    u is weakly k-accessible from v when u <=_L v and some path v..u of
    length <= k stays at ranks >= rank(u); computed by one rank-floored BFS
    per candidate u.
    """
    n = G.n
    indptr, nbrs = G.csr
    pos = L.position
    reach: list[list[int]] = [[] for _ in range(n)]
    order = sorted(range(n), key=lambda v: pos[v])
    for u in order:
        seen = {u: 0}
        frontier = [u]
        depth = 0
        reach[u].append(u)
        while frontier and depth < k:
            depth += 1
            nxt = []
            for w in frontier:
                for i in range(indptr[w], indptr[w + 1]):
                    y = nbrs[i]
                    if pos[y] >= pos[u] and y not in seen:
                        seen[y] = depth
                        nxt.append(y)
                        if pos[y] > pos[u]:
                            reach[y].append(u)
            frontier = nxt
    for v in range(n):
        reach[v].sort()
    return reach


def weak_reach(G: Graph, L: LinearOrder, k: int, v: int) -> list[int]:
    if not (0 <= v < G.n):
        raise GraphError(f"vertex {v} out of range")
    return weak_reach_all(G, L, k)[v]


def wcol_of_order(G: Graph, L: LinearOrder, k: int) -> int:
    return max(len(s) for s in weak_reach_all(G, L, k))


def wcol_exact(G: Graph, k: int, n_limit: int = 8) -> int:
    """Exact weak k-coloring number by trying all orders; test-scale only."""
    if G.n > n_limit:
        raise GraphError(f"exact wcol limited to n <= {n_limit}")
    best = G.n
    for perm in itertools.permutations(range(G.n)):
        best = min(best, wcol_of_order(G, LinearOrder.from_sequence(perm), k))
    return best


# ---------------------------------------------------------------------------
# projections


@dataclass(frozen=True)
class ProjectionProfile:
    """For a vertex u outside X: the shortest X-avoiding path lengths into X,
    truncated at the radius; vertices of X absent from ``values`` are beyond."""

    base: tuple[int, ...]
    radius: int
    values: tuple[tuple[int, int], ...]  # (target vertex, length), sorted

    def support(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.values)

    def as_dict(self) -> dict[int, int]:
        return dict(self.values)


def _blocked_mask(n: int, X) -> bytearray:
    mask = bytearray(n)
    for v in X:
        mask[v] = 1
    return mask


def projection_profile(G: Graph, X, u: int, r: int) -> ProjectionProfile:
    Xs = vertex_set(X, G.n)
    if u in set(Xs):
        raise GraphError(f"projection source {u} lies in the base set")
    indptr, nbrs = G.csr
    if not Xs:
        return ProjectionProfile((), r, ())
    _, entry = backend.bfs_avoiding(G.n, indptr, nbrs, u, bytes(_blocked_mask(G.n, Xs)), r)
    values = tuple((x, entry[x]) for x in Xs if entry[x] >= 0)
    return ProjectionProfile(tuple(Xs), r, values)


def partition_by_profile(G: Graph, X, A, r: int) -> list[list[int]]:
    """Group A by exact equality of profiles toward X; classes ordered by
    least member, members ascending."""
    As = vertex_set(A, G.n)
    Xset = set(vertex_set(X, G.n))
    if Xset & set(As):
        raise GraphError("profile partition requires A disjoint from X")
    groups: dict[tuple, list[int]] = {}
    for u in As:
        key = projection_profile(G, X, u, r).values
        groups.setdefault(key, []).append(u)
    return sorted(groups.values(), key=lambda c: c[0])


# ---------------------------------------------------------------------------
# path closure


def path_closure(G: Graph, X, r: int) -> list[int]:
    """Superset of X preserving every distance <= r between X-vertices.

    Adds one shortest path per qualifying pair, backtracked through least-id
    parents of a BFS from the smaller endpoint.
    """
    Xs = vertex_set(X, G.n)
    if not Xs:
        raise GraphError("path closure needs a nonempty set")
    if len(Xs) == G.n:
        return Xs
    dist_of: dict[int, tuple] = {}
    for u in Xs:
        dist_of[u] = distances(G, [u], cap=r).dist
    closure = set(Xs)
    for i, u in enumerate(Xs):
        du = dist_of[u]
        for v in Xs[i + 1 :]:
            d = du[v]
            if d is None or d <= 1:
                continue
            cur = v
            while cur != u:
                want = du[cur] - 1
                cur = min(w for w in G.adj(cur) if du[w] == want)
                closure.add(cur)
    return sorted(closure)


# ---------------------------------------------------------------------------
# close sets


@dataclass(frozen=True)
class CloseSetResult:
    members: tuple[int, ...]
    threshold_met: bool
    added: int


def close_set(G: Graph, X, r: int, t: int, budget: int) -> CloseSetResult:
    """Grow X until every outside vertex projects onto at most t members.

    Greedy: repeatedly absorb the outside vertex with the largest projection
    (ties: least id), stopping at the size budget.  Budget exhaustion is
    reported, not raised; callers needing the threshold must check the flag.
    """
    Xs = vertex_set(X, G.n)
    if not Xs:
        raise GraphError("close set needs a nonempty base")
    if budget < 1:
        raise GraphError("close-set budget must be positive")
    n = G.n
    indptr, nbrs = G.csr
    members = set(Xs)
    blocked = _blocked_mask(n, members)

    def proj_size(u: int) -> int:
        _, entry = backend.bfs_avoiding(n, indptr, nbrs, u, bytes(blocked), r)
        count = 0
        for x in members:
            if entry[x] >= 0:
                count += 1
        return count

    sizes = {u: proj_size(u) for u in range(n) if u not in members}
    added = 0
    while True:
        worst = None
        for u in sorted(sizes):
            if sizes[u] > t and (worst is None or sizes[u] > sizes[worst]):
                worst = u
        if worst is None:
            return CloseSetResult(tuple(sorted(members)), True, added)
        if len(members) >= budget:
            return CloseSetResult(tuple(sorted(members)), False, added)
        members.add(worst)
        blocked[worst] = 1
        del sizes[worst]
        added += 1
        # only vertices within distance r of the new member can change
        touched = backend.bfs_limited(n, indptr, nbrs, (worst,), r)
        for u in range(n):
            if touched[u] >= 0 and u in sizes:
                sizes[u] = proj_size(u)


# ---------------------------------------------------------------------------
# wide-set extraction


@dataclass(frozen=True)
class UqwResult:
    """Separator S plus a subset L of A that is distance-`radius` independent
    in G minus S; ``ok`` records whether the requested size was reached."""

    S: tuple[int, ...]
    L: tuple[int, ...]
    achieved_m: int
    ok: bool


def uqw_extract(G: Graph, A, radius: int, target_m: int, s_max: int) -> UqwResult:
    """Greedy far-point selection with hub deletion.

    Repeatedly pick the candidate of A farthest (in G minus S) from the
    current selection (first pick: least id) and keep it when its distance
    exceeds the radius.  On a stall, delete the vertex covering the most
    selected vertices within ceil(radius/2) and retry, up to s_max deletions.
    Failure is in-band (ok=False), never an exception.
    """
    As = vertex_set(A, G.n)
    if not As:
        raise GraphError("wide-set extraction needs a nonempty candidate set")
    n = G.n
    S: list[int] = []
    L: list[int] = []
    Lset: set[int] = set()
    removed = bytearray(n)

    def sub_bfs(sources, cap):
        # BFS in G minus S: mask S by skipping removed vertices
        dist = [-1] * n
        queue = []
        for s in sources:
            if not removed[s] and dist[s] < 0:
                dist[s] = 0
                queue.append(s)
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            du = dist[u]
            if 0 <= cap <= du:
                continue
            for v in G.adj(u):
                if not removed[v] and dist[v] < 0:
                    dist[v] = du + 1
                    queue.append(v)
        return dist

    while len(L) < target_m:
        cands = [a for a in As if not removed[a] and a not in Lset]
        if not cands:
            break
        if not L:
            pick, pick_dist = cands[0], None
        else:
            dist = sub_bfs(L, -1)
            pick, pick_dist = None, -2
            for a in cands:
                da = dist[a] if dist[a] >= 0 else math.inf
                if pick is None or da > pick_dist:
                    pick, pick_dist = a, da
        if pick_dist is None or pick_dist > radius:
            L.append(pick)
            Lset.add(pick)
            continue
        if len(S) >= s_max:
            break
        counts = [0] * n
        half = math.ceil(radius / 2)
        for w in L:
            dist = sub_bfs([w], half)
            for v in range(n):
                if dist[v] >= 0:
                    counts[v] += 1
        hub, hub_count = None, 0
        for v in range(n):
            if not removed[v] and v not in Lset and counts[v] > hub_count:
                hub, hub_count = v, counts[v]
        if hub is None:
            break
        S.append(hub)
        removed[hub] = 1
    L.sort()
    return UqwResult(tuple(sorted(S)), tuple(L), len(L), len(L) >= target_m)


def check_uqw(G: Graph, A, radius: int, result: UqwResult) -> bool:
    """Re-verify the extraction postconditions by BFS in G minus S."""
    Aset = set(vertex_set(A, G.n))
    Sset = set(result.S)
    if Sset & set(result.L) or not set(result.L) <= Aset:
        return False
    removed = _blocked_mask(G.n, Sset)
    indptr, nbrs = G.csr
    for w in result.L:
        dist = [-1] * G.n
        dist[w] = 0
        queue = [w]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            if dist[u] >= radius:
                continue
            for i in range(indptr[u], indptr[u + 1]):
                v = nbrs[i]
                if not removed[v] and dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        for other in result.L:
            if other != w and dist[other] >= 0:
                return False
    return True
