"""Pattern families and their occurrences in graph powers.

A family is a nonempty list of small connected graphs (at most d vertices
each).  An occurrence of the family inside ``G^p`` restricted to an allowed
set A is a subset B of A such that the graph on B with edges
``{uv : dist_G(u,v) <= p}`` is isomorphic to some member.

Isomorphism at these sizes is settled by canonical labeling via exhaustive
degree-respecting permutations; correctness beats asymptotics for d <= 6.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import Graph, GraphError, ball, induced_subgraph, is_connected, q_subdivision, vertex_set


class OccurrenceCapExceeded(RuntimeError):
    """Raised when an enumeration would materialize more occurrences than allowed."""


# ---------------------------------------------------------------------------
# canonical forms


def _degree_respecting_perms(n: int, deg: tuple[int, ...]):
    """All label assignments that send equal-degree vertices onto the label
    block reserved for that degree (labels ordered by ascending degree)."""
    order = sorted(range(n), key=lambda v: (deg[v], v))
    blocks: list[list[int]] = []
    for v in order:
        if blocks and deg[blocks[-1][0]] == deg[v]:
            blocks[-1].append(v)
        else:
            blocks.append([v])
    starts = []
    pos = 0
    for b in blocks:
        starts.append(pos)
        pos += len(b)
    for perms in itertools.product(*(itertools.permutations(b) for b in blocks)):
        label = [0] * n
        for start, block in zip(starts, perms):
            for offset, v in enumerate(block):
                label[v] = start + offset
        yield label


def canonical_form(n: int, edges) -> tuple:
    """Permutation-invariant certificate: (n, sorted degseq, minimal edge code)."""
    es = {(min(u, v), max(u, v)) for u, v in edges}
    deg = [0] * n
    for u, v in es:
        deg[u] += 1
        deg[v] += 1
    degt = tuple(deg)
    best = None
    for label in _degree_respecting_perms(n, degt):
        code = tuple(sorted((min(label[u], label[v]), max(label[u], label[v])) for u, v in es))
        if best is None or code < best:
            best = code
    return (n, tuple(sorted(deg)), best if best is not None else ())


def canon_of_graph(G: Graph) -> tuple:
    return canonical_form(G.n, G.edges())


# ---------------------------------------------------------------------------
# families


class PatternFamily:
    """Validated family of connected patterns with cached canonical forms."""

    def __init__(self, members: list[Graph], d_max: int = 6):
        if not members:
            raise GraphError("pattern family must be nonempty")
        for i, m in enumerate(members):
            if m.n > d_max:
                raise GraphError(f"family member {i} has {m.n} vertices (limit {d_max})")
            if not is_connected(m):
                raise GraphError(f"family member {i} is disconnected")
        self.members = tuple(members)
        self.d = max(m.n for m in members)
        self.canons = tuple(canon_of_graph(m) for m in members)
        # least member index per canonical form, grouped by order
        self._index_by_canon: dict[tuple, int] = {}
        self._degseqs_by_order: dict[int, set[tuple]] = {}
        for i, c in enumerate(self.canons):
            self._index_by_canon.setdefault(c, i)
            self._degseqs_by_order.setdefault(c[0], set()).add(c[1])
        self._orders = set(m.n for m in members)

    def match_edges(self, size: int, edges) -> int | None:
        """Least member index isomorphic to the graph (size, edges), else None."""
        if size not in self._orders:
            return None
        deg = [0] * size
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        if tuple(sorted(deg)) not in self._degseqs_by_order[size]:
            return None
        return self._index_by_canon.get(canonical_form(size, edges))

    def min_order_member(self) -> tuple[Graph, int]:
        """The least-index member of minimum order."""
        best = min(range(len(self.members)), key=lambda i: (self.members[i].n, i))
        return self.members[best], best

    def __repr__(self):
        return f"PatternFamily(d={self.d}, members={len(self.members)})"


@dataclass(frozen=True)
class Occurrence:
    B: tuple[int, ...]
    member_index: int


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _power_edges(B: tuple[int, ...], pow_masks: list[int]) -> list[tuple[int, int]]:
    edges = []
    for i, u in enumerate(B):
        mu = pow_masks[u]
        for j in range(i + 1, len(B)):
            if (mu >> B[j]) & 1:
                edges.append((i, j))
    return edges


def is_pattern_match(G: Graph, p: int, B, family: PatternFamily) -> tuple[bool, int | None]:
    """Whether G^p[B] is isomorphic to a member; returns the least member index."""
    Bs = tuple(vertex_set(B, G.n))
    if not Bs or len(Bs) > family.d:
        return False, None
    idx = family.match_edges(len(Bs), _power_edges(Bs, G.power_masks(p)))
    return (idx is not None), idx


def enumerate_occurrences(
    G: Graph,
    p: int,
    A,
    family: PatternFamily,
    limit: int | None = None,
    cap: int | None = None,
    connected: bool = True,
) -> list[Occurrence]:
    """All occurrences inside A, in lexicographic order of the sorted tuple.

    ``limit`` truncates the output; ``cap`` bounds how many occurrences may be
    materialized at all (raising :class:`OccurrenceCapExceeded` beyond it).
    The connected-candidate generator is exact because members are connected;
    ``connected=False`` switches to the plain subset scan for cross-checking.
    """
    out: list[Occurrence] = []
    for occ in _occurrence_iter(G, p, A, family, connected):
        out.append(occ)
        if limit is not None and len(out) >= limit:
            return out
        if cap is not None and len(out) > cap:
            raise OccurrenceCapExceeded(f"more than {cap} occurrences")
    return out


def _occurrence_iter(G: Graph, p: int, A, family: PatternFamily, connected: bool):
    As = vertex_set(A, G.n)
    if not As:
        return
    pow_masks = G.power_masks(p)
    d = family.d
    if not connected:
        found = []
        for size in range(1, d + 1):
            for B in itertools.combinations(As, size):
                idx = family.match_edges(size, _power_edges(B, pow_masks))
                if idx is not None:
                    found.append(Occurrence(B, idx))
        found.sort(key=lambda o: o.B)
        yield from found
        return

    amask = 0
    for v in As:
        amask |= 1 << v
    # connected-subset enumeration in the power graph restricted to A:
    # each subset appears exactly once, anchored at its minimum vertex
    for start in As:
        gt = amask & (-1 << (start + 1))  # allowed vertices strictly above start
        group: list[Occurrence] = []

        def record(sub: tuple[int, ...]):
            b = tuple(sorted(sub))
            idx = family.match_edges(len(b), _power_edges(b, pow_masks))
            if idx is not None:
                group.append(Occurrence(b, idx))

        def extend(sub: tuple[int, ...], ext_mask: int, nbhd_mask: int):
            record(sub)
            if len(sub) == d:
                return
            e = ext_mask
            while e:
                low = e & -e
                e ^= low
                w = low.bit_length() - 1
                wadj = pow_masks[w] & gt
                extend(sub + (w,), e | (wadj & ~nbhd_mask), nbhd_mask | wadj | low)

        start_adj = pow_masks[start] & gt
        extend((start,), start_adj, (1 << start) | start_adj)
        group.sort(key=lambda o: o.B)
        yield from group


def has_occurrence(G: Graph, p: int, A, family: PatternFamily, connected: bool = True) -> bool:
    for _ in _occurrence_iter(G, p, A, family, connected):
        return True
    return False


def exists_occurrence_avoiding(G: Graph, p: int, r: int, A, D, family: PatternFamily) -> Occurrence | None:
    """Least occurrence inside A minus the distance-r ball of D, if any."""
    As = vertex_set(A, G.n)
    blocked = set(ball(G, D, r))
    residual = [v for v in As if v not in blocked]
    occ = enumerate_occurrences(G, p, residual, family, limit=1)
    return occ[0] if occ else None


def is_cover(G: Graph, p: int, r: int, A, D, family: PatternFamily) -> bool:
    return exists_occurrence_avoiding(G, p, r, A, D, family) is None


def is_packing(G: Graph, p: int, r: int, A, parts, family: PatternFamily) -> bool:
    """Whether `parts` is a list of member-matching sets of A pairwise farther than r."""
    from .graph import set_distance

    As = set(vertex_set(A, G.n))
    sets = [tuple(vertex_set(P, G.n)) for P in parts]
    for P in sets:
        if not set(P) <= As:
            return False
        ok, _ = is_pattern_match(G, p, P, family)
        if not ok:
            return False
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            d = set_distance(G, sets[i], sets[j], cap=r)
            if d is not None:
                return False
    return True


# ---------------------------------------------------------------------------
# the parameter-shift gadget


@dataclass(frozen=True)
class CriticalGadget:
    """A graph whose p-th power contains a family member while every
    single-vertex deletion destroys all of them, plus a designated vertex."""

    graph: Graph
    x: int
    p: int


def build_critical_gadget(p: int, family: PatternFamily) -> CriticalGadget:
    """Prune the p-subdivision of a minimum-order member down to criticality.

    Scan candidates in ascending id order and restart after each deletion so
    the output is reproducible; the designated vertex is id 0 of the pruned
    graph.
    """
    if p < 1:
        raise GraphError("critical gadgets need p >= 1")
    member, _ = family.min_order_member()
    H0 = q_subdivision(member, p)
    alive = sorted(range(H0.n))
    while len(alive) > 1:
        deleted = False
        for v in alive:
            rest = [u for u in alive if u != v]
            Hm, _ = induced_subgraph(H0, rest)
            if has_occurrence(Hm, p, range(Hm.n), family):
                alive = rest
                deleted = True
                break
        if not deleted:
            break
    H, _ = induced_subgraph(H0, alive)
    return CriticalGadget(H, 0, p)


def guard_holds(gadget: CriticalGadget, family: PatternFamily) -> bool:
    """Every occurrence in H^p meets the floor(p/2)-ball of every vertex."""
    H, p = gadget.graph, gadget.p
    occs = enumerate_occurrences(H, p, range(H.n), family)
    half = p // 2
    for x in range(H.n):
        near = set(ball(H, [x], half))
        for occ in occs:
            if not near.intersection(occ.B):
                return False
    return True
