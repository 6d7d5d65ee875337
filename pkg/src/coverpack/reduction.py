"""Shared single-vertex reduction step for the covering and packing kernels.

One step over a working set W either finds a vertex whose removal provably
preserves the answer, certifies rejection via a too-large approximate cover,
or falls back (no vertex removed, correctness untouched).  The two problems
share the skeleton and differ in the cover subroutine, the locality radius,
the signature radius, the group-size threshold, and the removal choice.

A removal by signature grouping happens only when everything the soundness
argument consumes has been verified on this instance: the close-set
threshold was met, the extracted wide set is genuinely independent at the
required radius after deleting the separator, and an equal-signature group
of the required size exists.  Whenever any of that fails, the step degrades
to a fallback instead of risking an unsound removal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations

from . import backend
from .approx import dual_cover, greedy_hitting_cover
from .config import KernelConfig
from .graph import Graph, vertex_set
from .patterns import Occurrence, OccurrenceCapExceeded, PatternFamily, enumerate_occurrences
from .sparsity import check_uqw, close_set, partition_by_profile, uqw_extract


@dataclass
class StepOutcome:
    kind: str  # "removable" | "rejected" | "fallback"
    z: int | None = None
    branch: str | None = None  # "no-occurrence" | "signature-group"
    reason: str | None = None
    detail: dict = field(default_factory=dict)


def _group_threshold(problem: str, cfg: KernelConfig, t_cl: int, k: int, d: int, s: int) -> float:
    ke = max(k, 0) ** (2.0 * cfg.epsilon)
    if problem == "cover":
        return 2.0 * t_cl * ke + d * d / 4.0 + s + 1.0
    return d * (t_cl * ke + s + d * d / 4.0 + 1.0)


def _wide_target_formula(problem: str, r: int, d: int, s: int, xi: float) -> int | None:
    """The pigeonhole target from the size analysis; None when astronomically
    large (the practical cap then applies)."""
    if problem == "cover":
        exponent = d * d / 2.0 + s * d
        base = 2 * r + 2
    else:
        exponent = d * d / 2.0
        base = r + 2
    if exponent > 40:
        return None
    universe = (2.0**exponent) * (base ** (s * d))
    if universe > 40:
        return None
    return math.ceil((2.0**universe) * xi) + 1


def _signature(
    G: Graph,
    v: int,
    occ: tuple[int, ...],
    s_sorted: list[int],
    s_set: set[int],
    sig_radius: int,
    p: int,
    gs_reach: dict[int, int],
    prof_cache: dict[int, tuple],
) -> tuple[tuple, tuple[int, ...]]:
    """Canonical signature of one anchored occurrence, plus the vertex set of
    its component around the anchor in the separator-free power graph.

    The signature couples the labelled power graph on the occurrence minus
    the separator (anchor labelled 0) with each vertex's avoiding-path
    profile toward the separator, minimized over label permutations.
    """
    indptr, nbrs = G.csr
    n = G.n
    blocked = bytes(_mask_of(n, s_set))

    members = [v] + [a for a in occ if a != v and a not in s_set]
    for a in members:
        if a not in gs_reach:
            dist, _ = backend.bfs_avoiding(n, indptr, nbrs, a, blocked, p)
            m = 0
            for u in range(n):
                if dist[u] >= 0:
                    m |= 1 << u
            gs_reach[a] = m
        if a not in prof_cache:
            _, entry = backend.bfs_avoiding(n, indptr, nbrs, a, blocked, sig_radius)
            prof_cache[a] = tuple(entry[x] for x in s_sorted)

    t = len(members)
    edges = [
        (i, j)
        for i in range(t)
        for j in range(i + 1, t)
        if (gs_reach[members[i]] >> members[j]) & 1
    ]
    # anchored component in the separator-free power graph
    comp = {0}
    frontier = [0]
    adj = [[] for _ in range(t)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    while frontier:
        i = frontier.pop()
        for j in adj[i]:
            if j not in comp:
                comp.add(j)
                frontier.append(j)
    anchored = tuple(sorted(members[i] for i in comp))

    profs = [prof_cache[a] for a in members]
    best = None
    for perm in permutations(range(1, t)):
        label = [0] * t
        for new, old in enumerate(perm, start=1):
            label[old] = new
        code_edges = tuple(sorted((min(label[i], label[j]), max(label[i], label[j])) for i, j in edges))
        ordered = [None] * t
        for old in range(t):
            ordered[label[old]] = profs[old]
        code = (t, code_edges, tuple(ordered))
        if best is None or code < best:
            best = code
    return best, anchored


def _mask_of(n: int, S) -> bytearray:
    m = bytearray(n)
    for v in S:
        m[v] = 1
    return m


def _set_distance_avoiding(G: Graph, sources, targets, s_set: set[int]) -> float:
    """Distance between two sets in the graph minus the separator."""
    n = G.n
    targets = [t for t in targets if t not in s_set]
    if not targets:
        return math.inf
    tmask = set(targets)
    dist = [-1] * n
    queue = []
    for s in sources:
        if s not in s_set and dist[s] < 0:
            dist[s] = 0
            queue.append(s)
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        if u in tmask:
            return dist[u]
        for w in G.adj(u):
            if w not in s_set and dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return math.inf


def reduction_step(
    G: Graph,
    work,
    k: int,
    p: int,
    r: int,
    family: PatternFamily,
    cfg: KernelConfig,
    problem: str,
) -> StepOutcome:
    d = family.d
    n = G.n
    W = vertex_set(work, n)
    target = cfg.core_target(k)
    if len(W) <= target:
        return StepOutcome("fallback", reason=f"working set within size target {target}")

    try:
        occs = enumerate_occurrences(
            G, p, W, family, cap=cfg.occurrence_cap, connected=cfg.connected_enumeration
        )
    except OccurrenceCapExceeded as exc:
        return StepOutcome("fallback", reason=str(exc))

    by_vertex: dict[int, list[Occurrence]] = {v: [] for v in W}
    for occ in occs:
        for b in occ.B:
            by_vertex[b].append(occ)
    for v in W:
        if not by_vertex[v]:
            return StepOutcome("removable", z=v, branch="no-occurrence")

    if problem == "cover":
        X = greedy_hitting_cover(G, W, p, r, family, occurrences=occs)
        local_radius = 2 * p * d + 3 * r
    else:
        X = dual_cover(G, W, p, r // 2, r, family, cfg.epsilon, occurrences=occs)
        local_radius = 4 * p * d + 3 * r
    threshold = cfg.rejection_threshold(k)
    if len(X) > threshold:
        return StepOutcome(
            "rejected",
            reason="approximate cover exceeds the rejection threshold",
            detail={"cover_size": len(X), "rejection_threshold": threshold},
        )

    t_cl = cfg.close_threshold(len(X))
    cs = close_set(G, X, local_radius, t_cl, cfg.close_budget(len(X), n))
    if not cs.threshold_met:
        return StepOutcome("fallback", reason="close-set threshold unmet within budget")
    x_cl = list(cs.members)
    x_cl_set = set(x_cl)

    w_rest = [v for v in W if v not in x_cl_set]
    if not w_rest:
        return StepOutcome("fallback", reason="working set absorbed by the close set")
    classes = partition_by_profile(G, x_cl, w_rest, local_radius)
    lam = max(classes, key=lambda c: (len(c), -c[0]))

    xi_pre = _group_threshold(problem, cfg, t_cl, k, d, cfg.separator_cap)
    need_pre = math.ceil(xi_pre + 1 - 1e-12)
    if len(lam) < need_pre:
        return StepOutcome(
            "fallback",
            reason="largest profile class below the group threshold",
            detail={"class_size": len(lam), "group_threshold": xi_pre},
        )
    formula = _wide_target_formula(problem, r, d, cfg.separator_cap, xi_pre)
    m_req = min(cfg.wide_target_cap, len(lam), formula if formula is not None else len(lam))
    if m_req < need_pre:
        return StepOutcome("fallback", reason="wide target cap below the group threshold")

    uqw = uqw_extract(G, lam, local_radius, m_req, cfg.separator_cap)
    if not uqw.ok:
        return StepOutcome(
            "fallback",
            reason="wide-set extraction missed its target",
            detail={"achieved": uqw.achieved_m, "target": m_req},
        )
    if cfg.validate and not check_uqw(G, lam, local_radius, uqw):
        raise AssertionError("wide-set extraction postcondition failed")

    s_sorted = sorted(uqw.S)
    s_set = set(s_sorted)
    xi = _group_threshold(problem, cfg, t_cl, k, d, len(s_sorted))
    need = math.ceil(xi + 1 - 1e-12)

    sig_radius = 2 * r + 1 if problem == "cover" else r + 1
    intern: dict[tuple, int] = {}
    gs_reach: dict[int, int] = {}
    prof_cache: dict[int, tuple] = {}
    sig_sets: dict[int, frozenset[int]] = {}
    anchored_union: dict[int, set[int]] = {}
    for v in uqw.L:
        got: set[int] = set()
        anchored_all: set[int] = set()
        for occ in by_vertex[v]:
            sig, anchored = _signature(
                G, v, occ.B, s_sorted, s_set, sig_radius, p, gs_reach, prof_cache
            )
            idx = intern.setdefault(sig, len(intern))
            if idx not in got:
                got.add(idx)
                anchored_all.update(anchored)
        sig_sets[v] = frozenset(got)
        anchored_union[v] = anchored_all

    groups: dict[frozenset[int], list[int]] = {}
    for v in uqw.L:
        groups.setdefault(sig_sets[v], []).append(v)
    eligible = [g for g in groups.values() if len(g) >= need]
    if not eligible:
        return StepOutcome(
            "fallback",
            reason="no signature class of the required size",
            detail={"largest_class": max(len(g) for g in groups.values()), "needed": need},
        )
    kappa = max(eligible, key=lambda g: (len(g), -min(g)))

    if problem == "cover":
        z = max(
            kappa,
            key=lambda v: (_set_distance_avoiding(G, sorted(anchored_union[v]), x_cl, s_set), -v),
        )
    else:
        z = min(kappa)
    return StepOutcome(
        "removable",
        z=z,
        branch="signature-group",
        detail={
            "cover_size": len(X),
            "close_set_size": len(x_cl),
            "class_size": len(lam),
            "separator_size": len(s_sorted),
            "wide_set_size": len(uqw.L),
            "group_size": len(kappa),
            "group_threshold": xi,
        },
    )
