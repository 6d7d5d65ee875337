"""Approximate covers: the wcol-greedy rounds algorithm with packing
witnesses, a greedy hitting-set cover, and the packing-bounded dual cover.

The greedy hitting substitute replaces a VC-dimension based routine whose
per-instance bound is not checkable; every downstream consumer only needs
"the output is a cover", which the greedy delivers by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, ball, vertex_set
from .patterns import PatternFamily, enumerate_occurrences, exists_occurrence_avoiding
from .sparsity import LinearOrder, weak_reach_all


@dataclass(frozen=True)
class CoverResult:
    D: tuple[int, ...]
    witnesses: tuple[tuple[int, ...], ...]
    iterations: int
    order_used: LinearOrder
    wcol_r0: int


def greedy_cover_wcol(G: Graph, A, p: int, r: int, r0: int, family: PatternFamily, L: LinearOrder) -> CoverResult:
    """Round-based cover: per round, take the L-lexicographically least
    occurrence in the residual, absorb the weak r0-reach of its vertices into
    the cover, and peel the r-ball of that reach from the residual.

    The collected witnesses lie pairwise farther than r apart, so they form a
    packing certificate alongside the cover.
    """
    if r0 > 2 * r + 1:
        raise ValueError(f"requires r0 <= 2r+1, got r0={r0}, r={r}")
    reach = weak_reach_all(G, L, r0)
    wcol = max(len(s) for s in reach)
    pos = L.position
    residual = set(vertex_set(A, G.n))
    D: set[int] = set()
    witnesses: list[tuple[int, ...]] = []
    while True:
        occs = enumerate_occurrences(G, p, sorted(residual), family)
        if not occs:
            break
        X = min(occs, key=lambda o: tuple(sorted(pos[v] for v in o.B))).B
        witnesses.append(X)
        W: set[int] = set()
        for x in X:
            W.update(reach[x])
        D.update(W)
        residual.difference_update(ball(G, sorted(W), r))
    return CoverResult(tuple(sorted(D)), tuple(witnesses), len(witnesses), L, wcol)


def greedy_hitting_cover(
    G: Graph,
    A,
    p: int,
    r: int,
    family: PatternFamily,
    occ_cap: int | None = None,
    connected: bool = True,
    occurrences=None,
) -> list[int]:
    """Classic greedy over the system of occurrence balls.

    Hitting ``{v : dist(v, B) <= r}`` for every occurrence B inside A is
    exactly the covering condition, so the greedy output is always a cover.
    Callers that already enumerated the occurrences of (G, p, A) may pass
    them in to skip the rescan.
    """
    As = vertex_set(A, G.n)
    occs = (
        occurrences
        if occurrences is not None
        else enumerate_occurrences(G, p, As, family, cap=occ_cap, connected=connected)
    )
    if not occs:
        return []
    balls = G.ball_masks(r)
    sets: list[int] = []
    for occ in occs:
        m = 0
        for b in occ.B:
            m |= balls[b]
        sets.append(m)
    n = G.n
    member_sets: list[list[int]] = [[] for _ in range(n)]
    counts = [0] * n
    for idx, m in enumerate(sets):
        mm = m
        while mm:
            low = mm & -mm
            mm ^= low
            v = low.bit_length() - 1
            member_sets[v].append(idx)
            counts[v] += 1
    alive = [True] * len(sets)
    remaining = len(sets)
    D: list[int] = []
    while remaining:
        best = max(range(n), key=lambda v: (counts[v], -v))
        if counts[best] == 0:
            raise AssertionError("unhit occurrence ball with no eligible vertex")
        D.append(best)
        for idx in member_sets[best]:
            if alive[idx]:
                alive[idx] = False
                remaining -= 1
                mm = sets[idx]
                while mm:
                    low = mm & -mm
                    mm ^= low
                    counts[low.bit_length() - 1] -= 1
    return sorted(D)


@dataclass(frozen=True)
class DualCoverReport:
    cover: tuple[int, ...]
    diagnostics: dict = field(compare=False)


def dual_cover(
    G: Graph, A, p: int, r: int, r0: int, family: PatternFamily, epsilon: float = 0.5, occurrences=None
) -> list[int]:
    """Cover whose size is controlled by the packing number at radius r0.

    Early-exits empty when no occurrence exists (cover number and packing
    number vanish together); otherwise returns the greedy hitting cover, the
    certified-relationship diagnostics being available via
    :func:`dual_cover_report`.
    """
    if max(p, r0) > 2 * r + 1:
        raise ValueError(f"requires max(p, r0) <= 2r+1, got p={p}, r0={r0}, r={r}")
    As = vertex_set(A, G.n)
    if occurrences is not None:
        if not occurrences:
            return []
    elif exists_occurrence_avoiding(G, p, 0, As, [], family) is None:
        return []
    return greedy_hitting_cover(G, As, p, r, family, occurrences=occurrences)


def dual_cover_report(
    G: Graph, A, p: int, r: int, r0: int, family: PatternFamily, epsilon: float = 0.5, cfg=None
) -> DualCoverReport:
    """The dual cover plus the reduced-instance diagnostics: weak coloring
    number of the reduced vertex set and a packing lower-bound witness."""
    from .config import KernelConfig
    from .graph import induced_subgraph
    from .kernel_cover import annotated_cover_kernel
    from .sparsity import degeneracy_order

    cover = dual_cover(G, A, p, r, r0, family, epsilon)
    diag: dict = {"cover_size": len(cover)}
    if not cover:
        return DualCoverReport(tuple(cover), diag)
    cfg = cfg or KernelConfig(epsilon=epsilon)
    ann = annotated_cover_kernel(G, A, len(cover), p, r, family, cfg)
    if ann.status == "annotated" and ann.y:
        H, old_ids = induced_subgraph(G, ann.y)
        order = degeneracy_order(H)
        wcol = max(len(s) for s in weak_reach_all(H, order, r0))
        new_of = {v: i for i, v in enumerate(old_ids)}
        z_new = [new_of[v] for v in ann.z]
        witness = greedy_cover_wcol(H, z_new, p, r, r0, family, order)
        diag.update(
            {
                "reduced_y_size": len(ann.y),
                "reduced_z_size": len(ann.z),
                "wcol_r0_reduced": wcol,
                "packing_lower_bound_rounds": witness.iterations,
            }
        )
    return DualCoverReport(tuple(cover), diag)
