"""Exhaustive exact solvers and equivalence verifiers.

Ground truth at desk scale: every reduction and kernel invariant in the test
suite is checked against these.  Covering is solved as hitting the system of
occurrence balls (a set D covers iff it hits ``{v : dist(v,B) <= r}`` for
every occurrence B); packing as maximum independent set in the occurrence
conflict graph.  Subset search is lexicographic with sound pruning, so oracle
outputs are stable fixture values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, vertex_set
from .patterns import PatternFamily, enumerate_occurrences, is_cover


class OracleCapExceeded(RuntimeError):
    """Search space exceeded the configured cap; results would be partial."""


@dataclass(frozen=True)
class ExactResult:
    """value is exact when exhausted; otherwise a best-effort bound:
    cap+1 lower bound for covers, best found packing size for packings."""

    value: int
    witness: tuple | None
    exhausted: bool


# ---------------------------------------------------------------------------
# covering


def _occurrence_ball_masks(G: Graph, A, p: int, r: int, family: PatternFamily, cap: int | None):
    occs = enumerate_occurrences(G, p, A, family, cap=cap)
    balls = G.ball_masks(r)
    masks = []
    for occ in occs:
        m = 0
        for b in occ.B:
            m |= balls[b]
        masks.append(m)
    return occs, masks


def _minimal_system(masks: list[int]) -> list[int]:
    """Dedup and drop supersets; hitting the minimal sets hits everything."""
    uniq = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
    kept: list[int] = []
    for m in uniq:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _disjoint_lower_bound(masks: list[int]) -> int:
    used = 0
    count = 0
    for m in masks:
        if m & used == 0:
            used |= m
            count += 1
    return count


def _lex_cover_dfs(masks: list[int], candidates: list[int], budget: int, collect_all: bool):
    """Lexicographic DFS for covers of size <= budget.

    Returns the list of found covers: the first one only, or all of exactly
    the first-found size when ``collect_all`` (callers pass budget = optimum).
    """
    results: list[tuple[int, ...]] = []

    def rec(start: int, chosen: tuple[int, ...], rem: list[int]) -> bool:
        if not rem:
            if len(chosen) == budget or not collect_all:
                results.append(chosen)
            return not collect_all
        left = budget - len(chosen)
        if left <= 0 or _disjoint_lower_bound(rem) > left:
            return False
        for i in range(start, len(candidates)):
            v = candidates[i]
            if not any((m >> v) & 1 for m in rem):
                continue
            nxt = [m for m in rem if not (m >> v) & 1]
            if rec(i + 1, chosen + (v,), nxt):
                return True
        return False

    rec(0, (), masks)
    return results


def exact_cover_number(G: Graph, A, p: int, r: int, family: PatternFamily, cap: int = 10) -> ExactResult:
    """Minimum cover size by iterative deepening; first verified cover wins.

    Desk scale; ``cap`` bounds the cover size tried, and exceeding it yields
    ``exhausted=False`` with value cap+1 (a lower bound).
    """
    _, masks = _occurrence_ball_masks(G, vertex_set(A, G.n), p, r, family, cap=None)
    if not masks:
        return ExactResult(0, (), True)
    system = _minimal_system(masks)
    useful = [v for v in range(G.n) if any((m >> v) & 1 for m in system)]
    for size in range(0, cap + 1):
        found = _lex_cover_dfs(system, useful, size, collect_all=False)
        if found:
            return ExactResult(size, found[0], True)
    return ExactResult(cap + 1, None, False)


def cover_decision(G: Graph, A, p: int, r: int, family: PatternFamily, k: int, occ_cap: int | None = None) -> bool:
    """Whether a cover of size <= k exists; branch-and-bound on the smallest
    uncovered occurrence ball."""
    _, masks = _occurrence_ball_masks(G, vertex_set(A, G.n), p, r, family, cap=occ_cap)
    if not masks:
        return True
    system = _minimal_system(masks)

    def rec(rem: list[int], budget: int) -> bool:
        if not rem:
            return True
        if budget <= 0 or _disjoint_lower_bound(rem) > budget:
            return False
        pivot = min(rem, key=lambda m: (bin(m).count("1"), m))
        v = 0
        m = pivot
        while m:
            low = m & -m
            m ^= low
            v = low.bit_length() - 1
            nxt = [t for t in rem if not (t >> v) & 1]
            if rec(nxt, budget - 1):
                return True
        return False

    return rec(system, k)


def enumerate_min_covers(G: Graph, Z, p: int, r: int, family: PatternFamily, cap: int = 10) -> list[tuple[int, ...]]:
    """All covers of Z of exactly minimum size, lexicographic order."""
    base = exact_cover_number(G, Z, p, r, family, cap=cap)
    if not base.exhausted:
        raise OracleCapExceeded(f"minimum cover exceeds cap {cap}")
    if base.value == 0:
        return [()]
    _, masks = _occurrence_ball_masks(G, vertex_set(Z, G.n), p, r, family, cap=None)
    system = _minimal_system(masks)
    useful = [v for v in range(G.n) if any((m >> v) & 1 for m in system)]
    return _lex_cover_dfs(system, useful, base.value, collect_all=True)


def check_core_property(G: Graph, A, Z, p: int, r: int, family: PatternFamily, cap: int = 10) -> bool:
    """Whether every minimum-size cover of Z also covers A."""
    Zs = vertex_set(Z, G.n)
    As = vertex_set(A, G.n)
    if not set(Zs) <= set(As):
        raise ValueError("core candidate must be a subset of the annotated set")
    for D in enumerate_min_covers(G, Zs, p, r, family, cap=cap):
        if not is_cover(G, p, r, As, D, family):
            return False
    return True


# ---------------------------------------------------------------------------
# packing


def _conflict_reps(G: Graph, A, p: int, r: int, family: PatternFamily, cap: int | None):
    """Occurrences deduped by their distance-r ball.

    Two occurrences with the same ball have identical conflict rows and are
    mutually conflicting, so each packing uses at most one per class and any
    class member can stand in; the packing number is unaffected.
    """
    occs = enumerate_occurrences(G, p, A, family, cap=cap)
    balls = G.ball_masks(r)
    reps: list[tuple[tuple[int, ...], int, int]] = []  # (B, bits, ball)
    seen: dict[int, int] = {}
    for occ in occs:
        bits = 0
        bmask = 0
        for b in occ.B:
            bits |= 1 << b
            bmask |= balls[b]
        if bmask not in seen:
            seen[bmask] = len(reps)
            reps.append((occ.B, bits, bmask))
    rows = []
    for i, (_, _, ball_i) in enumerate(reps):
        row = 0
        for j, (_, bits_j, _) in enumerate(reps):
            if i != j and ball_i & bits_j:
                row |= 1 << j
        rows.append(row)
    return reps, rows


def _greedy_clique_bound(P: int, rows: list[int]) -> int:
    cliques: list[int] = []
    m = P
    while m:
        low = m & -m
        m ^= low
        v = low.bit_length() - 1
        placed = False
        for i, c in enumerate(cliques):
            if c & ~rows[v] == 0:
                cliques[i] = c | low
                placed = True
                break
        if not placed:
            cliques.append(low)
    return len(cliques)


def _mis_search(rows: list[int], stop_at: int | None = None) -> tuple[int, int]:
    """Maximum independent set over the conflict rows (exact, deterministic).

    Returns (size, chosen mask); stops early once ``stop_at`` is reached.
    """
    n = len(rows)
    full = (1 << n) - 1
    best_size = 0
    best_mask = 0

    def rec(P: int, chosen: int, size: int):
        nonlocal best_size, best_mask
        if size > best_size:
            best_size, best_mask = size, chosen
        if stop_at is not None and best_size >= stop_at:
            return True
        if P == 0:
            return False
        if size + _greedy_clique_bound(P, rows) <= best_size:
            return False
        # branch on the vertex with most conflicts among the candidates
        m = P
        pick, pick_deg = -1, -1
        while m:
            low = m & -m
            m ^= low
            v = low.bit_length() - 1
            deg = bin(rows[v] & P).count("1")
            if deg > pick_deg:
                pick, pick_deg = v, deg
        bit = 1 << pick
        if rec(P & ~(rows[pick] | bit), chosen | bit, size + 1):
            return True
        return rec(P & ~bit, chosen, size)

    rec(full, 0, 0)
    return best_size, best_mask


def exact_packing_number(G: Graph, A, p: int, r: int, family: PatternFamily, cap: int = 100_000) -> ExactResult:
    """Maximum packing size via branch-and-bound over the conflict graph.

    More than ``cap`` occurrences yields exhausted=False with value 0, a
    trivial lower bound; callers treating the result as exact must check the
    flag.
    """
    from .patterns import OccurrenceCapExceeded

    try:
        reps, rows = _conflict_reps(G, A, p, r, family, cap=cap)
    except OccurrenceCapExceeded:
        return ExactResult(0, None, False)
    if not reps:
        return ExactResult(0, (), True)
    size, mask = _mis_search(rows)
    witness = tuple(sorted(reps[i][0] for i in range(len(reps)) if (mask >> i) & 1))
    return ExactResult(size, witness, True)


def packing_decision(G: Graph, A, p: int, r: int, family: PatternFamily, k: int, occ_cap: int | None = None) -> bool:
    """Whether a packing of size >= k exists."""
    if k <= 0:
        return True
    reps, rows = _conflict_reps(G, A, p, r, family, cap=occ_cap)
    if len(reps) < k:
        return False
    size, _ = _mis_search(rows, stop_at=k)
    return size >= k


# ---------------------------------------------------------------------------
# kernel equivalence


def verify_kernel_equivalence(
    problem: str,
    G: Graph,
    k: int,
    G2: Graph,
    k2: int,
    p: int,
    r: int,
    family: PatternFamily,
    occ_cap: int | None = None,
) -> bool:
    """Cover: (gamma(G) <= k) <=> (gamma(G2) <= k2); pack: alpha thresholds."""
    if problem == "cover":
        a = cover_decision(G, range(G.n), p, r, family, k, occ_cap=occ_cap)
        b = cover_decision(G2, range(G2.n), p, r, family, k2, occ_cap=occ_cap)
    elif problem == "pack":
        a = packing_decision(G, range(G.n), p, r, family, k, occ_cap=occ_cap)
        b = packing_decision(G2, range(G2.n), p, r, family, k2, occ_cap=occ_cap)
    else:
        raise ValueError(f"unknown problem kind: {problem!r}")
    return a == b
