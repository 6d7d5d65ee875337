"""The covering kernel: iterated core reduction, the annotated kernel via
profile-class representatives plus a (2r+1)-path closure, and the full
gadgeted kernel with its r=0 and p=0 branches.

Requires p <= 2r+1 throughout.  Identical inputs and config produce
byte-identical outputs; the reduction loop is sequential, everything else is
pure and safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import KernelConfig
from .graph import Graph, GraphBuilder, ball, disjoint_union, induced_subgraph, vertex_set
from .patterns import PatternFamily, build_critical_gadget
from .reduction import StepOutcome, reduction_step
from .sparsity import partition_by_profile, path_closure


@dataclass
class CoverKernelOutput:
    status: str  # "rejected" | "annotated" | "full" | "fallback"
    y: list[int] | None = None
    z: list[int] | None = None
    graph: Graph | None = None
    k_prime: int | None = None
    reason: str | None = None
    stats: dict = field(default_factory=dict)


def _check_hypothesis(p: int, r: int) -> None:
    if p > 2 * r + 1:
        raise ValueError(f"covering kernel requires p <= 2r+1, got p={p}, r={r}")


def core_reduction_step(G: Graph, A, Z, k: int, p: int, r: int, family: PatternFamily, cfg: KernelConfig) -> StepOutcome:
    """One reduction attempt on the current core Z inside the annotated set A."""
    _check_hypothesis(p, r)
    Zs = vertex_set(Z, G.n)
    As = set(vertex_set(A, G.n))
    if not set(Zs) <= As:
        raise ValueError("core must be a subset of the annotated set")
    return reduction_step(G, Zs, k, p, r, family, cfg, problem="cover")


@dataclass
class CoreResult:
    rejected: bool
    Z: list[int] | None
    stats: dict


def compute_core(G: Graph, A, k: int, p: int, r: int, family: PatternFamily, cfg: KernelConfig) -> CoreResult:
    """Shrink A one sound removal at a time until the size target or a fallback.

    A itself is always a valid core and every accepted removal preserves
    core-ness, so ending early on a fallback only costs output size.
    """
    _check_hypothesis(p, r)
    Z = vertex_set(A, G.n)
    stats: dict = {"rounds": 0, "removed_no_occurrence": 0, "removed_signature": 0}
    if k == 0:
        from .patterns import has_occurrence

        if has_occurrence(G, p, Z, family, connected=cfg.connected_enumeration):
            stats["fallback_reason"] = None
            return CoreResult(True, None, stats)
    removals: list[dict] = []
    while True:
        outcome = reduction_step(G, Z, k, p, r, family, cfg, problem="cover")
        if outcome.kind == "rejected":
            stats.update(outcome.detail)
            stats["fallback_reason"] = None
            return CoreResult(True, None, stats)
        if outcome.kind == "fallback":
            stats["fallback_reason"] = outcome.reason
            break
        stats["rounds"] += 1
        if outcome.branch == "no-occurrence":
            stats["removed_no_occurrence"] += 1
        else:
            stats["removed_signature"] += 1
        if cfg.record_removals:
            removals.append({"z": outcome.z, "before": tuple(Z), "branch": outcome.branch})
        Z = [v for v in Z if v != outcome.z]
    stats["core_size"] = len(Z)
    if cfg.record_removals:
        stats["removals"] = removals
    return CoreResult(False, Z, stats)


def annotated_cover_kernel(G: Graph, A, k: int, p: int, r: int, family: PatternFamily, cfg: KernelConfig) -> CoverKernelOutput:
    """Outputs (Y, Z) with the covering number of Z in G[Y] equal to that of A
    in G: core, one representative per profile class toward the core, then a
    (2r+1)-path closure."""
    _check_hypothesis(p, r)
    core = compute_core(G, A, k, p, r, family, cfg)
    if core.rejected:
        return CoverKernelOutput("rejected", reason="cover number exceeds k", stats=core.stats)
    Z = core.Z
    rest = [v for v in range(G.n) if v not in set(Z)]
    reps = [cls[0] for cls in partition_by_profile(G, Z, rest, r)] if rest else []
    z_aug = sorted(set(Z) | set(reps))
    Y = path_closure(G, z_aug, 2 * r + 1)
    stats = dict(core.stats)
    stats.update({"y_size": len(Y), "z_size": len(Z), "profile_classes": len(reps)})
    return CoverKernelOutput("annotated", y=Y, z=Z, stats=stats)


def full_cover_kernel(G: Graph, k: int, p: int, r: int, family: PatternFamily, cfg: KernelConfig) -> CoverKernelOutput:
    """Rejection, or an equivalent un-annotated instance (G', k+1)."""
    _check_hypothesis(p, r)
    ann = annotated_cover_kernel(G, range(G.n), k, p, r, family, cfg)
    if ann.status != "annotated":
        return ann
    Y, Z = ann.y, ann.z
    zset = set(Z)
    f0, _ = family.min_order_member()
    stats = dict(ann.stats)

    if r == 0:
        if Z:
            base, _ = induced_subgraph(G, Z)
            g_prime = disjoint_union(base, f0)
        else:
            g_prime = Graph(f0.n, [f0.adj(v) for v in range(f0.n)])
    elif p == 0 and f0.n >= 2:
        # the power-0 graph is edgeless, so no multi-vertex pattern ever
        # occurs: both sides of the equivalence are trivially coverable
        g_prime = Graph(1, [[]])
    else:
        sub, old_ids = induced_subgraph(G, Y)
        y_not_z = [i for i, v in enumerate(old_ids) if v not in zset]
        if p == 0:
            builder = GraphBuilder(sub)
            hub = builder.add_vertex()
            pendant = builder.add_vertex()
            builder.add_path(hub, pendant, r)
            for v in y_not_z:
                builder.add_path(hub, v, r)
            g_prime = builder.build()
        else:
            gadget = build_critical_gadget(p, family)
            offset = sub.n
            builder = GraphBuilder(disjoint_union(sub, gadget.graph))
            hub = builder.add_vertex()
            for v in y_not_z:
                builder.add_path(hub, v, r)
            for v in ball(gadget.graph, [gadget.x], p // 2):
                builder.add_path(hub, v + offset, r)
            g_prime = builder.build()
            stats["gadget_size"] = gadget.graph.n
    stats["gprime_size"] = g_prime.n
    return CoverKernelOutput("full", y=Y, z=Z, graph=g_prime, k_prime=k + 1, stats=stats)
