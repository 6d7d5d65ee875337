"""The packing kernel: iterated annotated-set reduction, the annotated kernel
via an (r+1)-path closure, and the full gadgeted kernel with zero-packing
detection and the r<=1 / p=0 branches.

Requires p <= 2*floor(r/2)+1 throughout.  Deterministic like the covering
kernel; gadget path lengths follow the floor/ceil split of r exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .config import KernelConfig
from .graph import Graph, GraphBuilder, ball, disjoint_union, induced_subgraph, vertex_set
from .patterns import PatternFamily, build_critical_gadget, has_occurrence
from .reduction import StepOutcome, reduction_step
from .sparsity import path_closure


@dataclass
class PackKernelOutput:
    status: str  # "alpha_zero" | "rejected" | "annotated" | "full" | "fallback"
    y: list[int] | None = None
    z: list[int] | None = None
    graph: Graph | None = None
    k_prime: int | None = None
    reason: str | None = None
    stats: dict = field(default_factory=dict)


def _check_hypothesis(p: int, r: int) -> None:
    if p > 2 * (r // 2) + 1:
        raise ValueError(f"packing kernel requires p <= 2*floor(r/2)+1, got p={p}, r={r}")


def pack_reduction_step(G: Graph, A, k: int, p: int, r: int, family: PatternFamily, cfg: KernelConfig) -> StepOutcome:
    """One reduction attempt on the annotated set A."""
    _check_hypothesis(p, r)
    return reduction_step(G, vertex_set(A, G.n), k, p, r, family, cfg, problem="pack")


@dataclass
class PackReduceResult:
    rejected: bool
    Z: list[int] | None
    stats: dict


def reduce_pack_set(G: Graph, A, k: int, p: int, r: int, family: PatternFamily, cfg: KernelConfig) -> PackReduceResult:
    """Shrink A by single removals that each preserve whether a size-k packing
    exists; stops at the size target or the first fallback."""
    _check_hypothesis(p, r)
    Z = vertex_set(A, G.n)
    stats: dict = {"rounds": 0, "removed_no_occurrence": 0, "removed_signature": 0}
    removals: list[dict] = []
    while True:
        outcome = reduction_step(G, Z, k, p, r, family, cfg, problem="pack")
        if outcome.kind == "rejected":
            stats.update(outcome.detail)
            stats["fallback_reason"] = None
            return PackReduceResult(True, None, stats)
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
    return PackReduceResult(False, Z, stats)


def annotated_pack_kernel(G: Graph, A, k: int, p: int, r: int, family: PatternFamily, cfg: KernelConfig) -> PackKernelOutput:
    """Outputs (Y, Z) with: a size-k packing of A in G exists iff one of Z in
    G[Y] does.  Y is an (r+1)-path closure of the reduced set; an empty
    reduced set is carried by a canonical one-vertex Y so downstream
    consumers always receive a well-formed graph."""
    _check_hypothesis(p, r)
    red = reduce_pack_set(G, A, k, p, r, family, cfg)
    if red.rejected:
        return PackKernelOutput("rejected", reason="packing number exceeds k", stats=red.stats)
    Z = red.Z
    Y = path_closure(G, Z, r + 1) if Z else [0]
    stats = dict(red.stats)
    stats.update({"y_size": len(Y), "z_size": len(Z)})
    return PackKernelOutput("annotated", y=Y, z=Z, stats=stats)


def full_pack_kernel(G: Graph, k: int, p: int, r: int, family: PatternFamily, cfg: KernelConfig) -> PackKernelOutput:
    """Zero-packing detection, rejection, or an equivalent (G', k+1)."""
    _check_hypothesis(p, r)
    if not has_occurrence(G, p, range(G.n), family, connected=cfg.connected_enumeration):
        return PackKernelOutput("alpha_zero", stats={"gprime_size": 0})
    ann = annotated_pack_kernel(G, range(G.n), k, p, r, family, cfg)
    if ann.status != "annotated":
        return ann
    Y, Z = ann.y, ann.z
    zset = set(Z)
    f0, _ = family.min_order_member()
    stats = dict(ann.stats)

    if r <= 1:
        if Z:
            base, _ = induced_subgraph(G, Z)
            g_prime = disjoint_union(base, f0)
        else:
            g_prime = Graph(f0.n, [f0.adj(v) for v in range(f0.n)])
    else:
        sub, old_ids = induced_subgraph(G, Y)
        y_not_z = [i for i, v in enumerate(old_ids) if v not in zset]
        near_len = r // 2
        far_len = math.ceil(r / 2)
        if p == 0:
            # an occurrence exists, so the family has a one-vertex member
            builder = GraphBuilder(sub)
            hub = builder.add_vertex()
            pendant = builder.add_vertex()
            builder.add_path(hub, pendant, far_len)
            for v in y_not_z:
                builder.add_path(hub, v, near_len)
            g_prime = builder.build()
        else:
            gadget = build_critical_gadget(p, family)
            offset = sub.n
            builder = GraphBuilder(disjoint_union(sub, gadget.graph))
            hub = builder.add_vertex()
            for v in y_not_z:
                builder.add_path(hub, v, near_len)
            for v in ball(gadget.graph, [gadget.x], p // 2):
                builder.add_path(hub, v + offset, far_len)
            g_prime = builder.build()
            stats["gadget_size"] = gadget.graph.n
    stats["gprime_size"] = g_prime.n
    return PackKernelOutput("full", y=Y, z=Z, graph=g_prime, k_prime=k + 1, stats=stats)
