import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import coverpack as cp
from conftest import cycle, path, random_graph, star


CFG = cp.KernelConfig()


def dumbbell(leaves: int = 8) -> cp.Graph:
    """Two stars joined by a path of length 4; leaf groups are interchangeable."""
    c2 = leaves + 1
    edges = [(0, i) for i in range(1, leaves + 1)]
    edges += [(c2, c2 + i) for i in range(1, leaves + 1)]
    a, b, c = 2 * leaves + 2, 2 * leaves + 3, 2 * leaves + 4
    edges += [(0, a), (a, b), (b, c), (c, c2)]
    return cp.build_graph(2 * leaves + 5, edges)


def test_step_rejects_bad_hypothesis(families):
    with pytest.raises(ValueError):
        cp.pack_reduction_step(path(5), range(5), 1, 2, 1, families["K1"], CFG)
    with pytest.raises(ValueError):
        cp.full_pack_kernel(path(5), 1, 6, 4, families["K1"], CFG)


def test_step_removes_vertex_in_no_occurrence(families):
    G = cp.build_graph(5, [(0, 1), (1, 2), (2, 3)])
    out = cp.pack_reduction_step(G, range(5), 1, 1, 1, families["K2"], CFG)
    assert out.kind == "removable" and out.branch == "no-occurrence" and out.z == 4


def test_step_small_set_falls_back(families):
    out = cp.pack_reduction_step(path(3), range(3), 5, 1, 1, families["K1"], CFG)
    assert out.kind == "fallback" and "size target" in out.reason


def test_reduce_no_occurrences_shrinks(families):
    G = cp.build_graph(6, [])
    red = cp.reduce_pack_set(G, range(6), 1, 1, 1, families["K2"], CFG)
    assert not red.rejected and len(red.Z) == CFG.core_target(1)
    assert cp.exact_packing_number(G, red.Z, 1, 1, families["K2"]).value == 0


def test_reduce_preserves_threshold_c6(families):
    G = cycle(6)
    red = cp.reduce_pack_set(G, range(6), 2, 1, 1, families["K2"], CFG)
    if red.rejected:
        assert cp.packing_decision(G, range(6), 1, 1, families["K2"], 3)
    else:
        before = cp.packing_decision(G, range(6), 1, 1, families["K2"], 2)
        after = cp.packing_decision(G, red.Z, 1, 1, families["K2"], 2)
        assert before == after


def test_dumbbell_signature_removals_sound(families):
    G = dumbbell()
    cfg = CFG.with_overrides(close_t_floor=1, epsilon=0.05, separator_cap=2, record_removals=True)
    red = cp.reduce_pack_set(G, range(G.n), 2, 1, 2, families["K1"], cfg)
    assert not red.rejected
    assert red.stats["removed_signature"] >= 3
    for rem in red.stats["removals"]:
        before = list(rem["before"])
        after = [v for v in before if v != rem["z"]]
        assert cp.packing_decision(G, before, 1, 2, families["K1"], 2) == cp.packing_decision(
            G, after, 1, 2, families["K1"], 2
        )
        # removals never raise the packing number
        a_before = cp.exact_packing_number(G, before, 1, 2, families["K1"]).value
        a_after = cp.exact_packing_number(G, after, 1, 2, families["K1"]).value
        assert a_after <= a_before


def test_oracle_catches_overaggressive_pack_reduction(families):
    # sensitivity control: wiping out one whole leaf group drops the packing
    # number below the threshold, and the decision-pair check notices
    G = dumbbell()
    fam = families["K1"]
    assert cp.packing_decision(G, range(G.n), 1, 2, fam, 2)
    star2_only = list(range(10, 18))
    assert not cp.packing_decision(G, star2_only, 1, 2, fam, 2)


def test_annotated_threshold_equivalence(families):
    G = cycle(6)
    out = cp.annotated_pack_kernel(G, range(6), 2, 1, 1, families["K2"], CFG)
    assert out.status == "annotated"
    sub, old = cp.induced_subgraph(G, out.y)
    new_of = {v: i for i, v in enumerate(old)}
    z_new = [new_of[v] for v in out.z]
    assert cp.packing_decision(G, range(6), 1, 1, families["K2"], 2) == cp.packing_decision(
        sub, z_new, 1, 1, families["K2"], 2
    )


def test_annotated_k1_no_occurrence(families):
    out = cp.annotated_pack_kernel(cp.build_graph(1, []), [0], 1, 1, 1, families["K2"], CFG)
    assert out.status == "annotated"
    assert cp.exact_packing_number(cp.build_graph(1, []), [0], 1, 1, families["K2"]).value == 0


def test_annotated_empty_set_convention(families):
    out = cp.annotated_pack_kernel(path(4), [], 1, 1, 1, families["K2"], CFG)
    assert out.status == "annotated"
    assert out.z == [] and out.y == [0]


def test_full_alpha_zero_detection(families):
    assert cp.full_pack_kernel(cycle(6), 2, 1, 1, families["K3"], CFG).status == "alpha_zero"
    assert cp.full_pack_kernel(cycle(6), 2, 0, 2, families["K2"], CFG).status == "alpha_zero"
    assert cp.full_pack_kernel(cycle(6), 2, 1, 1, families["K2"], CFG).status != "alpha_zero"


def test_full_c6_k2_biconditional(families):
    G = cycle(6)
    for k in (2, 3):
        out = cp.full_pack_kernel(G, k, 1, 1, families["K2"], CFG)
        assert out.status == "full" and out.k_prime == k + 1
        assert cp.verify_kernel_equivalence("pack", G, k, out.graph, out.k_prime, 1, 1, families["K2"])


@pytest.mark.parametrize("p,r", [(1, 1), (0, 2), (1, 2), (1, 3), (3, 3), (1, 4), (5, 4)])
def test_full_kernel_branches(families, p, r):
    G = cycle(8)
    fam = families["K1"]
    for k in (1, 2):
        out = cp.full_pack_kernel(G, k, p, r, fam, CFG)
        if out.status == "rejected":
            assert cp.packing_decision(G, range(8), p, r, fam, k + 1)
        else:
            assert out.status == "full"
            assert cp.verify_kernel_equivalence("pack", G, k, out.graph, out.k_prime, p, r, fam)


@pytest.mark.parametrize("r", [2, 3])
def test_gadget_path_parity(families, r):
    """Hub-to-kernel paths use floor(r/2); hub-to-gadget paths use ceil(r/2)."""
    hub_star = star(12)
    cfg = CFG.with_overrides(record_removals=True)
    out = cp.full_pack_kernel(hub_star, 1, 1, r, families["K1"], cfg)
    assert out.status == "full"
    g = out.graph
    y_size = len(out.y)
    z_size = len(out.z)
    gadget_size = out.stats["gadget_size"]
    hub = y_size + gadget_size
    dm = cp.distances(g, [hub])
    y_not_z = y_size - z_size
    if y_not_z:
        near = [v for v in range(y_size) if dm.dist[v] == r // 2]
        assert len(near) >= y_not_z
    # gadget side: designated vertex sits right after the kernel block
    assert dm.dist[y_size] == math.ceil(r / 2)
    # no vertex of the retained set Z is within r of the gadget block
    gadget_ids = list(range(y_size, y_size + gadget_size))
    zset = set(out.z)
    z_new = [i for i, v in enumerate(sorted(out.y)) if v in zset]
    if z_new:
        d = cp.set_distance(g, z_new, gadget_ids)
        assert d is None or d > r


def test_full_kernel_empty_z(families):
    # annotated set reduces away entirely at k=0 yet the kernel stays well formed
    G = cp.build_graph(4, [])
    fam = families["K1"]
    out = cp.full_pack_kernel(G, 0, 1, 1, fam, CFG)
    if out.status == "full":
        assert out.graph.n >= 1
        assert cp.verify_kernel_equivalence("pack", G, 0, out.graph, out.k_prime, 1, 1, fam)
    else:
        assert out.status == "rejected"
        assert cp.packing_decision(G, range(4), 1, 1, fam, 1)


def test_determinism(families):
    G = cycle(9)
    a = cp.full_pack_kernel(G, 2, 1, 2, families["K1"], CFG)
    b = cp.full_pack_kernel(G, 2, 1, 2, families["K1"], CFG)
    assert a.y == b.y and a.z == b.z and a.graph == b.graph and a.stats == b.stats


@given(st.integers(0, 10_000_000))
@settings(max_examples=60, deadline=None)
def test_full_kernel_random_graphs_against_oracle(families, seed):
    rng = random.Random(seed)
    G = random_graph(rng, rng.randint(2, 10), rng.uniform(0.1, 0.5))
    fam = families[rng.choice(["K1", "K2", "K3", "P3"])]
    r = rng.randint(0, 4)
    p = rng.randint(0, 2 * (r // 2) + 1)
    k = rng.randint(0, 3)
    out = cp.full_pack_kernel(G, k, p, r, fam, CFG)
    alpha_pos = cp.packing_decision(G, range(G.n), p, r, fam, 1)
    assert (out.status == "alpha_zero") == (not alpha_pos)
    if out.status == "alpha_zero":
        return
    lhs = cp.packing_decision(G, range(G.n), p, r, fam, k)
    if out.status == "rejected":
        assert cp.packing_decision(G, range(G.n), p, r, fam, k + 1)
    else:
        assert out.status == "full"
        assert lhs == cp.packing_decision(out.graph, range(out.graph.n), p, r, fam, k + 1)
