import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import coverpack as cp
from conftest import brute_distance, complete, cycle, path, random_graph


def test_build_k2():
    G = cp.build_graph(2, [(0, 1)])
    assert G.n == 2 and G.edges() == [(0, 1)]


def test_build_path_chain():
    G = path(5)
    assert G.num_edges == 4
    assert G.adj(2) == (1, 3)


def test_build_duplicate_edges_collapse():
    G = cp.build_graph(3, [(0, 1), (1, 0)])
    assert G.num_edges == 1


@pytest.mark.parametrize(
    "n,edges",
    [(2, [(0, 2)]), (2, [(0, 0)]), (0, []), (3, [(-1, 0)])],
)
def test_build_rejects_bad_input(n, edges):
    with pytest.raises(cp.GraphError):
        cp.build_graph(n, edges)


def test_distances_path_end_to_end():
    dm = cp.distances(path(5), [0])
    assert dm.dist[4] == 4


def test_distances_cycle_capped():
    dm = cp.distances(cycle(6), [0], cap=2)
    finite = {v for v in range(6) if dm.dist[v] is not None}
    assert finite == {0, 1, 2, 4, 5}
    assert dm.dist[3] is None


def test_distances_full_source_all_zero():
    G = cycle(5)
    dm = cp.distances(G, range(5))
    assert all(d == 0 for d in dm.dist)


def test_distances_requires_source():
    with pytest.raises(cp.GraphError):
        cp.distances(path(3), [])


def test_ball_examples():
    assert cp.ball(cycle(6), [0], 2) == [0, 1, 2, 4, 5]
    assert cp.ball(path(5), [2], 1) == [1, 2, 3]
    assert cp.ball(path(5), [], 3) == []
    assert cp.ball(path(5), [1, 3], 0) == [1, 3]


def test_induced_subgraph_path_prefix():
    H, old = cp.induced_subgraph(path(5), [0, 1, 2])
    assert old == (0, 1, 2)
    assert H.edges() == [(0, 1), (1, 2)]


def test_induced_subgraph_independent_triple():
    H, _ = cp.induced_subgraph(cycle(6), [0, 2, 4])
    assert H.num_edges == 0


def test_induced_subgraph_identity():
    G = cycle(5)
    H, old = cp.induced_subgraph(G, range(5))
    assert H == G and old == (0, 1, 2, 3, 4)


def test_induced_subgraph_rejects_empty():
    with pytest.raises(cp.GraphError):
        cp.induced_subgraph(path(3), [])


def test_q_subdivision_triangle_to_nonagon():
    H = cp.q_subdivision(complete(3), 3)
    assert H.n == 9
    assert all(H.degree(v) == 2 for v in range(9))
    assert cp.is_connected(H)


def test_q_subdivision_identity_at_one():
    G = complete(2)
    assert cp.q_subdivision(G, 1) == G


def test_q_subdivision_p3_to_p5():
    H = cp.q_subdivision(path(3), 2)
    assert H.n == 5
    degs = sorted(H.degree(v) for v in range(5))
    assert degs == [1, 1, 2, 2, 2]


def test_q_subdivision_rejects_zero():
    with pytest.raises(cp.GraphError):
        cp.q_subdivision(path(2), 0)


def test_attach_pendant_on_k1():
    G, far = cp.attach_pendant_path(cp.build_graph(1, []), 0, 1)
    assert G.n == 2 and far == 1 and G.edges() == [(0, 1)]


def test_attach_pendant_distance():
    G, far = cp.attach_pendant_path(complete(2), 0, 2)
    assert cp.distances(G, [far]).dist[1] == 3


def test_attach_two_pendant_leaves():
    G, _ = cp.attach_pendant_path(path(3), 1, 1)
    G, _ = cp.attach_pendant_path(G, 1, 1)
    assert G.degree(1) == 4


def test_set_distance():
    assert cp.set_distance(cycle(6), [0, 1], [3, 4], cap=1) is None
    assert cp.set_distance(cycle(6), [0, 1], [3, 4]) == 2


graphs = st.integers(2, 9).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
)


def _mk(spec):
    n, pairs = spec
    return cp.build_graph(n, [(u, v) for u, v in pairs if u != v])


@given(graphs)
@settings(max_examples=60, deadline=None)
def test_adjacency_symmetric_and_loop_free(spec):
    G = _mk(spec)
    for v in range(G.n):
        assert v not in G.adj(v)
        for u in G.adj(v):
            assert v in G.adj(u)


@given(graphs, st.integers(0, 3))
@settings(max_examples=60, deadline=None)
def test_ball_matches_distance_threshold(spec, r):
    G = _mk(spec)
    D = [0, G.n - 1]
    dm = cp.distances(G, D, cap=r)
    assert cp.ball(G, D, r) == [v for v in range(G.n) if dm.dist[v] is not None and dm.dist[v] <= r]


@given(graphs)
@settings(max_examples=40, deadline=None)
def test_distance_lipschitz_along_edges(spec):
    G = _mk(spec)
    dm = cp.distances(G, [0])
    for u, v in G.edges():
        du, dv = dm.dist[u], dm.dist[v]
        if du is not None and dv is not None:
            assert abs(du - dv) <= 1


@given(graphs, st.integers(1, 3))
@settings(max_examples=30, deadline=None)
def test_subdivision_scales_distances(spec, q):
    G = _mk(spec)
    H = cp.q_subdivision(G, q)
    assert H.n == G.n + (q - 1) * G.num_edges
    for u in range(G.n):
        for v in range(u + 1, G.n):
            d = brute_distance(G, u, v)
            dh = brute_distance(H, u, v)
            assert (d is None and dh is None) or dh == q * d


@given(st.integers(0, 997))
@settings(max_examples=25, deadline=None)
def test_induced_subgraph_roundtrip_adjacency(seed):
    import random

    rng = random.Random(seed)
    G = random_graph(rng, 8, 0.3)
    Y = [v for v in range(8) if rng.random() < 0.7] or [0]
    H, old = cp.induced_subgraph(G, Y)
    for i in range(H.n):
        for j in H.adj(i):
            assert old[j] in G.adj(old[i])
    yset = set(Y)
    expected = {(min(u, v), max(u, v)) for u, v in G.edges() if u in yset and v in yset}
    got = {(min(old[i], old[j]), max(old[i], old[j])) for i, j in H.edges()}
    assert got == expected
