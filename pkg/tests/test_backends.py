"""Parity between the compiled distance core and the pure-Python twin."""

import random
from array import array

import pytest

import coverpack as cp
from coverpack import _pykern

try:
    from coverpack import _ckern
except ImportError:
    _ckern = None

needs_ext = pytest.mark.skipif(_ckern is None, reason="compiled core not built")


def _csr(G: cp.Graph):
    return G.n, *G.csr


def _random_graph(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 30)
    edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.2}
    return cp.build_graph(n, edges), rng


@needs_ext
@pytest.mark.parametrize("seed", range(12))
def test_bfs_limited_parity(seed):
    G, rng = _random_graph(seed)
    n, indptr, nbrs = _csr(G)
    sources = tuple(sorted(rng.sample(range(n), rng.randint(1, min(3, n)))))
    for cap in (-1, 0, 1, 3):
        a = _pykern.bfs_limited(n, indptr, nbrs, sources, cap)
        b = _ckern.bfs_limited(n, indptr, nbrs, sources, cap)
        assert list(a) == list(b)


@needs_ext
@pytest.mark.parametrize("seed", range(12))
def test_bfs_avoiding_parity(seed):
    G, rng = _random_graph(seed + 100)
    n, indptr, nbrs = _csr(G)
    blocked = bytearray(n)
    for v in rng.sample(range(n), n // 3):
        blocked[v] = 1
    sources = [v for v in range(n) if not blocked[v]]
    src = rng.choice(sources)
    for cap in (-1, 1, 4):
        a = _pykern.bfs_avoiding(n, indptr, nbrs, src, bytes(blocked), cap)
        b = _ckern.bfs_avoiding(n, indptr, nbrs, src, bytes(blocked), cap)
        assert list(a[0]) == list(b[0])
        assert list(a[1]) == list(b[1])


@needs_ext
def test_blocked_source_rejected_by_both():
    G = cp.build_graph(3, [(0, 1), (1, 2)])
    n, indptr, nbrs = _csr(G)
    blocked = bytes([1, 0, 0])
    with pytest.raises(ValueError):
        _pykern.bfs_avoiding(n, indptr, nbrs, 0, blocked, -1)
    with pytest.raises(ValueError):
        _ckern.bfs_avoiding(n, indptr, nbrs, 0, blocked, -1)


@needs_ext
def test_ball_of_parity():
    G = cp.generate_instance("grid", {"w": 5, "h": 5})
    n, indptr, nbrs = _csr(G)
    for v in (0, 12, 24):
        for radius in (0, 1, 3):
            assert _pykern.ball_of(n, indptr, nbrs, v, radius) == list(
                _ckern.ball_of(n, indptr, nbrs, v, radius)
            )


def test_backend_identity_exported():
    assert cp.BACKEND in ("c", "python")


_SCENARIO = r"""
import json
import coverpack as cp

rows = []
cfg = cp.KernelConfig()
for fam_name, problem, p, r, k, kind, params in [
    ("K1", "cover", 1, 1, 2, "cycle", {"n": 9}),
    ("K2", "cover", 1, 1, 1, "grid", {"w": 3, "h": 3}),
    ("K1", "pack", 1, 2, 2, "cycle", {"n": 8}),
    ("K2", "pack", 1, 1, 2, "sparse-random", {"n": 12, "m": 15, "max_degree": 4, "seed": 3}),
]:
    G = cp.generate_instance(kind, params, seed=params.get("seed", 0))
    fam = cp.parse_family(fam_name)
    if problem == "cover":
        out = cp.full_cover_kernel(G, k, p, r, fam, cfg)
    else:
        out = cp.full_pack_kernel(G, k, p, r, fam, cfg)
    rows.append({
        "status": out.status,
        "y": out.y,
        "z": out.z,
        "edges": out.graph.edges() if out.graph else None,
        "stats": {kk: vv for kk, vv in sorted(out.stats.items())},
    })
print(json.dumps(rows, sort_keys=True, default=list))
"""


@needs_ext
def test_kernels_identical_across_backends():
    import json
    import os
    import subprocess
    import sys

    outputs = {}
    for backend in ("c", "python"):
        env = dict(os.environ, COVERPACK_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, "-c", _SCENARIO], env=env, capture_output=True, text=True, check=True
        )
        outputs[backend] = json.loads(proc.stdout)
    assert outputs["c"] == outputs["python"]


def test_empty_graph_edge_cases():
    G = cp.build_graph(1, [])
    n, indptr, nbrs = _csr(G)
    assert list(_pykern.bfs_limited(n, indptr, nbrs, (0,), -1)) == [0]
