"""File formats, instance generators, and the experiment runner.

Graph files: '#' comment lines, a "n m" header line, then m lines "u v" with
0 <= u < v < n.  Annotated-set files hold one vertex id per line.  Family
files hold one token per line: a named shortcut (K1..K4, P3, P4, C4, C5) or
"graph t" followed by edge lines over 0..t-1.

Reports are emitted as one JSON object per row with sorted keys, so two runs
with the same config are byte-identical except for the timing fields.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from .config import KernelConfig, config_from_dict
from .graph import Graph, GraphError, build_graph, q_subdivision, vertex_set
from .kernel_cover import full_cover_kernel
from .kernel_pack import full_pack_kernel
from .oracle import OracleCapExceeded, verify_kernel_equivalence
from .patterns import PatternFamily
from .sparsity import degeneracy_order, wcol_of_order


class FormatError(ValueError):
    """Malformed input file; the message carries the line number."""


# ---------------------------------------------------------------------------
# graph files


def parse_graph(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2:
                raise FormatError(f"line {lineno}: expected header 'n m', got {raw!r}")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer header {raw!r}") from None
            if n < 1 or m < 0:
                raise FormatError(f"line {lineno}: invalid header values n={n}, m={m}")
            continue
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected edge 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer edge {raw!r}") from None
        if u == v:
            raise FormatError(f"line {lineno}: loop edge at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {lineno}: vertex id out of range for n={n}")
        edges.append((min(u, v), max(u, v)))
    if n is None:
        raise FormatError("line 1: missing header 'n m'")
    if len(edges) != m:
        raise FormatError(f"header announced {m} edges but file carries {len(edges)}")
    return build_graph(n, edges)


def write_graph(G: Graph) -> str:
    lines = [f"{G.n} {G.num_edges}"]
    lines += [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def parse_vertex_list(text: str, n: int) -> list[int]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            v = int(line)
        except ValueError:
            raise FormatError(f"line {lineno}: expected a vertex id, got {raw!r}") from None
        if not 0 <= v < n:
            raise FormatError(f"line {lineno}: vertex id {v} out of range for n={n}")
        out.append(v)
    return vertex_set(out, n)


# ---------------------------------------------------------------------------
# families


def _named_pattern(token: str) -> Graph:
    if token.startswith("K"):
        size = int(token[1:])
        return build_graph(size, [(i, j) for i in range(size) for j in range(i + 1, size)])
    if token.startswith("P"):
        size = int(token[1:])
        return build_graph(size, [(i, i + 1) for i in range(size - 1)])
    size = int(token[1:])  # C...
    return build_graph(size, [(i, (i + 1) % size) for i in range(size)])


FAMILY_SHORTCUTS = {"K1", "K2", "K3", "K4", "P3", "P4", "C4", "C5"}


def parse_family(text: str, d_max: int = 6) -> PatternFamily:
    members: list[Graph] = []
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        i += 1
        if not line or line.startswith("#"):
            continue
        if line in FAMILY_SHORTCUTS:
            members.append(_named_pattern(line))
            continue
        parts = line.split()
        if parts[0] != "graph" or len(parts) != 2:
            raise FormatError(f"line {i}: expected a family shortcut or 'graph t', got {line!r}")
        try:
            t = int(parts[1])
        except ValueError:
            raise FormatError(f"line {i}: non-integer order in {line!r}") from None
        if not 1 <= t <= d_max:
            raise FormatError(f"line {i}: member order {t} outside 1..{d_max}")
        edges = []
        while i < len(lines):
            nxt = lines[i].strip()
            if not nxt or nxt.startswith("#"):
                i += 1
                continue
            bits = nxt.split()
            if len(bits) != 2 or not all(b.lstrip("-").isdigit() for b in bits):
                break
            u, v = int(bits[0]), int(bits[1])
            if not (0 <= u < t and 0 <= v < t) or u == v:
                raise FormatError(f"line {i + 1}: bad member edge {nxt!r}")
            edges.append((u, v))
            i += 1
        members.append(build_graph(t, edges))
    if not members:
        raise FormatError("family file names no members")
    try:
        return PatternFamily(members, d_max=d_max)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


# ---------------------------------------------------------------------------
# generators


def generate_instance(kind: str, params: dict, seed: int = 0) -> Graph:
    """Deterministic benchmark graphs; identical (kind, params, seed) always
    produce the identical graph."""
    if kind == "grid":
        w, h = int(params["w"]), int(params["h"])
        if w < 1 or h < 1:
            raise ValueError("grid needs positive dimensions")
        idx = lambda i, j: i * h + j
        edges = []
        for i in range(w):
            for j in range(h):
                if j + 1 < h:
                    edges.append((idx(i, j), idx(i, j + 1)))
                if i + 1 < w:
                    edges.append((idx(i, j), idx(i + 1, j)))
        return build_graph(w * h, edges)
    if kind == "cycle":
        n = int(params["n"])
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "path":
        n = int(params["n"])
        if n < 1:
            raise ValueError("path needs n >= 1")
        return build_graph(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "tree-random":
        n = int(params["n"])
        if n < 1:
            raise ValueError("tree needs n >= 1")
        rng = random.Random(seed)
        return build_graph(n, [(rng.randrange(i), i) for i in range(1, n)])
    if kind == "subdivided-clique":
        c, q = int(params["c"]), int(params["q"])
        if c < 2 or q < 0:
            raise ValueError("subdivided clique needs c >= 2, q >= 0")
        clique = build_graph(c, [(i, j) for i in range(c) for j in range(i + 1, c)])
        # q counts internal vertices per edge, i.e. paths of length q+1
        return q_subdivision(clique, q + 1)
    if kind == "sparse-random":
        n = int(params["n"])
        m = int(params["m"])
        max_degree = int(params.get("max_degree", 4))
        if n < 1 or m < 0 or max_degree < 1:
            raise ValueError("sparse-random needs n >= 1, m >= 0, max_degree >= 1")
        rng = random.Random(seed)
        candidates = [(i, j) for i in range(n) for j in range(i + 1, n)]
        rng.shuffle(candidates)
        deg = [0] * n
        edges = []
        for u, v in candidates:
            if len(edges) >= m:
                break
            if deg[u] < max_degree and deg[v] < max_degree:
                edges.append((u, v))
                deg[u] += 1
                deg[v] += 1
        return build_graph(n, edges)
    raise ValueError(f"unknown generator kind: {kind!r}")


# ---------------------------------------------------------------------------
# experiment runner


@dataclass
class Report:
    rows: list[dict] = field(default_factory=list)
    config_echo: dict = field(default_factory=dict)
    failures: int = 0

    def to_jsonl(self) -> str:
        out = [json.dumps({"type": "config", **self.config_echo}, sort_keys=True)]
        out += [json.dumps({"type": "row", **row}, sort_keys=True) for row in self.rows]
        return "\n".join(out) + "\n"


def _load_graph_spec(spec, base_dir: str | None) -> Graph:
    import os

    if "file" in spec:
        path = spec["file"]
        if base_dir and not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        with open(path, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    gen = dict(spec["generator"])
    kind = gen.pop("kind")
    seed = gen.pop("seed", 0)
    return generate_instance(kind, gen, seed)


def _load_family_spec(spec, base_dir: str | None) -> PatternFamily:
    import os

    if isinstance(spec, str):
        return parse_family(spec)
    if "file" in spec:
        path = spec["file"]
        if base_dir and not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        with open(path, encoding="utf-8") as fh:
            return parse_family(fh.read())
    return parse_family(spec["inline"])


def run_experiment(config: dict, base_dir: str | None = None) -> Report:
    """Run the kernelizations named by the config; per-row failures are
    recorded and the run continues.  Rows keep instance order regardless of
    runtime, so reports are schema-stable."""
    cfg = config_from_dict(config.get("config"))
    oracle_enabled = bool(config.get("oracle", False))
    oracle_cap = int(config.get("oracle_size_cap", 40))
    wcol_cap = int(config.get("wcol_diag_cap", 2000))
    report = Report(config_echo={"config": cfg.to_dict(), "oracle": oracle_enabled})
    for index, inst in enumerate(config.get("instances", [])):
        row: dict = {"index": index, "problem": inst["problem"]}
        started = time.perf_counter()
        try:
            G = _load_graph_spec(inst["graph"], base_dir)
            family = _load_family_spec(inst["family"], base_dir)
            p, r, k = int(inst["p"]), int(inst["r"]), int(inst["k"])
            row.update({"n": G.n, "p": p, "r": r, "k": k})
            if inst["problem"] == "cover":
                out = full_cover_kernel(G, k, p, r, family, cfg)
            elif inst["problem"] == "pack":
                out = full_pack_kernel(G, k, p, r, family, cfg)
            else:
                raise ValueError(f"unknown problem {inst['problem']!r}")
            row.update(
                {
                    "status": out.status,
                    "k_prime": out.k_prime,
                    "y_size": len(out.y) if out.y is not None else None,
                    "z_size": len(out.z) if out.z is not None else None,
                    "gprime_size": out.graph.n if out.graph is not None else None,
                }
            )
            if G.n <= wcol_cap:
                order = degeneracy_order(G)
                row["wcol"] = {str(rr): wcol_of_order(G, order, rr) for rr in sorted({r, 2 * r + 1})}
            row["oracle_ok"] = None
            if oracle_enabled and G.n <= oracle_cap:
                from .oracle import cover_decision, packing_decision

                if out.status == "full" and out.graph.n <= oracle_cap:
                    row["oracle_ok"] = verify_kernel_equivalence(
                        inst["problem"], G, k, out.graph, out.k_prime, p, r, family
                    )
                elif out.status == "rejected":
                    if inst["problem"] == "cover":
                        row["oracle_ok"] = not cover_decision(G, range(G.n), p, r, family, k)
                    else:
                        row["oracle_ok"] = packing_decision(G, range(G.n), p, r, family, k + 1)
                elif out.status == "alpha_zero":
                    row["oracle_ok"] = not packing_decision(G, range(G.n), p, r, family, 1)
                if row["oracle_ok"] is False:
                    report.failures += 1
        except (GraphError, FormatError, OracleCapExceeded, ValueError, OSError) as exc:
            row["status"] = "error"
            row["error"] = f"{type(exc).__name__}: {exc}"
            report.failures += 1
        row["ms"] = round((time.perf_counter() - started) * 1000.0, 3)
        report.rows.append(row)
    return report
