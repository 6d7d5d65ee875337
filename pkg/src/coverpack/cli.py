"""Command-line interface.

Subcommands: kernelize, solve, verify, gen, bench.
Exit codes: 0 success, 1 usage error, 2 verification failure,
3 internal cap exhaustion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import KernelConfig
from .graph import GraphError
from .kernel_cover import full_cover_kernel
from .kernel_pack import full_pack_kernel
from .oracle import (
    OracleCapExceeded,
    exact_cover_number,
    exact_packing_number,
    verify_kernel_equivalence,
)
from .workbench import (
    FormatError,
    generate_instance,
    parse_family,
    parse_graph,
    parse_vertex_list,
    run_experiment,
    write_graph,
)

USAGE_ERROR, VERIFY_FAILURE, CAP_EXHAUSTED = 1, 2, 3


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_config(args) -> KernelConfig:
    cfg = KernelConfig()
    overrides = {}
    if getattr(args, "epsilon", None) is not None:
        overrides["epsilon"] = args.epsilon
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    return cfg.with_overrides(**overrides) if overrides else cfg


def _cmd_kernelize(args) -> int:
    G = parse_graph(_read(args.graph))
    family = parse_family(_read(args.family))
    cfg = _load_config(args)
    if args.problem == "cover":
        if args.annotated:
            from .kernel_cover import annotated_cover_kernel

            A = parse_vertex_list(_read(args.annotated), G.n)
            out = annotated_cover_kernel(G, A, args.k, args.p, args.r, family, cfg)
        else:
            out = full_cover_kernel(G, args.k, args.p, args.r, family, cfg)
    else:
        if args.annotated:
            from .kernel_pack import annotated_pack_kernel

            A = parse_vertex_list(_read(args.annotated), G.n)
            out = annotated_pack_kernel(G, A, args.k, args.p, args.r, family, cfg)
        else:
            out = full_pack_kernel(G, args.k, args.p, args.r, family, cfg)
    meta = {
        "status": out.status,
        "k": args.k,
        "k_prime": out.k_prime,
        "y_size": len(out.y) if out.y is not None else None,
        "z_size": len(out.z) if out.z is not None else None,
    }
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        if out.graph is not None:
            with open(os.path.join(args.out, "kernel.graph"), "w", encoding="utf-8") as fh:
                fh.write(write_graph(out.graph))
        if out.y is not None:
            from .graph import induced_subgraph

            sub, old_ids = induced_subgraph(G, out.y)
            with open(os.path.join(args.out, "annotated.graph"), "w", encoding="utf-8") as fh:
                fh.write(write_graph(sub))
            zset = set(out.z or [])
            with open(os.path.join(args.out, "annotated.set"), "w", encoding="utf-8") as fh:
                fh.write("".join(f"{i}\n" for i, v in enumerate(old_ids) if v in zset))
        with open(os.path.join(args.out, "meta.json"), "w", encoding="utf-8") as fh:
            json.dump(meta, fh, sort_keys=True, indent=2)
            fh.write("\n")
    print(json.dumps(meta, sort_keys=True))
    return CAP_EXHAUSTED if out.status == "fallback" else 0


def _cmd_solve(args) -> int:
    G = parse_graph(_read(args.graph))
    family = parse_family(_read(args.family))
    A = parse_vertex_list(_read(args.annotated), G.n) if args.annotated else list(range(G.n))
    try:
        if args.problem == "cover":
            res = exact_cover_number(G, A, args.p, args.r, family, cap=args.cap)
        else:
            res = exact_packing_number(G, A, args.p, args.r, family)
    except OracleCapExceeded as exc:
        print(json.dumps({"error": str(exc)}))
        return CAP_EXHAUSTED
    witness = res.witness
    if args.problem == "pack" and witness is not None:
        witness = [list(w) for w in witness]
    elif witness is not None:
        witness = list(witness)
    print(json.dumps({"value": res.value, "witness": witness, "exhausted": res.exhausted}, sort_keys=True))
    return 0 if res.exhausted else CAP_EXHAUSTED


def _cmd_verify(args) -> int:
    G = parse_graph(_read(args.original))
    G2 = parse_graph(_read(args.kernel))
    family = parse_family(_read(args.family))
    try:
        ok = verify_kernel_equivalence(args.problem, G, args.k, G2, args.k2, args.p, args.r, family)
    except OracleCapExceeded as exc:
        print(json.dumps({"error": str(exc)}))
        return CAP_EXHAUSTED
    print(json.dumps({"equivalent": ok}))
    return 0 if ok else VERIFY_FAILURE


def _cmd_gen(args) -> int:
    params = {}
    for item in args.param or []:
        key, _, value = item.partition("=")
        if not value:
            raise FormatError(f"generator parameter {item!r} is not key=value")
        params[key] = int(value)
    G = generate_instance(args.kind, params, args.seed)
    text = write_graph(G)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_bench(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        config = json.load(fh)
    report = run_experiment(config, base_dir=os.path.dirname(os.path.abspath(args.config)))
    text = report.to_jsonl()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if any(row.get("oracle_ok") is False for row in report.rows):
        return VERIFY_FAILURE
    if report.failures:
        return VERIFY_FAILURE
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coverpack")
    sub = parser.add_subparsers(dest="command", required=True)

    kern = sub.add_parser("kernelize", help="run a kernelization")
    kern.add_argument("--problem", choices=["cover", "pack"], required=True)
    kern.add_argument("--graph", required=True)
    kern.add_argument("--family", required=True)
    kern.add_argument("-p", type=int, required=True)
    kern.add_argument("-r", type=int, required=True)
    kern.add_argument("-k", type=int, required=True)
    kern.add_argument("--annotated")
    kern.add_argument("--epsilon", type=float)
    kern.add_argument("--seed", type=int)
    kern.add_argument("--out")
    kern.set_defaults(func=_cmd_kernelize)

    solve = sub.add_parser("solve", help="exact solve at desk scale")
    solve.add_argument("--exact", action="store_true", required=True)
    solve.add_argument("--problem", choices=["cover", "pack"], required=True)
    solve.add_argument("--graph", required=True)
    solve.add_argument("--family", required=True)
    solve.add_argument("-p", type=int, required=True)
    solve.add_argument("-r", type=int, required=True)
    solve.add_argument("--annotated")
    solve.add_argument("--cap", type=int, default=10)
    solve.set_defaults(func=_cmd_solve)

    verify = sub.add_parser("verify", help="check kernel equivalence by oracle")
    verify.add_argument("--problem", choices=["cover", "pack"], required=True)
    verify.add_argument("--original", required=True)
    verify.add_argument("--kernel", required=True)
    verify.add_argument("--family", required=True)
    verify.add_argument("--k", type=int, required=True)
    verify.add_argument("--k2", type=int, required=True)
    verify.add_argument("-p", type=int, required=True)
    verify.add_argument("-r", type=int, required=True)
    verify.set_defaults(func=_cmd_verify)

    gen = sub.add_parser("gen", help="generate a benchmark graph")
    gen.add_argument("--kind", required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--param", action="append", metavar="KEY=VALUE")
    gen.add_argument("--out")
    gen.set_defaults(func=_cmd_gen)

    bench = sub.add_parser("bench", help="run an experiment config")
    bench.add_argument("--config", required=True)
    bench.add_argument("--out")
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (FormatError, GraphError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
