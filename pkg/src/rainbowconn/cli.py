"""Command-line interface.

Subcommands: ``generate`` (random models to edge-list text), ``color-edges``
and ``color-vertices`` (colouring pipelines to JSON), ``verify`` (exact or
certificate verification, exit code 0/1), ``experiment`` (seeded batch runs
to CSV) and ``report`` (scaling summary JSON plus figures).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import seeds
from .edge_colouring import (
    EdgeColouring,
    EdgeSplit,
    expander_split,
    rc_min_degree,
    rc_random_regular,
    split_colouring,
)
from .errors import RainbowError
from .experiments import ExperimentConfig, read_csv, run_experiment, scaling_report, write_csv
from .graph_io import format_edge_list, read_edge_list, to_dot, write_edge_list
from .models import (
    cycle_plus_perfect_matching,
    oplus_union,
    random_hamiltonian_cycle,
    random_matching,
    sample_pairing,
    sample_regular_fast,
    sample_simple_regular,
    subdivide_cycle_model,
)
from .vertex_colouring import (
    PartitionParams,
    VertexColouring,
    VertexSplit,
    lll_partition,
    stitch_components,
    vertex_split_colouring,
)
from .verify import (
    check_certificate,
    is_rainbow_edge_connected_exact,
    is_rainbow_vertex_connected_exact,
)

GENERATE_MODELS = (
    "pairing",
    "simple-regular",
    "regular",
    "hamcycle",
    "matching",
    "oplus",
    "theorem5",
    "cycle+pm",
)


def _parse_part(token: str, n: int):
    """Part spec for oplus: 'hamcycle', 'matching:m', 'regular:r', 'simple-regular:r'."""
    name, _, arg = token.partition(":")
    if name == "hamcycle":
        return lambda rng: _with_child(rng, lambda s: random_hamiltonian_cycle(n, s))
    if name == "matching":
        m = int(arg)
        return lambda rng: _with_child(rng, lambda s: random_matching(n, m, s))
    if name == "regular":
        r = int(arg)
        return lambda rng: _with_child(rng, lambda s: sample_regular_fast(n, r, s))
    if name == "simple-regular":
        r = int(arg)
        return lambda rng: _with_child(rng, lambda s: sample_simple_regular(n, r, s))
    raise SystemExit(f"unknown oplus part spec {token!r}")


def _with_child(rng, fn):
    child = int(rng.integers(0, seeds.MAX_SEED, dtype="uint64"))
    return fn(child)


def _cmd_generate(args) -> int:
    record = None
    if args.model == "pairing":
        state = sample_pairing(args.n, args.r, args.seed)
        graph = state.multigraph
        record = {"pairs": [list(p) for p in state.pairs]}
    elif args.model == "simple-regular":
        graph = sample_simple_regular(args.n, args.r, args.seed)
    elif args.model == "regular":
        graph = sample_regular_fast(args.n, args.r, args.seed)
    elif args.model == "hamcycle":
        graph = random_hamiltonian_cycle(args.n, args.seed)
    elif args.model == "matching":
        graph = random_matching(args.n, args.m, args.seed)
    elif args.model == "oplus":
        if not args.parts:
            raise SystemExit("--parts is required for the oplus model")
        parts = [_parse_part(tok, args.n) for tok in args.parts.split(",")]
        graph, part_edges = oplus_union(parts, args.seed)
        record = {
            "parts": [sorted(list(e) for e in edges) for edges in part_edges]
        }
    elif args.model == "theorem5":
        graph, rec = subdivide_cycle_model(args.n, args.seed)
        record = {
            "b": list(rec.b),
            "matching": [list(p) for p in rec.matching],
            "gaps": list(rec.gaps.y),
        }
    else:  # cycle+pm
        graph = cycle_plus_perfect_matching(args.n, args.seed)
    text = format_edge_list(graph)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(
                {"model": args.model, "n": graph.n, "seed": args.seed, "record": record},
                fh,
                indent=2,
            )
            fh.write("\n")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(graph))
    return 0


def _load_split(path, g) -> EdgeSplit:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    e1 = frozenset((min(u, v), max(u, v)) for u, v in data["edges1"])
    e2 = frozenset((min(u, v), max(u, v)) for u, v in data["edges2"])
    return EdgeSplit(g, e1, e2)


def _cmd_color_edges(args) -> int:
    if args.method == "regular":
        if args.n is None or args.r is None:
            raise SystemExit("--n and --r are required for method=regular")
        g, colouring = rc_random_regular(args.n, args.r, args.seed)
    else:
        if not args.input:
            raise SystemExit("--input is required for this method")
        g = read_edge_list(args.input)
        if args.method == "mindeg":
            colouring = rc_min_degree(g)
        elif args.method == "lemma1":
            if not args.split:
                raise SystemExit("--split is required for method=lemma1")
            colouring = split_colouring(_load_split(args.split, g))
        else:  # expander
            split = expander_split(
                g, args.lam, args.seed, max_retries=args.max_retries
            )
            colouring = split_colouring(split)
    payload = colouring.to_payload()
    payload["n"] = g.n
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")
    if args.graph_out:
        write_edge_list(g, args.graph_out)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(g, edge_colours=colouring.colours))
    print(
        f"coloured {len(g.edges)} edges with {colouring.colours_used} colours "
        f"(bound {payload['bound']})"
    )
    return 0


def _cmd_color_vertices(args) -> int:
    if args.input:
        g = read_edge_list(args.input)
    else:
        if args.n is None or args.r is None:
            raise SystemExit("--input or both --n/--r are required")
        g = sample_regular_fast(args.n, args.r, seeds.derive_seed(args.seed, "graph"))
    params = PartitionParams(
        gamma=args.gamma,
        max_resamples=args.max_resamples,
        best_effort=args.best_effort,
    )
    partition = lll_partition(g, params, args.seed)
    u1, u2 = partition.sides
    w1 = stitch_components(g, u1)
    w2 = stitch_components(g, u2)
    split = VertexSplit(g, frozenset(u1) | w1, frozenset(u2) | w2)
    colouring = vertex_split_colouring(split)
    payload = colouring.to_payload()
    payload["n"] = g.n
    payload["stitch_sizes"] = [len(w1), len(w2)]
    payload["partition_resamples"] = partition.resamples
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")
    if args.graph_out:
        write_edge_list(g, args.graph_out)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(g, vertex_colours=colouring.colours))
    print(
        f"coloured {g.n} vertices with {colouring.colours_used} colours "
        f"(bound {payload['bound']})"
    )
    return 0


def _cmd_verify(args) -> int:
    g = read_edge_list(args.graph)
    with open(args.colouring, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    kind = payload.get("kind")
    if kind == "edge":
        colouring = EdgeColouring.from_payload(payload)
    elif kind == "vertex":
        colouring = VertexColouring.from_payload(payload)
    else:
        raise SystemExit(f"colouring JSON has unknown kind {kind!r}")
    if args.mode == "exact":
        if kind == "edge":
            report = is_rainbow_edge_connected_exact(g, colouring)
        else:
            report = is_rainbow_vertex_connected_exact(g, colouring)
    else:
        pairs = "all" if args.mode == "certificate" else "sample"
        report = check_certificate(
            g, colouring, pairs=pairs, sample_size=args.pairs, seed=args.seed
        )
    json.dump(report.to_payload(), sys.stdout)
    sys.stdout.write("\n")
    return 0 if report.verdict else 1


def _cmd_experiment(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        config = ExperimentConfig.from_json(fh.read())
    rows = run_experiment(config)
    write_csv(rows, config, args.out)
    failures = sum(1 for row in rows if row.status != "ok")
    print(f"wrote {len(rows)} rows to {args.out} ({failures} failures)")
    return 0


def _cmd_report(args) -> int:
    import os

    rows = read_csv(args.infile)
    summary = scaling_report(rows)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    if not args.no_plots:
        from .plots import render_report_figures

        outdir = args.plots_dir or os.path.splitext(args.out)[0] + "_figures"
        written = render_report_figures(summary, outdir)
        for path in written:
            print(f"figure: {path}")
    print(f"summary: {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainbowconn",
        description="Rainbow colourings of graphs via splitting constructions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a random graph model")
    p.add_argument("--model", required=True, choices=GENERATE_MODELS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parts", help="comma list for oplus, e.g. hamcycle,matching:3")
    p.add_argument("--out", help="edge-list output path (default stdout)")
    p.add_argument("--json", help="write the construction record as JSON")
    p.add_argument("--dot", help="write a DOT rendering")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("color-edges", help="rainbow edge colouring pipelines")
    p.add_argument("--input", help="edge-list graph file")
    p.add_argument(
        "--method", required=True, choices=("lemma1", "mindeg", "expander", "regular")
    )
    p.add_argument("--split", help="JSON with edges1/edges2 (method=lemma1)")
    p.add_argument("--lambda", dest="lam", type=float, default=0.5)
    p.add_argument("--max-retries", type=int, default=100)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="colouring JSON path")
    p.add_argument("--graph-out", help="also write the graph (method=regular)")
    p.add_argument("--dot", help="write a coloured DOT rendering")
    p.set_defaults(func=_cmd_color_edges)

    p = sub.add_parser("color-vertices", help="rainbow vertex colouring pipeline")
    p.add_argument("--input", help="edge-list graph file (must be regular)")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--gamma", type=float, default=0.11)
    p.add_argument("--max-resamples", type=int)
    p.add_argument("--best-effort", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--graph-out", help="also write the (generated) graph")
    p.add_argument("--dot", help="write a coloured DOT rendering")
    p.set_defaults(func=_cmd_color_vertices)

    p = sub.add_parser("verify", help="verify a colouring against its graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--colouring", required=True)
    p.add_argument(
        "--mode", default="certificate", choices=("exact", "certificate", "sample")
    )
    p.add_argument("--pairs", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("experiment", help="run a seeded experiment grid")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("report", help="summarize results CSV, render figures")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--plots-dir")
    p.add_argument("--no-plots", action="store_true")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RainbowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
