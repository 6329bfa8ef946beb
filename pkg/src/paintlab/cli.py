"""Command-line interface.

Exit codes: 0 success, 2 config/parameter error, 3 verdict failure,
4 resource cap exceeded.  All outputs are deterministic given the flags.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import bounds, indsets, solver
from .engine import play
from .errors import ConfigError, ParameterError, PaintlabError, ResourceCapError
from .experiments import (
    ExperimentConfig,
    chain_check,
    ratio_sweep,
    rows_to_csv,
    run_experiment,
    summary_to_json,
)
from .graph import Graph, gnp
from .rng import SplitStream
from .strategies import make_corrector, make_painter

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VERDICT = 3
EXIT_CAP = 4


def _write(out: str | None, text: str) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_graph(args, allow_lazy: bool = False):
    if getattr(args, "graph", None):
        return Graph.from_edge_list_text(Path(args.graph).read_text())
    if getattr(args, "gnp", None):
        parts = args.gnp.split(":")
        if len(parts) not in (2, 3):
            raise ConfigError("--gnp needs N:P or N:P:SEED")
        n, p = int(parts[0]), float(parts[1])
        seed = int(parts[2]) if len(parts) == 3 else args.seed
        g = gnp(n, p, seed)
        if not allow_lazy and not isinstance(g, Graph):
            raise ResourceCapError("graph too large to materialize for this command")
        return g
    raise ConfigError("provide --graph FILE or --gnp N:P[:SEED]")


def _cmd_gen(args) -> int:
    g = gnp(args.n, args.p, args.seed)
    if not isinstance(g, Graph):
        raise ResourceCapError("gen writes edge lists only for materializable sizes")
    _write(args.out, g.to_edge_list_text())
    return EXIT_OK


def _cmd_solve(args) -> int:
    g = _load_graph(args)
    result = {
        "n": g.n,
        "m": g.m,
        "chi": solver.chromatic_number(g),
        "chi_paint": solver.paintability(g),
    }
    if g.n <= solver.CHOOSABLE_N_CAP:
        try:
            result["chi_list"] = solver.choice_number(g)
        except ResourceCapError:
            pass
    _write(args.out, json.dumps(result, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_play(args) -> int:
    g = _load_graph(args)
    painter = make_painter(args.painter)
    corrector = make_corrector(args.corrector)
    transcript = play(g, args.budget, painter, corrector, args.seed)
    buf = io.StringIO()
    transcript.to_jsonl(buf)
    _write(args.out, buf.getvalue())
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config = ExperimentConfig.from_json(Path(args.config).read_text())
    result = run_experiment(config)
    summary_text = summary_to_json(result.summary)
    if args.format == "json":
        payload = {
            "summary": result.summary,
            "rows": [
                {k: getattr(r, k) for k in r.CSV_FIELDS} for r in result.rows
            ],
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
        _write(args.out and f"{args.out}.json", text)
    else:
        buf = io.StringIO()
        rows_to_csv(result.rows, buf)
        if args.out:
            Path(f"{args.out}.rows.csv").write_text(buf.getvalue())
            Path(f"{args.out}.summary.json").write_text(summary_text)
        else:
            sys.stdout.write(buf.getvalue())
    sys.stdout.write(summary_text)
    return EXIT_OK


def _cmd_chain_check(args) -> int:
    result = chain_check(args.n_max, args.samples, args.seed)
    lines = []
    for row in result.rows:
        chi_l = "-" if row.chi_list is None else str(row.chi_list)
        lines.append(
            f"{row.name}\tn={row.n}\tm={row.m}\tchi={row.chi}\tchi_L={chi_l}"
            f"\tchi_P={row.chi_paint}\tupper={row.upper:.4f}"
        )
    lines.append(f"checked={len(result.rows)} violations={len(result.violations)}")
    lines.extend(result.violations)
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK if result.ok else EXIT_VERDICT


def _cmd_ratio_sweep(args) -> int:
    n_list = [int(x) for x in args.n_list.split(",") if x]
    result = ratio_sweep(
        n_list,
        args.p,
        args.corrector,
        args.painter,
        args.trials,
        args.seed,
        factor=args.factor,
        slack=args.slack,
    )
    text = json.dumps(
        {
            "table": result.table,
            "non_increasing": result.non_increasing,
            "slack": result.slack,
        },
        sort_keys=True,
        indent=2,
    ) + "\n"
    _write(args.out, text)
    return EXIT_OK if result.non_increasing else EXIT_VERDICT


def _cmd_predict(args) -> int:
    rb = bounds.regime_bounds(args.n, args.p, args.omega)
    _write(args.out, json.dumps(dataclasses.asdict(rb), sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_verify_partition(args) -> int:
    g = _load_graph(args, allow_lazy=True)  # partitions work off the coin oracle
    p = args.p if args.p is not None else g.gen_p
    if p is None:
        raise ConfigError("supply --p (the graph file carries no density)")
    if args.set:
        S = np.array(sorted({int(x) for x in args.set.split(",") if x}), dtype=np.int64)
    elif args.set_size:
        stream = SplitStream(args.seed)
        S = stream.permutation(g.n)[: args.set_size]
        S = np.sort(S)
    else:
        raise ConfigError("provide --set or --set-size")
    if args.mode == "typed":
        part = indsets.medium_partition_typed(g, S, p, args.omega, args.seed)
    else:
        part = indsets.medium_partition_dense(g, S, p, args.seed)
    problems = indsets.check_partition(g, S, part, p)
    payload = {
        "mode": args.mode,
        "s0": part.s0,
        "max_type": part.max_type,
        "fallback": part.fallback,
        "parts": [
            {"type": t, "vertices": [int(v) for v in vs]} for vs, t in part.parts
        ],
        "leftover": [int(v) for v in part.leftover],
        "violations": problems,
        "ok": not problems,
    }
    _write(args.out, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return EXIT_OK if not problems else EXIT_VERDICT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="paintlab",
        description="On-line list-colouring game laboratory",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a seeded G(n,p) as an edge list")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=_cmd_gen)

    s = sub.add_parser("solve", help="exact chi / chi_L / chi_P of a small graph")
    s.add_argument("--graph", help="edge-list file")
    s.add_argument("--gnp", help="N:P[:SEED]")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=_cmd_solve)

    p = sub.add_parser("play", help="one full game, transcript as JSON lines")
    p.add_argument("--graph")
    p.add_argument("--gnp")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--painter", required=True)
    p.add_argument("--corrector", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_play)

    m = sub.add_parser("simulate", help="run a config file of seeded trials")
    m.add_argument("--config", required=True)
    m.add_argument("--out", help="output path prefix")
    m.add_argument("--format", choices=("csv", "json"), default="csv")
    m.set_defaults(func=_cmd_simulate)

    c = sub.add_parser("chain-check", help="verify chi <= chi_L <= chi_P <= chi log n + 1")
    c.add_argument("--n-max", type=int, default=8)
    c.add_argument("--samples", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_chain_check)

    r = sub.add_parser("ratio-sweep", help="mean eraser ratio vs n trend")
    r.add_argument("--n-list", required=True, help="comma-separated sizes")
    r.add_argument("--p", type=float, required=True)
    r.add_argument("--corrector", default="dense")
    r.add_argument("--painter", default="full-set")
    r.add_argument("--trials", type=int, default=5)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--factor", type=float, default=2.5)
    r.add_argument("--slack", type=float, default=0.05)
    r.add_argument("--out")
    r.set_defaults(func=_cmd_ratio_sweep)

    d = sub.add_parser("predict", help="regime constants for (n, p, omega)")
    d.add_argument("--n", type=float, required=True)
    d.add_argument("--p", type=float, required=True)
    d.add_argument("--omega", type=float, required=True)
    d.add_argument("--out")
    d.set_defaults(func=_cmd_predict)

    v = sub.add_parser("verify-partition", help="run and check a medium-set partition")
    v.add_argument("--graph")
    v.add_argument("--gnp")
    v.add_argument("--set", help="explicit comma-separated vertex set")
    v.add_argument("--set-size", type=int, help="seeded random set of this size")
    v.add_argument("--p", type=float)
    v.add_argument("--omega", type=float, default=2.0)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--mode", choices=("dense", "typed"), default="dense")
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify_partition)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ConfigError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PaintlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
