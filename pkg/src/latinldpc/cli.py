"""Command-line front end: construct, analyze, simulate, patterns.

Every command is driven by a JSON config (schema-checked, unknown keys
rejected) plus a few flags, writes its artifacts into --out, and leaves a
manifest from which the run can be reproduced byte for byte.

Exit codes: 0 success, 2 config error, 3 infeasible construction, 4 I/O
error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, alist, gf2
from .basematrix import BaseMatrix, expand
from .builder import (
    BuildPolicy,
    Condition,
    InfeasibleCondition,
    progressive_construct,
    verify_condition,
    write_build_log,
)
from .channel import (
    AWGN,
    BSC,
    ChannelPoint,
    StopRule,
    file_sha256,
    run_montecarlo,
    write_gnuplot_data,
    write_manifest,
    write_results_csv,
)
from .decode import GALLAGER_A, GALLAGER_B, SPA, DecoderConfig
from .galois import make_field
from .graph import (
    TannerGraph,
    eight_cycle_sharing_report,
    enumerate_cycles,
    find_pattern,
    girth,
)
from .patterns import generate_patterns, write_pattern_catalog

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


class ConfigError(ValueError):
    pass


def _require_keys(obj: dict, allowed: set, required: set, where: str):
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise ConfigError(f"{where}: missing keys {sorted(missing)}")


def _parse_field(spec: dict):
    _require_keys(spec, {"p", "m", "modulus"}, {"p", "m"}, "field")
    return make_field(int(spec["p"]), int(spec["m"]), spec.get("modulus"))


def _parse_tau(spec: dict) -> Condition:
    _require_keys(
        spec,
        {"girth_min", "forbidden_patterns", "eight_cycle_sharing", "min_distance_10"},
        set(),
        "tau",
    )
    pats = []
    for ent in spec.get("forbidden_patterns", []):
        _require_keys(ent, {"a", "b", "girth", "girth_class"}, {"a", "b", "girth"}, "tau.forbidden_patterns")
        cands = generate_patterns(int(ent["a"]), int(ent["b"]), int(ent["girth"]))
        want = ent.get("girth_class")
        for pat in cands:
            if (want is None or pat.girth_tanner == int(want)) and pat not in pats:
                pats.append(pat)
    return Condition(
        girth_min=int(spec.get("girth_min", 6)),
        forbidden_patterns=tuple(pats),
        eight_cycle_sharing=bool(spec.get("eight_cycle_sharing", False)),
        min_distance_10=bool(spec.get("min_distance_10", False)),
    )


def _parse_policy(spec: dict, seed: int) -> BuildPolicy:
    _require_keys(
        spec,
        {
            "candidate_order",
            "max_retries_per_block",
            "target_rho",
            "fix_first_row_zero",
            "fix_first_col_zero",
            "max_column_backtracks",
        },
        set(),
        "policy",
    )
    return BuildPolicy(
        candidate_order=spec.get("candidate_order", "random"),
        seed=seed,
        max_retries_per_block=spec.get("max_retries_per_block"),
        target_rho=spec.get("target_rho"),
        fix_first_row_zero=bool(spec.get("fix_first_row_zero", True)),
        fix_first_col_zero=bool(spec.get("fix_first_col_zero", True)),
        max_column_backtracks=spec.get("max_column_backtracks"),
    )


def cmd_construct(args) -> int:
    with open(args.config) as fh:
        config = json.load(fh)
    _require_keys(
        config, {"field", "gamma", "tau", "policy", "seed"}, {"field", "gamma", "tau"}, "config"
    )
    seed = args.seed if args.seed is not None else int(config.get("seed", 0))
    f = _parse_field(config["field"])
    tau = _parse_tau(config.get("tau", {}))
    policy = _parse_policy(config.get("policy", {}), seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        result = progressive_construct(f, int(config["gamma"]), tau, policy)
    except InfeasibleCondition as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    w_path = out / "w.csv"
    alist_path = out / "code.alist"
    log_path = out / "build_log.jsonl"
    alist.write_base_matrix_csv(result.w, w_path)
    h = expand(result.w)
    alist.write_alist(h, alist_path)
    write_build_log(result.log, log_path)
    if not result.audit.ok:
        print(f"audit failed: {result.audit.summary()}", file=sys.stderr)
        return EXIT_INFEASIBLE
    rank = gf2.gf2_rank(h)
    report = {
        "rho": result.rho,
        "n": h.n_cols,
        "checks": h.n_rows,
        "gf2_rank": rank,
        "dimension": h.n_cols - rank,
        "girth": result.audit.details.get("girth"),
        "candidates_tried": result.stats["candidates_tried"],
    }
    (out / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    write_manifest(
        out / "manifest.json",
        {"command": "construct", "config": config, "tau": tau.describe()},
        seed,
        {"config": file_sha256(args.config)},
    )
    print(json.dumps(report, sort_keys=True))
    return EXIT_OK


def _load_graph(path) -> TannerGraph:
    h = alist.read_alist(path)
    g = TannerGraph.from_parity(h)
    g._parity = h
    return g


def cmd_analyze(args) -> int:
    g = _load_graph(args.alist)
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    known = {"girth", "rank", "cycles", "patterns", "sharing"}
    bad = set(checks) - known
    if bad:
        raise ConfigError(f"unknown checks: {sorted(bad)}")
    report: dict = {"n": g.n_var, "checks": g.n_chk}
    if "girth" in checks:
        gg = girth(g)
        report["girth"] = "inf" if math.isinf(gg) else gg
    if "rank" in checks:
        rank = gf2.gf2_rank(g._parity)
        report["gf2_rank"] = rank
        report["dimension"] = g.n_var - rank
    if "cycles" in checks:
        lengths = [int(x) for x in args.cycle_lengths.split(",")]
        report["cycle_counts"] = {
            str(L): len(enumerate_cycles(g, L, cap=args.cycle_cap)) for L in lengths
        }
    if "patterns" in checks:
        found = {}
        for spec_str in args.patterns.split(";"):
            a, b, girth_t = (int(x) for x in spec_str.split(","))
            for pat in generate_patterns(a, b, girth_t):
                hit = find_pattern(g, pat)
                found[pat.label()] = list(hit) if hit is not None else None
        report["pattern_occurrences"] = found
    if "sharing" in checks:
        ok, n8, witness = eight_cycle_sharing_report(g)
        report["eight_cycles"] = n8
        report["eight_cycle_sharing_ok"] = ok
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "analysis.json").write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n"
        )
        write_manifest(
            out / "manifest.json",
            {
                "command": "analyze",
                "checks": checks,
                "cycle_lengths": args.cycle_lengths,
                "patterns": args.patterns,
            },
            0,
            {"alist": file_sha256(args.alist)},
        )
    for key, val in report.items():
        print(f"{key}: {val}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    with open(args.config) as fh:
        config = json.load(fh)
    _require_keys(
        config,
        {"decoder", "channel", "points", "rate", "stop", "seed", "batch_size"},
        {"decoder", "channel", "points"},
        "config",
    )
    seed = args.seed if args.seed is not None else int(config.get("seed", 0))
    h = alist.read_alist(args.alist)
    dec_spec = config["decoder"]
    _require_keys(
        dec_spec,
        {"algorithm", "max_iter", "gallager_b_threshold", "spa_clamp"},
        {"algorithm"},
        "decoder",
    )
    algo = {"spa": SPA, "gallager-a": GALLAGER_A, "gallager-b": GALLAGER_B}.get(
        dec_spec["algorithm"]
    )
    if algo is None:
        raise ConfigError(f"unknown decoder algorithm {dec_spec['algorithm']!r}")
    cfg = DecoderConfig(
        algorithm=algo,
        max_iter=int(dec_spec.get("max_iter", 50)),
        gallager_b_threshold=dec_spec.get("gallager_b_threshold"),
        spa_clamp=float(dec_spec.get("spa_clamp", 25.0)),
    )
    channel = config["channel"]
    if channel not in (BSC, AWGN):
        raise ConfigError(f"unknown channel {channel!r}")
    rate = config.get("rate")
    if channel == AWGN and rate is None:
        rank = gf2.gf2_rank(h)
        rate = (h.n_cols - rank) / h.n_cols
    points = [
        ChannelPoint(channel, float(p), rate=rate if channel == AWGN else None)
        for p in config["points"]
    ]
    stop_spec = config.get("stop", {})
    _require_keys(stop_spec, {"min_frame_errors", "max_frames"}, set(), "stop")
    stop = StopRule(
        min_frame_errors=int(stop_spec.get("min_frame_errors", 100)),
        max_frames=int(stop_spec.get("max_frames", 10_000_000)),
    )
    results = run_montecarlo(
        h,
        cfg,
        points,
        stop,
        seed,
        batch_size=int(config.get("batch_size", 2048)),
        workers=args.workers,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_results_csv(results, out / "results.csv")
    if args.gnuplot:
        write_gnuplot_data(results, out / "results.dat")
    write_manifest(
        out / "manifest.json",
        {"command": "simulate", "config": config},
        seed,
        {"config": file_sha256(args.config), "alist": file_sha256(args.alist)},
    )
    for r in results:
        print(f"{r.point.label()}: frames={r.frames} FER={r.fer:.4g} BER={r.ber:.4g}")
    return EXIT_OK


def cmd_patterns(args) -> int:
    pats = generate_patterns(args.a, args.b, args.girth)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_pattern_catalog(pats, out)
    if not pats:
        print(f"infeasible parameters (a={args.a}, b={args.b}): empty catalog written")
    else:
        print(f"{len(pats)} pattern(s) written to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latinldpc",
        description="Structured LDPC codes from Latin-square permutation matrices",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="progressively build a code under a condition")
    c.add_argument("--config", required=True)
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--out", required=True)
    c.add_argument("--workers", type=int, default=_default_workers())
    c.set_defaults(fn=cmd_construct)

    a = sub.add_parser("analyze", help="graph analytics on an alist code")
    a.add_argument("alist")
    a.add_argument("--checks", default="girth,rank")
    a.add_argument("--cycle-lengths", default="4,6,8")
    a.add_argument("--cycle-cap", type=int, default=10_000_000)
    a.add_argument("--patterns", default="5,3,6;6,0,6;8,0,6")
    a.add_argument("--out", default=None)
    a.set_defaults(fn=cmd_analyze)

    s = sub.add_parser("simulate", help="Monte Carlo FER/BER simulation")
    s.add_argument("alist")
    s.add_argument("--config", required=True)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--out", required=True)
    s.add_argument("--workers", type=int, default=_default_workers())
    s.add_argument("--gnuplot", action="store_true")
    s.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("patterns", help="write a trapping-set pattern catalog")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("girth", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_patterns)
    return parser


def _default_workers() -> int:
    env = os.environ.get("LATINLDPC_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except alist.AlistFormatError as exc:
        print(f"alist error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, json.JSONDecodeError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleCondition as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
