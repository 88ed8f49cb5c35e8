"""Command-line front end: generate graphs, measure distances, run
explorations, verify invariants, and sweep parameter grids.

Exit codes: 0 success, 1 io error, 2 usage/config error, 3 verification
failure.  Every randomized command echoes {seed, version, config hash} into
its outputs and is byte-identical across reruns and thread counts.
"""

import argparse
import hashlib
import json
import math
import os
import sys

import numpy as np

from . import __version__, backend, experiments, explore, nr, pa, rng, rules, verify
from .graph import GraphFormatError, load_edge_list, save_edge_list, components, bfs_distance, BfsScratch

SWEEP_SCHEMA = "critnet-sweep/1"
_SWEEP_FIELDS = {"schema", "alpha", "beta", "w_min", "n_grid", "seeds", "pairs_per_graph"}
_SWEEP_REQUIRED = {"schema", "alpha", "n_grid", "seeds"}


def _config_hash(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]


def _write_json(path, obj):
    experiments.write_json(obj, path)


def _resolve_threads(value: int | None) -> int:
    if value is None:
        value = int(os.environ.get("CRITNET_THREADS", "0") or 0)
    return backend.set_threads(value)


def cmd_generate(args) -> int:
    n, seed = args.n, args.seed
    if args.model == "pa":
        if args.gamma is not None:
            rule = rules.AttachmentRule.affine(args.gamma, args.beta)
        else:
            rule = rules.AttachmentRule.critical(args.alpha, args.beta)
        g = pa.generate(n, rule, seed)
        sidecar = {"model": "pa", "N": n, "rule": rule.to_json_obj(), "seed": seed}
    else:
        dist = nr.WeightDistribution(alpha=args.alpha, w_min=args.w_min)
        g, ws = nr.generate_nr(n, dist, seed)
        sidecar = {"model": "nr", "N": n, "alpha": args.alpha, "w_min": args.w_min,
                   "norm_c": dist.norm_c, "seed": seed}
        np.save(args.out + ".weights.npy", ws.weights[1:])
    sidecar["version"] = __version__
    sidecar["config_hash"] = _config_hash(sidecar)
    try:
        save_edge_list(g, args.out)
        _write_json(args.out + ".json", sidecar)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}: N={g.n} E={g.n_edges} seed={seed}")
    return 0


def cmd_measure(args) -> int:
    try:
        g = load_edge_list(args.infile)
    except OSError as exc:
        print(f"error: cannot read {args.infile}: {exc}", file=sys.stderr)
        return 1
    except GraphFormatError as exc:
        print(f"error: malformed graph file: {exc}", file=sys.stderr)
        return 1
    comp = components(g)
    members = comp.largest_members()
    rows = []
    if members.size < 2:
        print("warning: largest component has fewer than 2 vertices", file=sys.stderr)
    elif args.pairs > 0:
        scratch = BfsScratch(g.n)
        for u, v in experiments.sample_component_pairs(members, args.pairs, args.seed):
            rows.append((u, v, bfs_distance(g, u, v, scratch)))
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("u,v,d\n")
            for u, v, d in rows:
                fh.write(f"{u},{v},{d}\n")
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1
    print(f"measured {len(rows)} pairs in giant of size {members.size} (seed={args.seed})")
    return 0


def cmd_explore(args) -> int:
    try:
        g = load_edge_list(args.infile)
    except OSError as exc:
        print(f"error: cannot read {args.infile}: {exc}", file=sys.stderr)
        return 1
    except GraphFormatError as exc:
        print(f"error: malformed graph file: {exc}", file=sys.stderr)
        return 1
    comp = components(g)
    members = comp.largest_members()
    if args.start is not None:
        start = args.start
        if not 1 <= start <= g.n:
            print("error: --start out of range", file=sys.stderr)
            return 2
    else:
        start = int(members[int(rng.unit_at(args.seed, 1 << 43, 0) * members.size)])
    trunc = rules.truncation_sequence(g.n, args.s0, args.delta0, args.kappa, args.alpha)
    target = args.target
    if target is None:
        target = math.sqrt(g.n) / math.log(g.n) ** (args.alpha + 1.0)
    config = explore.new_exploration(g, start, trunc, parity=args.parity)
    report = explore.run_to_score(config, g, target, args.max_steps,
                                  s0=args.s0 if args.initial_phase else None)
    try:
        report.to_csv(args.out)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1
    print(f"exploration from {start}: status={report.status} generations={report.generations} "
          f"target={target:.4f} seed={args.seed}")
    return 0


def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite, seed=args.seed)
    for res in results:
        print(res.line())
    n_fail = sum(1 for r in results if not r.passed)
    print(f"{len(results) - n_fail}/{len(results)} checks passed (suite={args.suite}, seed={args.seed})")
    return 3 if n_fail else 0


def _load_sweep_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config must be a JSON object")
    unknown = sorted(set(cfg) - _SWEEP_FIELDS)
    if unknown:
        raise ValueError(f"unknown config fields: {', '.join(unknown)}")
    missing = sorted(_SWEEP_REQUIRED - set(cfg))
    if missing:
        raise ValueError(f"missing config fields: {', '.join(missing)}")
    if cfg["schema"] != SWEEP_SCHEMA:
        raise ValueError(f"schema must be {SWEEP_SCHEMA!r}")
    if not cfg["n_grid"]:
        raise ValueError("n_grid must be nonempty")
    if not cfg["seeds"]:
        raise ValueError("seeds must be nonempty")
    cfg.setdefault("beta", 1.0)
    cfg.setdefault("w_min", 1.0)
    cfg.setdefault("pairs_per_graph", 200)
    return cfg


def cmd_sweep(args) -> int:
    try:
        cfg = _load_sweep_config(args.config)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"error: invalid sweep config: {exc}", file=sys.stderr)
        return 2
    workers = _resolve_threads(args.threads)
    os.makedirs(args.out, exist_ok=True)
    reports = {}
    for model in ("pa", "nr"):
        ecfg = experiments.ExperimentConfig(
            model=model, alpha=cfg["alpha"], beta=cfg["beta"], w_min=cfg["w_min"],
            n_grid=[int(x) for x in cfg["n_grid"]], seeds=[int(s) for s in cfg["seeds"]],
            pairs_per_graph=int(cfg["pairs_per_graph"]), workers=workers)
        rep = experiments.typical_distance_study(ecfg)
        reports[model] = rep
        for n in ecfg.n_grid:
            for s in ecfg.seeds:
                rows = [r for r in rep["samples"] if r[0] == n and r[1] == s]
                experiments.write_distance_csv(
                    rows, os.path.join(args.out, f"dist_{model}_n{n}_s{s}.csv"))
    comparison = experiments.compare_distance_constants(reports["pa"], reports["nr"])
    summary = {
        "schema": SWEEP_SCHEMA,
        "config": cfg,
        "config_hash": _config_hash(cfg),
        "version": __version__,
        "c_hat": {"pa": reports["pa"]["c_hat"], "nr": reports["nr"]["c_hat"]},
        "c_hat_stderr": {"pa": reports["pa"]["c_hat_stderr"],
                         "nr": reports["nr"]["c_hat_stderr"]},
        "intercepts": {"pa": reports["pa"]["intercept"], "nr": reports["nr"]["intercept"]},
        "ratio": comparison["ratio"],
        "p_one_sided": comparison["p_one_sided"],
        "skipped_cells": {m: reports[m]["skipped_cells"] for m in reports},
    }
    try:
        _write_json(os.path.join(args.out, "summary.json"), summary)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1
    print(f"sweep done: c_hat(pa)={summary['c_hat']['pa']:.4f} "
          f"c_hat(nr)={summary['c_hat']['nr']:.4f} ratio={summary['ratio']:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="critnet",
                                     description="critical scale-free network toolkit")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker pool size (0 = auto; env CRITNET_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="generate a graph and write an edge list")
    p_gen.add_argument("--model", choices=("pa", "nr"), required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--alpha", type=float, default=0.0)
    p_gen.add_argument("--beta", type=float, default=1.0)
    p_gen.add_argument("--gamma", type=float, default=None,
                       help="use the affine rule gamma*k+beta (pa only)")
    p_gen.add_argument("--w-min", type=float, default=1.0, dest="w_min")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_generate)

    p_meas = sub.add_parser("measure", help="sample giant-component distances")
    p_meas.add_argument("--in", dest="infile", required=True)
    p_meas.add_argument("--pairs", type=int, required=True)
    p_meas.add_argument("--seed", type=int, required=True)
    p_meas.add_argument("--out", required=True)
    p_meas.set_defaults(func=cmd_measure)

    p_exp = sub.add_parser("explore", help="run a truncated exploration on a saved graph")
    p_exp.add_argument("--in", dest="infile", required=True)
    p_exp.add_argument("--seed", type=int, required=True)
    p_exp.add_argument("--start", type=int, default=None)
    p_exp.add_argument("--alpha", type=float, default=0.0)
    p_exp.add_argument("--s0", type=float, default=experiments.DEFAULT_S0)
    p_exp.add_argument("--delta0", type=float, default=experiments.DEFAULT_DELTA0)
    p_exp.add_argument("--kappa", type=float, default=experiments.DEFAULT_KAPPA)
    p_exp.add_argument("--parity", choices=("none", "odd", "even"), default="none")
    p_exp.add_argument("--target", type=float, default=None)
    p_exp.add_argument("--max-steps", type=int, default=60, dest="max_steps")
    p_exp.add_argument("--initial-phase", action="store_true", dest="initial_phase",
                       help="run an untruncated initial phase first")
    p_exp.add_argument("--out", required=True)
    p_exp.set_defaults(func=cmd_explore)

    p_ver = sub.add_parser("verify", help="run invariant check suites")
    p_ver.add_argument("--suite", choices=("rules", "pa", "nr", "exploration", "all"),
                       required=True)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.set_defaults(func=cmd_verify)

    p_sw = sub.add_parser("sweep", help="distance sweep for both models from a JSON config")
    p_sw.add_argument("--config", required=True)
    p_sw.add_argument("--out", required=True)
    p_sw.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command != "sweep":
        _resolve_threads(args.threads)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
