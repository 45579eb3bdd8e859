"""Reproducible experiment driver.

Subcommands: generate (write instance files), run (matchers over an
instance grid, CSV/JSON results), certify (charging-scheme reports for
min-degree traces), game (priority-game adversaries and the relabeling
distribution), bench (structure linearity), sweep (config-file grids with
parallel workers).

Exit codes: 0 ok, 1 a checked property was violated, 2 usage error,
3 I/O error.  Result CSVs are byte-deterministic for a fixed config and
master seed; wall-clock columns go to a separate .times.csv file.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction

from .bench import bench_dynamic, doubling_factors
from .certify import certify as run_certifier
from .errors import GreedyLabError
from .game import (check_consistency, make_strategy, play, thm4_adversary,
                   thm6_adversary, yao_expected_ratio)
from .instances import GENERATORS, Instance, load_instance, save_instance
from .matchers import ALGORITHMS, MatcherConfig, enumerate_min_degree_executions, run
from .matching import verify_matching
from .rng import derive_key

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _build_instance(args) -> Instance:
    family = args.family
    if family not in GENERATORS:
        raise GreedyLabError(f"unknown family {family!r}")
    kwargs = {}
    for key in ("a", "b", "n", "m", "d", "k"):
        val = getattr(args, key, None)
        if val is not None:
            kwargs[key] = val
    if family in ("erdos-renyi", "random-regular"):
        kwargs["seed"] = args.seed
    if family == "fig2":
        kwargs = {}
    return GENERATORS[family](**kwargs)


def _instance_from_args(args) -> Instance:
    if getattr(args, "graph", None):
        return load_instance(args.graph)
    return _build_instance(args)


def cmd_generate(args) -> int:
    inst = _build_instance(args)
    inst.validate()
    save_instance(inst, args.out)
    print(f"wrote {args.out}.graph ({inst.graph.n} nodes, {inst.graph.m} edges) "
          f"and {args.out}.meta.json")
    return EXIT_OK


def _result_rows(inst: Instance, algo: str, trials: int, master_seed: int):
    rows = []
    times = []
    opt = inst.optimum
    for t in range(trials):
        seed = derive_key(master_seed, inst.family, sorted(inst.params.items()),
                          algo, t)
        cfg = MatcherConfig(algorithm=algo, seed=seed)
        t0 = time.perf_counter()
        matching, trace = run(inst.graph, cfg)
        dt = time.perf_counter() - t0
        report = verify_matching(inst.graph, matching)
        if not (report.valid and report.maximal):
            raise GreedyLabError(f"matcher output rejected: {report.problems}")
        row = {
            "family": inst.family,
            "params": json.dumps(inst.params, sort_keys=True),
            "algorithm": algo,
            "trial": t,
            "seed": seed,
            "size": matching.size,
            "unmatched": inst.graph.n - 2 * matching.size,
        }
        if opt is not None:
            ratio = Fraction(matching.size, opt.size)
            if opt.exact and not (Fraction(1, 2) <= ratio <= 1):
                raise GreedyLabError(f"ratio {ratio} outside [1/2, 1]")
            row["optimum"] = opt.size
            row["optimum_exact"] = int(opt.exact)
            row["ratio"] = f"{ratio.numerator}/{ratio.denominator}"
            row["ratio_float"] = f"{float(ratio):.6f}"
        else:
            row["optimum"] = ""
            row["optimum_exact"] = ""
            row["ratio"] = ""
            row["ratio_float"] = ""
        rows.append(row)
        times.append({"algorithm": algo, "trial": t, "seconds": f"{dt:.6f}"})
    return rows, times


_RESULT_FIELDS = ["family", "params", "algorithm", "trial", "seed", "size",
                  "unmatched", "optimum", "optimum_exact", "ratio", "ratio_float"]


def _write_csv(path: str, fields: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as fp:
        writer = csv.DictWriter(fp, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def cmd_run(args) -> int:
    inst = _instance_from_args(args)
    all_rows = []
    all_times = []
    for algo in args.algo:
        if algo not in ALGORITHMS:
            raise GreedyLabError(f"unknown algorithm {algo!r}")
        rows, times = _result_rows(inst, algo, args.trials, args.seed)
        all_rows += rows
        all_times += times
    if args.out:
        _write_csv(args.out, _RESULT_FIELDS, all_rows)
        _write_csv(args.out + ".times.csv", ["algorithm", "trial", "seconds"],
                   all_times)
        with open(args.out + ".json", "w") as fp:
            json.dump(all_rows, fp, indent=1, sort_keys=True)
            fp.write("\n")
        if args.emit_plot_data:
            _emit_plot_data(args.out, all_rows)
        print(f"wrote {len(all_rows)} rows to {args.out}")
    else:
        for row in all_rows:
            print(json.dumps(row, sort_keys=True))
    sizes = [r["size"] for r in all_rows]
    mean = sum(sizes) / len(sizes) if sizes else 0.0
    print(f"trials={len(all_rows)} mean_size={mean:.3f}", end="")
    if inst.optimum is not None and sizes:
        mean_ratio = sum(r["size"] / inst.optimum.size for r in all_rows) / len(all_rows)
        print(f" mean_ratio={mean_ratio:.4f}", end="")
    print()
    return EXIT_OK


def _emit_plot_data(out: str, rows: list[dict]) -> None:
    base = os.path.splitext(out)[0]
    by_algo: dict[str, list] = {}
    for row in rows:
        by_algo.setdefault(row["algorithm"], []).append(row)
    for algo, entries in sorted(by_algo.items()):
        with open(f"{base}.{algo}.xy", "w") as fp:
            for e in entries:
                y = e["ratio_float"] or e["size"]
                fp.write(f"{e['trial']} {y}\n")


def cmd_certify(args) -> int:
    inst = _instance_from_args(args)
    g = inst.graph
    if inst.optimum is None or not inst.optimum.exact or inst.optimum.witness is None:
        raise GreedyLabError("certification needs an instance with an exact optimum witness")
    optimum = inst.optimum.witness
    reports = []
    violations = 0
    if args.exhaustive:
        executions = enumerate_min_degree_executions(g, limit=args.limit)
    else:
        executions = []
        for t in range(args.trials):
            seed = derive_key(args.seed, "certify", t)
            executions.append(run(g, MatcherConfig(algorithm=args.algo, seed=seed)))
    for matching, trace in executions:
        report = run_certifier(g, trace, matching, optimum, mode=args.mode)
        reports.append(report)
        if report.min_degree_respecting and not report.ok:
            violations += 1
    summary = {
        "family": inst.family,
        "params": inst.params,
        "mode": args.mode,
        "executions": len(reports),
        "violations": violations,
        "min_ratio": (min((f"{r.global_ratio.numerator}/{r.global_ratio.denominator}"
                           for r in reports), key=lambda s: Fraction(s))
                      if reports else None),
        "target": (f"{reports[0].target.numerator}/{reports[0].target.denominator}"
                   if reports else None),
    }
    if args.out:
        payload = {"summary": summary,
                   "reports": [json.loads(r.to_json()) for r in reports]}
        with open(args.out, "w") as fp:
            json.dump(payload, fp, indent=1, sort_keys=True)
            fp.write("\n")
    print(json.dumps(summary, sort_keys=True))
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_game(args) -> int:
    strategy = make_strategy(args.strategy, seed=args.seed)
    if args.adversary == "yao":
        stats = yao_expected_ratio(strategy, trials=args.trials, seed=args.seed)
        print(json.dumps({"strategy": stats.strategy, "trials": stats.trials,
                          "mean_ratio": round(stats.mean_ratio, 6),
                          "std_error": round(stats.std_error, 6),
                          "counts": stats.counts}, sort_keys=True))
        return EXIT_OK
    if args.adversary == "thm4":
        adversary = thm4_adversary()
        expected = None
    else:
        adversary = thm6_adversary(args.delta)
        expected = (args.delta - 1, 2 * args.delta - 3)
    transcript = play(strategy, adversary, seed=args.seed)
    consistency = check_consistency(transcript)
    opt_size = (transcript.opt_witness.size if transcript.opt_witness else None)
    out = {
        "adversary": args.adversary,
        "strategy": strategy.name,
        "matching": transcript.matching.size,
        "optimum": opt_size,
        "consistent": consistency.ok,
    }
    print(json.dumps(out, sort_keys=True))
    if not consistency.ok:
        return EXIT_VIOLATION
    if expected is not None and (transcript.matching.size, opt_size) != expected:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = [int(float(x)) for x in args.n.split(",")]
    rows = bench_dynamic(sizes, seed=args.seed, repeats=args.repeats)
    factors = doubling_factors(rows)
    for row in rows:
        print(f"n={row.n} m={row.m} seconds={row.seconds:.4f}")
    print("doubling factors: " + ", ".join(f"{f:.3f}" for f in factors))
    if args.check and not all(args.lo <= f <= args.hi for f in factors):
        print(f"violation: factor outside [{args.lo}, {args.hi}]")
        return EXIT_VIOLATION
    return EXIT_OK


def _worker_count() -> int:
    env = os.environ.get("GREEDY_LAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _sweep_cell(task):
    basepath, cell, master_seed = task
    family = cell["family"]
    gen_kwargs = {k: v for k, v in cell.items()
                  if k not in ("family", "algorithm", "trials")}
    if family in ("erdos-renyi", "random-regular"):
        gen_kwargs.setdefault("seed", master_seed)
    inst = GENERATORS[family](**gen_kwargs)
    rows, times = _result_rows(inst, cell["algorithm"], cell["trials"], master_seed)
    return rows, times


def cmd_sweep(args) -> int:
    with open(args.config) as fp:
        config = json.load(fp)
    trials = config.get("trials", 1)
    master_seed = config.get("seed", 0)
    cells = []
    for fam_spec in config["families"]:
        family = fam_spec["family"]
        grids = {k: v if isinstance(v, list) else [v]
                 for k, v in fam_spec.items() if k != "family"}
        combos = [{}]
        for key, values in sorted(grids.items()):
            combos = [dict(c, **{key: v}) for c in combos for v in values]
        for combo in combos:
            for algo in config["algorithms"]:
                cells.append(dict(combo, family=family, algorithm=algo,
                                  trials=trials))
    tasks = [(args.out, cell, master_seed) for cell in cells]
    workers = _worker_count()
    if workers > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_cell, tasks))
    else:
        results = [_sweep_cell(t) for t in tasks]
    all_rows = [row for rows, _ in results for row in rows]
    all_times = [t for _, times in results for t in times]
    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    _write_csv(args.out, _RESULT_FIELDS, all_rows)
    _write_csv(args.out + ".times.csv", ["algorithm", "trial", "seconds"], all_times)
    print(f"swept {len(cells)} cells, wrote {len(all_rows)} rows to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greedylab",
        description="Greedy maximum-cardinality matching laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family_args(p):
        p.add_argument("--family", default=None)
        p.add_argument("--graph", default=None, help="load a saved instance instead")
        p.add_argument("--a", type=int, default=None)
        p.add_argument("--b", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--m", type=int, default=None)
        p.add_argument("--d", type=int, default=None)

    p = sub.add_parser("generate", help="write an instance to disk")
    add_family_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("run", help="run matchers and emit result rows")
    add_family_args(p)
    p.add_argument("--algo", action="append", required=True,
                   choices=list(ALGORITHMS))
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--emit-plot-data", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("certify", help="run the charging-scheme certifier")
    add_family_args(p)
    p.add_argument("--algo", default="mingreedy", choices=["mingreedy"])
    p.add_argument("--mode", default="regular", choices=["regular", "indirect"])
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--limit", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("game", help="play priority-game adversaries")
    p.add_argument("--adversary", required=True, choices=["thm4", "thm6", "yao"])
    p.add_argument("--strategy", required=True)
    p.add_argument("--delta", type=int, default=3)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("bench", help="measure structure linearity")
    p.add_argument("--structure", default="dynamic", choices=["dynamic"])
    p.add_argument("--n", required=True, help="comma-separated sizes, e.g. 1e5,2e5,4e5")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", action="store_true")
    p.add_argument("--lo", type=float, default=1.5)
    p.add_argument("--hi", type=float, default=2.5)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("sweep", help="fan a config grid across workers")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GreedyLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
