"""Command-line front end: ``run``, ``suite``, ``report`` and ``list``.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path

from . import harness
from .benchmarks import BENCHMARK_IDS, BENCHMARKS, make_benchmark
from .harness import ALGORITHM_IDS, ExperimentConfig


class UsageError(Exception):
    def __init__(self, flag, message):
        super().__init__(f"argument {flag}: {message}")


def _parse_params(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError("--param", f"expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _fmt(x):
    return "nan" if x is None else repr(float(x))


# ---------------------------------------------------------------- run

def cmd_run(args) -> int:
    params = _parse_params(args.param)
    try:
        make_benchmark(args.bench, args.dim)
    except ValueError as exc:
        raise UsageError("--dim", str(exc)) from None
    if args.iters < 0:
        raise UsageError("--iters", "must be non-negative")
    if args.reps < 1:
        raise UsageError("--reps", "must be at least 1")
    try:
        harness.make_params(args.algo, params)
    except (ValueError, TypeError) as exc:
        raise UsageError("--param", str(exc)) from None
    config = ExperimentConfig(args.algo, args.bench, args.dim, args.iters, args.reps,
                              args.seed, params)
    records = harness.run_experiment(config, jobs=args.jobs)
    summary = harness.summarize(records)
    print(f"{args.algo} {args.bench} {args.dim} {args.iters} {_fmt(summary.median_gap)}")
    if args.out:
        out = Path(args.out)
        if out.parent and not out.parent.exists():
            out.parent.mkdir(parents=True, exist_ok=True)
        harness.export_results(records, None, args.format, out,
                               include_trace=args.trace, timing=args.timing)
    return 0


# ---------------------------------------------------------------- suite

def _cell_name(dimension, iterations):
    return f"results_D{dimension}_I{iterations}.csv"


def paper_grid_configs(reps, seed):
    cells = {}
    for dimension, iterations, algorithms in harness.PAPER_GRID:
        cells[(dimension, iterations)] = [
            ExperimentConfig(a, b, dimension, iterations, reps, seed)
            for a in algorithms for b in BENCHMARK_IDS
        ]
    return cells


def _group_cells(configs):
    cells = {}
    for c in configs:
        cells.setdefault((c.dimension, c.iterations), []).append(c)
    return cells


def _expected_rows(configs):
    rows = []
    for c in configs:
        for r in range(c.replications):
            rows.append((c.algorithm, c.benchmark, c.dimension, c.iterations, c.base_seed + r))
    return sorted(rows)


def _cell_is_complete(path, configs):
    if not path.exists():
        return False
    try:
        rows = harness.read_results_csv(path)
    except (ValueError, KeyError, OSError):
        return False
    got = sorted((r["algorithm"], r["benchmark"], r["dimension"], r["iterations"], r["seed"])
                 for r in rows)
    return got == _expected_rows(configs)


def cmd_suite(args) -> int:
    if args.config is None and not args.paper_grid:
        raise UsageError("--config", "give --config FILE or --paper-grid")
    if args.config is not None and args.paper_grid:
        raise UsageError("--config", "--config and --paper-grid are mutually exclusive")
    if args.paper_grid:
        if args.reps < 1:
            raise UsageError("--reps", "must be at least 1")
        cells = paper_grid_configs(args.reps, args.seed)
    else:
        path = Path(args.config)
        if not path.is_file():
            raise UsageError("--config", f"no such file: {path}")
        try:
            cells = _group_cells(harness.load_config(path))
        except ValueError as exc:
            raise UsageError("--config", str(exc)) from None

    if args.dry_run:
        for (dimension, iterations), configs in cells.items():
            runs = sum(c.replications for c in configs)
            print(f"{_cell_name(dimension, iterations)} {len(configs)} configs {runs} runs")
        return 0

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    failed = []
    for (dimension, iterations), configs in cells.items():
        path = out / _cell_name(dimension, iterations)
        if not args.force and _cell_is_complete(path, configs):
            print(f"skip {path.name} (complete)")
            continue
        try:
            groups = harness.run_experiments(configs, jobs=args.jobs)
            records = [r for g in groups for r in g]
            tmp = path.with_suffix(".csv.part")
            harness.export_results(records, None, "csv", tmp, timing=args.timing)
            tmp.replace(path)
            print(f"done {path.name} ({len(records)} runs)")
        except Exception as exc:  # keep going; report at the end
            failed.append((path.name, exc))
            print(f"FAILED {path.name}: {exc}", file=sys.stderr)

    summaries = harness.summarize_all(_read_dir(out))
    harness.write_summaries(summaries, out / "summary.csv")
    if failed:
        print("failed cells: " + ", ".join(name for name, _ in failed), file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------- report

def _read_dir(directory):
    rows = []
    for path in sorted(Path(directory).glob("results_D*_I*.csv")):
        rows.extend(harness.read_results_csv(path))
    return rows


def cmd_report(args) -> int:
    directory = Path(args.inp)
    if not directory.is_dir():
        raise UsageError("--in", f"not a directory: {directory}")
    group_by = []
    for g in (p.strip() for p in args.group_by.split(",") if p.strip()):
        name = {"dim": "dimension", "dimension": "dimension",
                "iters": "iterations", "iterations": "iterations"}.get(g)
        if name is None:
            raise UsageError("--group-by", f"unknown field {g!r}; use dim and/or iters")
        group_by.append(name)
    try:
        rows = _read_dir(directory)
    except ValueError as exc:
        raise UsageError("--in", f"invalid results file: {exc}") from None
    if not rows:
        raise UsageError("--in", f"no results_D*_I*.csv files in {directory}")
    cells = harness.aggregate_figure_data(harness.summarize_all(rows), group_by)
    buf = io.StringIO()
    harness.write_figure_table(cells, buf)
    sys.stdout.write(buf.getvalue())
    return 0


# ---------------------------------------------------------------- list

def _g(x):
    return f"{x:g}"


def cmd_list(args) -> int:
    print("algorithms:")
    for a in ALGORITHM_IDS:
        print(f"  {a}")
    print("benchmarks:")
    for b in BENCHMARK_IDS:
        info = BENCHMARKS[b]
        print(f"  {b} [{_g(info.low)},{_g(info.high)}] opt={info.optimum_label} {info.modality}")
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beeopt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="{run,suite,report,list}")

    p = sub.add_parser("run", help="run one algorithm on one benchmark")
    p.add_argument("--algo", required=True, choices=ALGORITHM_IDS)
    p.add_argument("--bench", required=True, choices=BENCHMARK_IDS)
    p.add_argument("--dim", required=True, type=int)
    p.add_argument("--iters", required=True, type=int)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="algorithm parameter override, repeatable")
    p.add_argument("--trace", action="store_true", help="include traces in JSON output")
    p.add_argument("--timing", action="store_true", help="record wall time in output files")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("suite", help="run a grid of experiments")
    p.add_argument("--config")
    p.add_argument("--paper-grid", action="store_true")
    p.add_argument("--out", default="results")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--force", action="store_true")
    p.add_argument("--reps", type=int, default=10, help="replications for --paper-grid")
    p.add_argument("--seed", type=int, default=1, help="base seed for --paper-grid")
    p.add_argument("--timing", action="store_true")
    p.add_argument("--dry-run", action="store_true", help="list cells without running them")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("report", help="figure-style aggregation of suite results")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--group-by", default="dim,iters")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("list", help="list algorithm and benchmark ids")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"{parser.prog}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
