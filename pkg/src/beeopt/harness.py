"""Seeded, replicated experiment execution, summary statistics and result files.

Replication ``r`` of a configuration with base seed ``s`` always runs from seed
``s + r``, so any replication can be re-run on its own and the order in which
replications execute never changes the results.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .abc import AbcParams, run_abc
from .ba import BaParams, run_ba
from .benchmarks import BENCHMARK_IDS, make_benchmark
from .hybrid import HybridParams, run_hybrid
from .records import RunRecord

__all__ = [
    "ALGORITHM_IDS",
    "CSV_COLUMNS",
    "SUMMARY_COLUMNS",
    "FIGURE_COLUMNS",
    "PAPER_GRID",
    "PAPER_DIMENSIONS",
    "PAPER_ITERATIONS",
    "ExperimentConfig",
    "SummaryRow",
    "FigureCell",
    "HarnessError",
    "make_params",
    "run_replication",
    "run_experiment",
    "run_experiments",
    "summarize",
    "summarize_all",
    "aggregate_figure_data",
    "export_results",
    "write_summaries",
    "write_figure_table",
    "read_results_csv",
    "read_results_json",
    "parse_config_text",
    "load_config",
]

ALGORITHM_IDS = ("ba", "rev-ba", "abc", "rev-abc", "hybrid")

CSV_COLUMNS = ("algorithm", "benchmark", "dimension", "iterations", "seed",
               "final_value", "final_gap", "evaluations", "wall_time_s")
SUMMARY_COLUMNS = ("algorithm", "benchmark", "dimension", "iterations", "replications",
                   "min_gap", "median_gap", "mean_gap", "max_gap")
FIGURE_COLUMNS = ("algorithm", "dimension", "iterations", "benchmarks", "complete", "mean_gap")

PAPER_DIMENSIONS = (5, 30, 60, 100, 150)
PAPER_ITERATIONS = (200, 1000, 5000, 10000)

_ALL = ALGORITHM_IDS
_ORIGINALS_AND_HYBRID = ("ba", "abc", "hybrid")

# (dimension, iterations, algorithms) for every results block of the published tables
PAPER_GRID: Tuple[Tuple[int, int, Tuple[str, ...]], ...] = (
    (5, 200, _ALL), (5, 1000, _ALL), (5, 5000, _ALL),
    (30, 200, _ALL), (30, 1000, _ALL), (30, 5000, _ALL),
    (60, 1000, _ALL), (60, 5000, _ALL),
    (100, 1000, _ORIGINALS_AND_HYBRID), (100, 5000, _ORIGINALS_AND_HYBRID),
    (100, 10000, _ORIGINALS_AND_HYBRID),
    (150, 1000, _ORIGINALS_AND_HYBRID), (150, 5000, _ORIGINALS_AND_HYBRID),
    (150, 10000, _ORIGINALS_AND_HYBRID),
)


class HarnessError(RuntimeError):
    pass


# ---------------------------------------------------------------- parameters

_PARAM_CLASSES = {
    "ba": (BaParams, {"variant": "classic"}),
    "rev-ba": (BaParams, {"variant": "revised"}),
    "abc": (AbcParams, {"variant": "classic"}),
    "rev-abc": (AbcParams, {"variant": "revised"}),
    "hybrid": (HybridParams, {}),
}

_LAYOUT_ALIASES = {
    "n": "swarm_size", "swarm": "swarm_size", "ne": "elite_count", "nm": "moderate_count",
    "beta": "elite_recruits", "gamma": "moderate_recruits",
    "independent": "independent_count", "j": "independent_count",
}
_ALIASES = {
    "ba": dict(_LAYOUT_ALIASES),
    "rev-ba": dict(_LAYOUT_ALIASES),
    "abc": {"n": "source_count", "sources": "source_count", "limit": "trial_limit",
            "l": "trial_limit", "phi": "phi_half_range", "a": "phi_half_range",
            "elite_fraction": "revised_elite_fraction", "scope": "perturbation"},
    "hybrid": {**_LAYOUT_ALIASES, "delta": "delta_fixed", "phi": "phi_half_range",
               "a": "phi_half_range", "scope": "abc_perturbation",
               "perturbation": "abc_perturbation"},
}
_ALIASES["rev-abc"] = _ALIASES["abc"]


def _convert(name, raw, default):
    if not isinstance(raw, str):
        return raw
    text = raw.strip()
    if default is None:
        default = 0.0
    if isinstance(default, bool):
        low = text.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"parameter {name} expects a boolean, got {raw!r}")
    try:
        if isinstance(default, int):
            return int(text)
        if isinstance(default, float):
            return float(text)
        if isinstance(default, tuple):
            return tuple(int(p) for p in text.replace(";", ",").split(",") if p.strip())
    except ValueError:
        raise ValueError(f"parameter {name} expects {type(default).__name__}, got {raw!r}") from None
    return text


def param_names(algorithm: str) -> List[str]:
    cls, fixed = _PARAM_CLASSES[algorithm]
    return [f.name for f in dataclasses.fields(cls) if f.name != "variant"]


def make_params(algorithm: str, overrides: Optional[Dict[str, object]] = None):
    """Parameter object for ``algorithm`` with typed ``overrides`` applied.

    Override values may be strings (as read from the command line or a config
    file); they are converted to the field's type. Unknown names raise
    ``ValueError``.
    """
    if algorithm not in _PARAM_CLASSES:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHM_IDS)}")
    cls, fixed = _PARAM_CLASSES[algorithm]
    defaults = {f.name: f.default for f in dataclasses.fields(cls)}
    kwargs = dict(fixed)
    for key, raw in (overrides or {}).items():
        name = _ALIASES[algorithm].get(key.lower(), key)
        if name not in defaults or name == "variant":
            raise ValueError(
                f"unknown parameter {key!r} for {algorithm}; valid: {', '.join(param_names(algorithm))}"
            )
        kwargs[name] = _convert(key, raw, defaults[name])
    return cls(**kwargs)


# ---------------------------------------------------------------- experiments

@dataclass(frozen=True)
class ExperimentConfig:
    algorithm: str
    benchmark: str
    dimension: int
    iterations: int
    replications: int = 10
    base_seed: int = 1
    params: Tuple[Tuple[str, object], ...] = ()

    def __post_init__(self):
        if isinstance(self.params, dict):
            object.__setattr__(self, "params", tuple(sorted(self.params.items())))

    def validate(self) -> "ExperimentConfig":
        if self.algorithm not in ALGORITHM_IDS:
            raise ValueError(
                f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHM_IDS)}"
            )
        make_benchmark(self.benchmark, self.dimension)
        if int(self.iterations) != self.iterations or self.iterations < 0:
            raise ValueError("iterations must be a non-negative integer")
        if int(self.replications) != self.replications or self.replications < 1:
            raise ValueError("replications must be at least 1")
        make_params(self.algorithm, dict(self.params))
        return self

    @property
    def key(self):
        return (self.algorithm, self.benchmark, self.dimension, self.iterations)


_RUNNERS = {
    "ba": run_ba,
    "rev-ba": run_ba,
    "abc": run_abc,
    "rev-abc": run_abc,
    "hybrid": run_hybrid,
}


def run_replication(config: ExperimentConfig, replication: int) -> RunRecord:
    """Run one replication (seed ``base_seed + replication``)."""
    spec = make_benchmark(config.benchmark, config.dimension)
    params = make_params(config.algorithm, dict(config.params))
    seed = int(config.base_seed) + int(replication)
    record = _RUNNERS[config.algorithm](spec, params, config.iterations, seed)
    record.algorithm = config.algorithm
    record.seed = seed
    record.replication = int(replication)
    if np.any(np.diff(record.trace) > 0):
        raise HarnessError(f"best-so-far trace increased in {config.key} replication {replication}")
    return record


def _task(args):
    return run_replication(*args)


def run_experiments(configs: Sequence[ExperimentConfig], jobs: int = 1) -> List[List[RunRecord]]:
    """Records for every config, each list ordered by replication index."""
    for c in configs:
        c.validate()
    tasks = [(c, r) for c in configs for r in range(c.replications)]
    if jobs and jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            flat = list(pool.map(_task, tasks))
    else:
        flat = [_task(t) for t in tasks]
    out, start = [], 0
    for c in configs:
        out.append(flat[start:start + c.replications])
        start += c.replications
    return out


def run_experiment(config: ExperimentConfig, jobs: int = 1) -> List[RunRecord]:
    return run_experiments([config], jobs)[0]


# ---------------------------------------------------------------- statistics

@dataclass(frozen=True)
class SummaryRow:
    algorithm: str
    benchmark: str
    dimension: int
    iterations: int
    gaps: Tuple[float, ...]
    min_gap: float
    median_gap: float
    mean_gap: float
    max_gap: float

    @property
    def key(self):
        return (self.algorithm, self.benchmark, self.dimension, self.iterations)

    @property
    def replications(self) -> int:
        return len(self.gaps)


def _key(record):
    if isinstance(record, RunRecord):
        return record.config_key
    return (record["algorithm"], record["benchmark"], int(record["dimension"]),
            int(record["iterations"]))


def _gap(record):
    gap = record.final_gap if isinstance(record, RunRecord) else record["final_gap"]
    if gap is None:
        raise ValueError("records without a known optimum cannot be summarised")
    return float(gap)


def summarize(records: Sequence) -> SummaryRow:
    """Min/median/mean/max of the final gaps of records sharing one config."""
    records = list(records)
    if not records:
        raise ValueError("summarize needs at least one record")
    keys = {_key(r) for r in records}
    if len(keys) > 1:
        raise ValueError(f"records mix configurations: {sorted(keys)}")
    gaps = sorted(_gap(r) for r in records)
    algorithm, benchmark, dimension, iterations = keys.pop()
    return SummaryRow(algorithm, benchmark, dimension, iterations, tuple(gaps),
                      gaps[0], float(np.median(gaps)), math.fsum(gaps) / len(gaps), gaps[-1])


def summarize_all(records: Iterable) -> List[SummaryRow]:
    groups: Dict[tuple, list] = {}
    for r in records:
        groups.setdefault(_key(r), []).append(r)
    return [summarize(groups[k]) for k in groups]


@dataclass(frozen=True)
class FigureCell:
    algorithm: str
    dimension: Optional[int]
    iterations: Optional[int]
    benchmarks: int
    complete: bool
    mean_gap: Optional[float]


def aggregate_figure_data(summaries: Sequence[SummaryRow],
                          group_by: Sequence[str] = ("dimension", "iterations"),
                          suite: Sequence[str] = BENCHMARK_IDS) -> List[FigureCell]:
    """Average the benchmark-level mean gaps per algorithm and cell.

    A cell whose underlying (dimension, iterations) blocks do not each cover
    the whole ``suite`` is flagged incomplete and gets no average.
    """
    group_by = tuple(group_by)
    for g in group_by:
        if g not in ("dimension", "iterations"):
            raise ValueError(f"cannot group by {g!r}")
    cells: Dict[tuple, list] = {}
    for s in summaries:
        key = (s.algorithm,) + tuple(getattr(s, g) for g in group_by)
        cells.setdefault(key, []).append(s)
    out = []
    for key in sorted(cells, key=lambda k: (ALGORITHM_IDS.index(k[0]) if k[0] in ALGORITHM_IDS
                                            else len(ALGORITHM_IDS), k)):
        rows = cells[key]
        blocks: Dict[tuple, set] = {}
        for s in rows:
            blocks.setdefault((s.dimension, s.iterations), set()).add(s.benchmark)
        complete = all(set(suite) <= present for present in blocks.values())
        mean = math.fsum(s.mean_gap for s in rows) / len(rows) if complete else None
        fields = dict(zip(group_by, key[1:]))
        out.append(FigureCell(key[0], fields.get("dimension"), fields.get("iterations"),
                              len({s.benchmark for s in rows}), complete, mean))
    return out


# ---------------------------------------------------------------- files

def _num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _record_row(r: RunRecord, timing: bool = True) -> dict:
    return {
        "algorithm": r.algorithm,
        "benchmark": r.benchmark,
        "dimension": int(r.dimension),
        "iterations": int(r.iterations),
        "seed": int(r.seed),
        "final_value": float(r.final_value),
        "final_gap": None if r.final_gap is None else float(r.final_gap),
        "evaluations": int(r.evaluations),
        "wall_time_s": float(r.wall_time_s) if timing else None,
    }


def _open_text(destination):
    if hasattr(destination, "write"):
        return destination, False
    return open(destination, "w", newline="", encoding="utf-8"), True


def _write_csv(rows, columns, destination):
    fh, close = _open_text(destination)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row[c] if isinstance(row[c], str) else _num(row[c]) for c in columns])
    finally:
        if close:
            fh.close()


def export_results(records: Sequence[RunRecord], summaries: Optional[Sequence[SummaryRow]] = None,
                   format: str = "csv", destination=None, include_trace: bool = False,
                   timing: bool = True) -> None:
    """Write one row/object per record to ``destination`` (a path or text stream).

    When ``summaries`` are given and ``destination`` is a path, they go to a
    sibling ``<stem>_summary.csv``. With ``timing=False`` the ``wall_time_s``
    field is left empty so that repeated runs produce identical bytes.
    """
    if format not in ("csv", "json"):
        raise ValueError("format must be 'csv' or 'json'")
    if destination is None:
        raise ValueError("destination is required")
    if format == "csv":
        _write_csv([_record_row(r, timing) for r in records], CSV_COLUMNS, destination)
    else:
        objs = []
        for r in records:
            obj = _record_row(r, timing)
            if include_trace:
                obj["trace"] = [float(v) for v in r.trace]
            objs.append(obj)
        text = json.dumps(objs, indent=1, allow_nan=False) + "\n"
        fh, close = _open_text(destination)
        try:
            fh.write(text)
        finally:
            if close:
                fh.close()
    if summaries is not None and not hasattr(destination, "write"):
        p = Path(destination)
        write_summaries(summaries, p.with_name(p.stem + "_summary.csv"))


def write_summaries(summaries: Sequence[SummaryRow], destination) -> None:
    rows = [{
        "algorithm": s.algorithm, "benchmark": s.benchmark, "dimension": s.dimension,
        "iterations": s.iterations, "replications": s.replications, "min_gap": s.min_gap,
        "median_gap": s.median_gap, "mean_gap": s.mean_gap, "max_gap": s.max_gap,
    } for s in summaries]
    _write_csv(rows, SUMMARY_COLUMNS, destination)


def write_figure_table(cells: Sequence[FigureCell], destination) -> None:
    rows = [{
        "algorithm": c.algorithm, "dimension": c.dimension, "iterations": c.iterations,
        "benchmarks": c.benchmarks, "complete": c.complete, "mean_gap": c.mean_gap,
    } for c in cells]
    _write_csv(rows, FIGURE_COLUMNS, destination)


def _parse_row(row: dict) -> dict:
    return {
        "algorithm": row["algorithm"],
        "benchmark": row["benchmark"],
        "dimension": int(row["dimension"]),
        "iterations": int(row["iterations"]),
        "seed": int(row["seed"]),
        "final_value": float(row["final_value"]),
        "final_gap": float(row["final_gap"]) if row["final_gap"] not in ("", None) else None,
        "evaluations": int(row["evaluations"]),
        "wall_time_s": float(row["wall_time_s"]) if row["wall_time_s"] not in ("", None) else None,
    }


def read_results_csv(source) -> List[dict]:
    """Parse a results CSV back into typed dicts. Raises ``ValueError`` on a bad header."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, newline="", encoding="utf-8") as fh:
            text = fh.read()
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected columns {reader.fieldnames}")
    return [_parse_row(row) for row in reader]


def read_results_json(source) -> List[dict]:
    if hasattr(source, "read"):
        data = json.load(source)
    else:
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
    out = []
    for obj in data:
        row = {k: obj[k] for k in CSV_COLUMNS}
        if "trace" in obj:
            row["trace"] = [float(v) for v in obj["trace"]]
        out.append(row)
    return out


# ---------------------------------------------------------------- config files

_CONFIG_KEYS = {
    "algorithm": "algorithm", "algorithms": "algorithm", "algo": "algorithm",
    "benchmark": "benchmark", "benchmarks": "benchmark", "bench": "benchmark",
    "dimension": "dimension", "dimensions": "dimension", "dim": "dimension",
    "iterations": "iterations", "iters": "iterations",
    "replications": "replications", "reps": "replications",
    "seed": "base_seed", "base_seed": "base_seed",
}


def parse_config_text(text: str) -> List[ExperimentConfig]:
    """Parse a flat ``key = value`` document into experiment configs.

    ``algorithm``, ``benchmark``, ``dimension`` and ``iterations`` accept
    comma-separated lists and expand to their Cartesian product. Algorithm
    parameters use ``param.<name> = value``. ``#`` starts a comment. Unknown
    keys raise ``ValueError``.
    """
    values: Dict[str, str] = {}
    params: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, value = (p.strip() for p in line.split("=", 1))
        lk = key.lower()
        if lk.startswith("param."):
            params[key[6:]] = value
        elif lk in _CONFIG_KEYS:
            values[_CONFIG_KEYS[lk]] = value
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    missing = [k for k in ("algorithm", "benchmark", "dimension", "iterations") if k not in values]
    if missing:
        raise ValueError(f"config lacks {', '.join(missing)}")

    def items(name):
        return [p.strip() for p in values[name].split(",") if p.strip()]

    reps = int(values.get("replications", 10))
    seed = int(values.get("base_seed", 1))
    configs = []
    for algorithm in items("algorithm"):
        for dimension in (int(d) for d in items("dimension")):
            for iterations in (int(i) for i in items("iterations")):
                for benchmark in items("benchmark"):
                    configs.append(ExperimentConfig(algorithm, benchmark, dimension, iterations,
                                                    reps, seed, dict(params)).validate())
    return configs


def load_config(path) -> List[ExperimentConfig]:
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read())
