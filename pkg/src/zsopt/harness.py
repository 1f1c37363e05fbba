"""Experiment orchestration: config, run matrix, result files, comparison report."""
from __future__ import annotations

import csv
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field, fields
from functools import lru_cache
from pathlib import Path
from typing import Optional

import numpy as np

from . import engineering, problems, stats
from .baselines import DeConfig, PsoConfig, de_run, pso_run, random_search_run
from .core import ConfigurationError, EvaluationBudget, Problem, RunResult
from .zso import HyperSchedule, ZsoConfig, zso_run

log = logging.getLogger(__name__)

SEED_STRIDE = 1000003
ENGINEERING_MAX_FE = 20000
FE_PER_DIM = 1000
SUITES = ("cec2014", "cec2022", "engineering", "custom")
DEFAULT_DIMS = {"cec2014": [30, 50], "cec2022": [10, 20], "engineering": [0], "custom": [10]}

ZSO_VARIANTS = {
    "zso-cons": "constant",
    "zso-linear": "linear",
    "zso-uniform": "uniform",
    "zso-gauss": "gaussian",
}
ALGORITHMS = (*ZSO_VARIANTS, "pso", "de", "random")


def run_algorithm(tag: str, problem: Problem, population: int, seed: int,
                  budget: EvaluationBudget, trace: bool = True) -> RunResult:
    if tag in ZSO_VARIANTS:
        config = ZsoConfig(population, HyperSchedule(ZSO_VARIANTS[tag]), seed, trace)
        return zso_run(problem, config, budget)
    if tag == "pso":
        return pso_run(problem, PsoConfig(), population, seed, budget, trace)
    if tag == "de":
        return de_run(problem, DeConfig(), population, seed, budget, trace)
    if tag == "random":
        return random_search_run(problem, population, seed, budget, trace)
    raise ConfigurationError(f"unknown algorithm tag {tag!r}")


def is_engineering(tag: str) -> bool:
    return tag in engineering.TABLE


@lru_cache(maxsize=256)
def build_problem(tag: str, dim: int, instance_seed: int) -> Problem:
    if is_engineering(tag):
        return engineering.make_engineering(tag)
    return problems.make_catalog_problem(tag, dim, instance_seed)


def max_fe_for(tag: str, dim: int) -> int:
    return ENGINEERING_MAX_FE if is_engineering(tag) else FE_PER_DIM * dim


@dataclass
class ExperimentConfig:
    suite: str = "cec2022"
    problems: Optional[list] = None
    dims: Optional[list] = None
    algorithms: list = field(default_factory=lambda: list(ALGORITHMS))
    trials: int = 30
    population: int = 100
    base_seed: int = 0
    instance_seed: int = 2024
    workers: int = 1
    results: str = "results.csv"
    traces: Optional[str] = None

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.suite not in SUITES:
            raise ConfigurationError(f"suite: unknown suite {self.suite!r}; expected one of {SUITES}")
        for key in ("trials", "population", "workers"):
            value = getattr(self, key)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigurationError(f"{key}: must be a positive integer, got {value!r}")
        if self.population < 4:
            raise ConfigurationError("population: must be >= 4")
        for key in ("base_seed", "instance_seed"):
            value = getattr(self, key)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ConfigurationError(f"{key}: must be a non-negative integer")
        if not self.algorithms:
            raise ConfigurationError("algorithms: at least one algorithm is required")
        for i, tag in enumerate(self.algorithms):
            if tag not in ALGORITHMS:
                raise ConfigurationError(f"algorithms[{i}]: unknown algorithm tag {tag!r}")
        if self.suite == "custom" and not self.problems:
            raise ConfigurationError("problems: the custom suite needs an explicit problem list")
        known = self.suite_problems()
        for i, tag in enumerate(self.problems or []):
            if tag not in known:
                raise ConfigurationError(f"problems[{i}]: unknown problem tag {tag!r} for suite {self.suite}")
        dims = self.dims if self.dims is not None else DEFAULT_DIMS[self.suite]
        for i, d in enumerate(dims):
            if not isinstance(d, int) or isinstance(d, bool) or (d < 2 and self.suite != "engineering"):
                raise ConfigurationError(f"dims[{i}]: must be an integer >= 2, got {d!r}")

    def suite_problems(self) -> list:
        if self.suite == "engineering":
            return list(engineering.NAMES)
        if self.suite == "custom":
            return list(problems.CATALOG) + list(engineering.NAMES)
        return problems.suite_tags(self.suite)

    def problem_list(self) -> list:
        return list(self.problems) if self.problems else self.suite_problems()

    def dim_list(self) -> list:
        return list(self.dims) if self.dims is not None else DEFAULT_DIMS[self.suite]


def load_config(path) -> ExperimentConfig:
    """Parse a JSON experiment file; unset keys keep their defaults."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigurationError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"malformed JSON in {path}: {exc}") from None
    return config_from_dict(raw)


def config_from_dict(raw: dict) -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ConfigurationError("config: top level must be a JSON object")
    allowed = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ConfigurationError(f"{unknown[0]}: unknown configuration key")
    return ExperimentConfig(**raw)


@dataclass
class Cell:
    index: int
    suite: str
    problem: str
    dim: int
    algorithm: str
    trial: int
    seed: int
    population: int
    instance_seed: int


def cells(config: ExperimentConfig) -> list:
    """Run matrix in lexicographic (problem, dim, algorithm, trial) order."""
    out = []
    for tag in config.problem_list():
        dims = [engineering.TABLE[tag][0]] if is_engineering(tag) else config.dim_list()
        for dim in dims:
            for algo in config.algorithms:
                for trial in range(config.trials):
                    i = len(out)
                    seed = (config.base_seed + SEED_STRIDE * i) % 2**64
                    suite = config.suite
                    if suite == "custom":
                        suite = "engineering" if is_engineering(tag) else tag.split("-")[0]
                    out.append(Cell(i, suite, tag, dim, algo, trial, seed,
                                    config.population, config.instance_seed))
    return out


@dataclass
class ResultRow:
    suite: str
    problem: str
    dim: int
    algorithm: str
    trial: int
    seed: int
    best_fitness: float
    best_raw_objective: float
    feasible: bool
    fe_used: int
    generations: int
    wall_milliseconds: float
    error: str = ""


RESULT_COLUMNS = [f.name for f in fields(ResultRow)]


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def run_cell(cell: Cell):
    """Execute one (problem, algorithm, trial) cell. Returns ``(row, trace)``."""
    t0 = time.perf_counter()
    try:
        problem = build_problem(cell.problem, cell.dim, cell.instance_seed)
        budget = EvaluationBudget(max_fe_for(cell.problem, cell.dim))
        result = run_algorithm(cell.algorithm, problem, cell.population, cell.seed, budget)
        best = result.best
        row = ResultRow(cell.suite, cell.problem, cell.dim, cell.algorithm, cell.trial,
                        cell.seed, best.fitness, best.objective_value,
                        best.violation_sum == 0.0, result.fe_used, result.generations,
                        0.0)
        trace = result.trace
    except Exception as exc:  # recorded in the row; the matrix keeps going
        nan = float("nan")
        row = ResultRow(cell.suite, cell.problem, cell.dim, cell.algorithm, cell.trial,
                        cell.seed, nan, nan, False, 0, 0, 0.0,
                        f"{type(exc).__name__}: {exc}")
        trace = []
    row.wall_milliseconds = (time.perf_counter() - t0) * 1000.0
    return row, trace


def trace_path(traces_dir, row: ResultRow) -> Path:
    return Path(traces_dir) / f"{row.problem}_D{row.dim}_{row.algorithm}_t{row.trial:03d}.jsonl"


def write_trace(path: Path, trace) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for fe, best in trace:
            fh.write(json.dumps({"fe": int(fe), "best": float(best)}) + "\n")


def run_experiment(config: ExperimentConfig, out=None, traces=None, workers=None) -> list:
    """Run every cell, streaming rows to the results CSV as they complete."""
    out = Path(out or config.results)
    traces = traces if traces is not None else config.traces
    workers = workers or config.workers
    matrix = cells(config)
    for c in {(c.problem, c.dim) for c in matrix}:
        build_problem(c[0], c[1], config.instance_seed)
    out.parent.mkdir(parents=True, exist_ok=True)
    if traces:
        Path(traces).mkdir(parents=True, exist_ok=True)

    rows = []
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULT_COLUMNS)
        fh.flush()

        def collect(row, trace):
            writer.writerow([_fmt(getattr(row, k)) for k in RESULT_COLUMNS])
            fh.flush()
            if traces and not row.error:
                write_trace(trace_path(traces, row), trace)
            if row.error:
                log.warning("cell %s/%s/%s trial %d failed: %s", row.problem, row.dim,
                            row.algorithm, row.trial, row.error)
            rows.append(row)

        if workers == 1:
            for cell in matrix:
                collect(*run_cell(cell))
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(run_cell, cell) for cell in matrix]
                for fut in as_completed(futures):
                    collect(*fut.result())
    return rows


def read_results(path) -> list:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


@dataclass
class ComparisonTable:
    reference: str
    algorithms: list
    problems: list
    mean: np.ndarray  # (A, P)
    std: np.ndarray
    p_raw: dict  # (algorithm, problem) -> p
    p_adjusted: dict
    marks: dict
    average_ranks: dict
    tallies: dict  # algorithm -> (+, ≈, -)


def compare(samples: dict, reference: str, alpha: float = 0.05) -> ComparisonTable:
    """Build the comparison table from ``{(algorithm, problem): values}``."""
    algorithms = sorted({a for a, _ in samples}, key=lambda a: (a != reference, a))
    problem_keys = list(dict.fromkeys(p for _, p in samples))
    if reference not in algorithms:
        raise ConfigurationError(f"reference algorithm {reference!r} not present in results")
    if len(algorithms) < 2:
        raise ConfigurationError("results contain a single algorithm; nothing to compare")
    for prob in problem_keys:
        counts = {}
        for algo in algorithms:
            if (algo, prob) not in samples:
                raise ConfigurationError(f"missing results for ({prob}, {algo})")
            counts[algo] = len(samples[(algo, prob)])
        ref_n = counts[reference]
        for algo, n in counts.items():
            if n != ref_n:
                raise ConfigurationError(
                    f"unequal trial counts: ({prob}, {algo}) has {n}, reference has {ref_n}"
                )

    A, P = len(algorithms), len(problem_keys)
    mean = np.empty((A, P))
    std = np.empty((A, P))
    for i, algo in enumerate(algorithms):
        for j, prob in enumerate(problem_keys):
            v = np.asarray(samples[(algo, prob)], dtype=float)
            mean[i, j] = v.mean()
            std[i, j] = v.std(ddof=1) if v.size > 1 else 0.0

    others = [a for a in algorithms if a != reference]
    p_raw, p_adj, marks = {}, {}, {}
    for prob in problem_keys:
        ref = samples[(reference, prob)]
        raw = [stats.mann_whitney_u(ref, samples[(a, prob)])[1] for a in others]
        adjusted = stats.holm_adjust(raw)
        for a, p, q in zip(others, raw, adjusted):
            p_raw[(a, prob)] = float(p)
            p_adj[(a, prob)] = float(q)
            marks[(a, prob)] = stats.significance_mark(ref, samples[(a, prob)], q, alpha)

    ranks = stats.average_ranks(mean)
    tallies = {
        a: tuple(sum(marks[(a, p)] == m for p in problem_keys)
                 for m in (stats.BETTER, stats.SIMILAR, stats.WORSE))
        for a in others
    }
    return ComparisonTable(reference, algorithms, problem_keys, mean, std, p_raw, p_adj,
                           marks, dict(zip(algorithms, ranks.tolist())), tallies)


def samples_from_rows(rows) -> dict:
    samples = {}
    for r in rows:
        if r.get("error"):
            raise ConfigurationError(
                f"row for ({r['problem']}, {r['algorithm']}) trial {r['trial']} has an error"
            )
        key = (r["algorithm"], f"{r['problem']}-D{r['dim']}")
        samples.setdefault(key, []).append(float(r["best_fitness"]))
    return samples


def format_table(table: ComparisonTable) -> str:
    """Aligned-text rendering: mean/std/mark per cell, then tallies and ranks."""
    header = ["problem", "stat"] + table.algorithms
    lines = []
    for j, prob in enumerate(table.problems):
        mean_row = [prob, "mean"]
        std_row = ["", "std"]
        for i, algo in enumerate(table.algorithms):
            mark = "" if algo == table.reference else " " + table.marks[(algo, prob)]
            mean_row.append(f"{table.mean[i, j]:.3e}{mark}")
            std_row.append(f"{table.std[i, j]:.3e}")
        lines += [mean_row, std_row]
    tally = ["+/≈/-", ""]
    rank = ["avg rank", ""]
    for algo in table.algorithms:
        tally.append("-" if algo == table.reference else "/".join(map(str, table.tallies[algo])))
        rank.append(f"{table.average_ranks[algo]:.2f}")
    lines += [tally, rank]
    widths = [max(len(str(r[k])) for r in [header] + lines) for k in range(len(header))]
    render = lambda r: "  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip()
    sep = "-" * len(render(header))
    body = [render(header), sep] + [render(r) for r in lines[:-2]] + [sep] + [render(r) for r in lines[-2:]]
    return "\n".join(body) + "\n"


def stats_report(results_csv, reference: str, out_prefix=None, alpha: float = 0.05) -> ComparisonTable:
    """Compare every algorithm in ``results_csv`` against ``reference``.

    Writes ``<prefix>_comparison.csv``, ``<prefix>_summary.csv`` and
    ``<prefix>_comparison.txt``; the prefix defaults to the CSV path stem.
    """
    rows = read_results(results_csv)
    table = compare(samples_from_rows(rows), reference, alpha)
    prefix = Path(out_prefix) if out_prefix else Path(results_csv).with_suffix("")
    with open(f"{prefix}_comparison.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["problem", "algorithm", "mean", "std", "p_value", "p_holm", "mark"])
        for j, prob in enumerate(table.problems):
            for i, algo in enumerate(table.algorithms):
                key = (algo, prob)
                w.writerow([prob, algo, _fmt(float(table.mean[i, j])), _fmt(float(table.std[i, j])),
                            _fmt(table.p_raw[key]) if key in table.p_raw else "",
                            _fmt(table.p_adjusted[key]) if key in table.p_adjusted else "",
                            table.marks.get(key, "")])
    with open(f"{prefix}_summary.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["algorithm", "average_rank", "better", "similar", "worse"])
        for algo in table.algorithms:
            t = table.tallies.get(algo, ("", "", ""))
            w.writerow([algo, _fmt(float(table.average_ranks[algo])), *t])
    Path(f"{prefix}_comparison.txt").write_text(format_table(table), encoding="utf-8")
    return table
