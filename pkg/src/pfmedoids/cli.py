"""Command-line front end.

``pfmedoids solve`` clusters a point file and prints JSON or CSV;
``pfmedoids bench`` times solvers on synthetic fronts.
Every index printed by the CLI is 1-based in the sorted front.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import statistics
import sys
import time
import tracemalloc
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence, TextIO, Union

import numpy as np

from .errors import (
    EmptyInput,
    InstanceTooLarge,
    KOutOfRange,
    NonFiniteCoordinate,
    NonPositiveAlpha,
    NotAParetoFront,
    TooFewPoints,
    TooManyCandidates,
)
from .generators import GENERATORS
from .oracles import (
    MAX_INTERVAL_CANDIDATES,
    MAX_PARTITION_K,
    MAX_PARTITION_POINTS,
    PartitionCandidate,
    brute_all_partitions,
    brute_interval,
    pam_heuristic,
)
from .pareto import ParetoInstance, build_instance, dist_pow_many
from .plot import emit_plot
from .pointfile import PointFileError, read_points
from .solver import IntervalClustering, enumerate_local_minima_k2, solve_general, solve_k1

ALGORITHMS = ("auto", "dp", "brute-interval", "brute-all", "pam", "local-minima")
FORMATS = ("json", "csv")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_GUARD = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def available_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


@dataclass
class RunConfig:
    input_path: Union[str, Path] = "-"
    k: int = 2
    alpha: float = 2.0
    algorithm: str = "auto"
    prune: bool = True
    assume_front: bool = False
    workers: int = 0  # 0 picks every available core
    seed: int = 0
    output_format: str = "json"
    plot_path: Optional[Union[str, Path]] = None
    out: Optional[Union[str, Path]] = None

    def validate(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise UsageError(f"--k must be a positive integer, got {self.k!r}")
        if not math.isfinite(self.alpha) or self.alpha <= 0:
            raise UsageError(f"--alpha must be a positive finite number, got {self.alpha!r}")
        if self.algorithm not in ALGORITHMS:
            raise UsageError(f"--algorithm must be one of {', '.join(ALGORITHMS)}")
        if self.algorithm == "local-minima" and self.k != 2:
            raise UsageError("--algorithm local-minima requires --k 2")
        if self.workers < 0:
            raise UsageError("--workers must be >= 0")
        if self.output_format not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}")

    def effective_workers(self) -> int:
        return self.workers if self.workers > 0 else available_workers()


@dataclass
class Outcome:
    """Solver result in a shape shared by every algorithm."""

    labels: np.ndarray
    medoids: tuple[int, ...]
    cluster_costs: tuple[float, ...]
    total: float
    interval: bool
    extra: dict = field(default_factory=dict)


def _from_clustering(inst: ParetoInstance, res: IntervalClustering) -> Outcome:
    return Outcome(res.labels(inst.n), res.medoids, res.cluster_costs, res.total, True)


def _from_candidate(inst: ParetoInstance, cand: PartitionCandidate, alpha: float) -> Outcome:
    labels = np.asarray(cand.assignment, dtype=np.int64)
    costs = []
    for b, m in enumerate(cand.medoids):
        members = inst.points[labels == b]
        costs.append(float(dist_pow_many(members, inst.points[m], alpha).sum()))
    return Outcome(labels, tuple(cand.medoids), tuple(costs), cand.total, cand.is_interval())


def solve(inst: ParetoInstance, config: RunConfig) -> Outcome:
    k, alpha, algo = config.k, config.alpha, config.algorithm
    workers = config.effective_workers()
    if algo == "auto" and k == 1:
        return _from_clustering(inst, solve_k1(inst, alpha, use_dichotomic=True))
    if algo in ("auto", "dp"):
        return _from_clustering(inst, solve_general(inst, k, alpha, prune=config.prune, workers=workers))
    if algo == "brute-interval":
        return _from_clustering(inst, brute_interval(inst, k, alpha))
    if algo == "brute-all":
        cand, _ = brute_all_partitions(inst, k, alpha)
        return _from_candidate(inst, cand, alpha)
    if algo == "pam":
        cand = pam_heuristic(inst, k, alpha, seed=config.seed)
        out = _from_candidate(inst, cand, alpha)
        out.extra = {"iterations": cand.iterations, "converged": cand.converged}
        return out
    if algo == "local-minima":
        if inst.n < 2:
            raise TooFewPoints("two clusters need at least two points")
        reports = enumerate_local_minima_k2(inst, alpha, workers=workers)
        best = min(reports, key=lambda r: r.total)  # first minimum keeps the smallest split
        labels = np.where(np.arange(inst.n) < best.split, 0, 1)
        out = _from_candidate(inst, PartitionCandidate(tuple(labels), best.medoids, best.total), alpha)
        out.extra = {
            "local_minima": [
                {"split": r.split, "medoids": [m + 1 for m in r.medoids], "total": r.total} for r in reports
            ]
        }
        return out
    raise UsageError(f"unknown algorithm {algo!r}")


def result_document(inst: ParetoInstance, config: RunConfig, outcome: Outcome) -> dict:
    clusters = []
    for b, m in enumerate(outcome.medoids):
        members = np.flatnonzero(outcome.labels == b)
        entry = {
            "from": int(members[0]) + 1,
            "to": int(members[-1]) + 1,
            "medoid": m + 1,
            "cost": outcome.cluster_costs[b],
            "size": len(members),
            "medoid_point": [float(inst.points[m, 0]), float(inst.points[m, 1])],
        }
        if not outcome.interval:
            entry["members"] = [int(i) + 1 for i in members]
        clusters.append(entry)
    doc = {
        "n": inst.n,
        "k": len(outcome.medoids),
        "alpha": config.alpha,
        "algorithm": config.algorithm,
        "total_cost": outcome.total,
        "interval": outcome.interval,
        "breaks": [c["to"] for c in clusters[:-1]] if outcome.interval else None,
        "clusters": clusters,
    }
    doc.update(outcome.extra)
    doc["points"] = [[float(x), float(y)] for x, y in inst.points]
    return doc


def format_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def format_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["cluster", "from", "to", "size", "medoid", "medoid_x1", "medoid_x2", "cost"])
    for b, c in enumerate(doc["clusters"], start=1):
        x, y = c["medoid_point"]
        w.writerow([b, c["from"], c["to"], c["size"], c["medoid"], repr(x), repr(y), repr(c["cost"])])
    w.writerow(["total", "", "", doc["n"], "", "", "", repr(doc["total_cost"])])
    return buf.getvalue()


def _diag(stream: TextIO, message: str) -> None:
    print(f"pfmedoids: {message}", file=stream)


def run(config: RunConfig, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Execute one solve and write its result; returns the process exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        config.validate()
    except UsageError as exc:
        _diag(stderr, f"usage: {exc}")
        return EXIT_USAGE

    try:
        raw = read_points(config.input_path)
        inst = build_instance(raw, assume_front=config.assume_front)
    except NotAParetoFront as exc:
        _diag(stderr, f"data: {exc}")
        return EXIT_DATA
    except (PointFileError, EmptyInput, NonFiniteCoordinate) as exc:
        _diag(stderr, f"data: {exc}")
        return EXIT_DATA

    try:
        outcome = solve(inst, config)
    except (KOutOfRange, TooManyCandidates, InstanceTooLarge, TooFewPoints) as exc:
        _diag(stderr, f"solver: {exc}")
        return EXIT_GUARD
    except NonPositiveAlpha as exc:
        _diag(stderr, f"usage: {exc}")
        return EXIT_USAGE

    doc = result_document(inst, config, outcome)
    text = format_json(doc) if config.output_format == "json" else format_csv(doc)
    try:
        if config.out is None:
            stdout.write(text)
        else:
            Path(config.out).write_text(text, encoding="utf-8")
        if config.plot_path is not None:
            labels = tuple(int(x) for x in outcome.labels)
            title = f"K={doc['k']}, alpha={config.alpha:g}, total={outcome.total:.6g}"
            emit_plot(inst, PartitionCandidate(labels, outcome.medoids, outcome.total), config.plot_path, title)
    except OSError as exc:
        _diag(stderr, f"output: {exc}")
        return EXIT_DATA
    return EXIT_OK


# ---------------------------------------------------------------- benchmark

BENCH_COLUMNS = (
    "generator", "n", "k", "alpha", "algorithm", "status",
    "median_seconds", "peak_kib", "total_cost", "check", "time_ratio",
)


@dataclass
class BenchConfig:
    sizes: Sequence[int] = (200, 400)
    ks: Sequence[int] = (5,)
    alphas: Sequence[float] = (2.0,)
    algorithms: Sequence[str] = ("dp",)
    generators: Sequence[str] = ("random",)
    repetitions: int = 3
    seed: int = 0
    prune: bool = True
    workers: int = 1


def _guard(algo: str, n: int, k: int) -> Optional[str]:
    if not 1 <= k <= n:
        return f"K={k} outside [1..{n}]"
    if algo == "brute-all" and (n > MAX_PARTITION_POINTS or k > MAX_PARTITION_K):
        return "set-partition search too large"
    if algo == "brute-interval" and math.comb(n - 1, k - 1) > MAX_INTERVAL_CANDIDATES:
        return "too many break placements"
    if algo == "local-minima" and k != 2:
        return "local-minima needs K=2"
    return None


def _bench_runner(algo: str, k: int, alpha: float, cfg: BenchConfig) -> Callable[[ParetoInstance], float]:
    rc = RunConfig(k=k, alpha=alpha, algorithm=algo, prune=cfg.prune, workers=cfg.workers, seed=cfg.seed)
    return lambda inst: solve(inst, rc).total


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))


def bench(cfg: BenchConfig) -> list[dict]:
    """Time every grid cell; one row per (generator, n, K, alpha, algorithm)."""
    rng = np.random.default_rng(cfg.seed)
    rows = []
    previous: dict[tuple, float] = {}
    for gen in cfg.generators:
        for n in cfg.sizes:
            inst = GENERATORS[gen](n, rng)
            for k in cfg.ks:
                for alpha in cfg.alphas:
                    for algo in cfg.algorithms:
                        row = dict.fromkeys(BENCH_COLUMNS, "")
                        row.update(generator=gen, n=n, k=k, alpha=alpha, algorithm=algo)
                        reason = _guard(algo, n, k)
                        if reason is not None:
                            row.update(status="guarded", check=reason)
                            rows.append(row)
                            continue
                        runner = _bench_runner(algo, k, alpha, cfg)
                        total = runner(inst)  # warm-up, also pays any compilation
                        times = []
                        for _ in range(cfg.repetitions):
                            t0 = time.perf_counter()
                            runner(inst)
                            times.append(time.perf_counter() - t0)
                        tracemalloc.start()
                        runner(inst)
                        _, peak = tracemalloc.get_traced_memory()
                        tracemalloc.stop()
                        med = statistics.median(times)
                        row.update(
                            status="ok",
                            median_seconds=f"{med:.6f}",
                            peak_kib=f"{peak / 1024:.1f}",
                            total_cost=repr(total),
                        )
                        if algo in ("auto", "dp", "brute-interval"):
                            other = "brute-interval" if algo != "brute-interval" else "dp"
                            if _guard(other, n, k) is None:
                                ref = _bench_runner(other, k, alpha, cfg)(inst)
                                row["check"] = "match" if _close(total, ref) else "MISMATCH"
                            else:
                                row["check"] = "skipped"
                        key = (gen, k, alpha, algo)
                        if key in previous and previous[key] > 0:
                            row["time_ratio"] = f"{med / previous[key]:.3f}"
                        previous[key] = med
                        rows.append(row)
    return rows


def format_bench(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------- argparse


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; usage errors here exit with 1
    def error(self, message: str):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _str_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pfmedoids", description="Exact K-medoids clustering of a 2-d Pareto front.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="cluster a point file")
    s.add_argument("input", help="point file, one 'x,y' per line; '-' reads stdin")
    s.add_argument("--k", type=int, required=True, help="number of clusters")
    s.add_argument("--alpha", type=float, default=2.0, help="distance exponent (default 2)")
    s.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    s.add_argument("--prune", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--assume-front", action="store_true", help="reject dominated points instead of dropping them")
    s.add_argument("--workers", type=int, default=0, help="kernel threads, 0 = all available")
    s.add_argument("--seed", type=int, default=0, help="seed for the pam heuristic")
    s.add_argument("--format", choices=FORMATS, default="json", dest="output_format")
    s.add_argument("--plot", default=None, dest="plot_path", help="write an SVG plot here")
    s.add_argument("--out", default=None, help="write the result here instead of stdout")

    b = sub.add_parser("bench", help="time solvers on synthetic fronts")
    b.add_argument("--sizes", type=_int_list, default=[200, 400])
    b.add_argument("--ks", type=_int_list, default=[5])
    b.add_argument("--alphas", type=_float_list, default=[2.0])
    b.add_argument("--algorithms", type=_str_list, default=["dp"])
    b.add_argument("--generators", type=_str_list, default=["random"])
    b.add_argument("--repetitions", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--prune", action=argparse.BooleanOptionalAction, default=True)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out", default=None)
    return parser


def _bench_config(ns: argparse.Namespace) -> BenchConfig:
    unknown = [a for a in ns.algorithms if a not in ALGORITHMS]
    if unknown:
        raise UsageError(f"unknown algorithm(s): {', '.join(unknown)}")
    unknown = [g for g in ns.generators if g not in GENERATORS]
    if unknown:
        raise UsageError(f"unknown generator(s): {', '.join(unknown)}; choose from {', '.join(GENERATORS)}")
    if ns.repetitions < 1 or ns.workers < 0 or any(n < 1 for n in ns.sizes):
        raise UsageError("sizes and repetitions must be positive, workers >= 0")
    workers = ns.workers if ns.workers > 0 else available_workers()
    return BenchConfig(ns.sizes, ns.ks, ns.alphas, ns.algorithms, ns.generators, ns.repetitions, ns.seed, ns.prune, workers)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command == "bench":
            cfg = _bench_config(ns)
    except UsageError as exc:
        _diag(sys.stderr, f"usage: {exc}")
        return EXIT_USAGE
    if ns.command == "solve":
        config = RunConfig(
            input_path=ns.input,
            k=ns.k,
            alpha=ns.alpha,
            algorithm=ns.algorithm,
            prune=ns.prune,
            assume_front=ns.assume_front,
            workers=ns.workers,
            seed=ns.seed,
            output_format=ns.output_format,
            plot_path=ns.plot_path,
            out=ns.out,
        )
        return run(config)
    text = format_bench(bench(cfg))
    if ns.out is None:
        sys.stdout.write(text)
    else:
        Path(ns.out).write_text(text, encoding="utf-8")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
