"""Benchmark and verification CLI.

Subcommands:
  bench linear-vs-quadratic   time lattice counting against the O(N^2) oracle
  bench realloc               sweep the space-reallocation period K
  bench locality              sweep the normal-cloud standard deviation
  bench spi                   time standard vs balanced parallel SPI
  verify {quick|full}         run the correctness property suite
  stats                       aggregate raw rows; optionally render figures

Every benchmark row carries a built-in correctness assertion (lattice count
vs oracle, or cross-schedule total equality); any mismatch aborts with exit
code 1.  Raw observations go to an append-safe CSV with a fixed column
order; summary statistics (mean, std, 4-std error bars) are computed
separately by `stats` so raw data is never discarded.

Exit codes: 0 success, 1 correctness mismatch, 2 configuration error,
3 resource failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import generators, pair_schedule, spi_engine
from .lattice_counter import (
    LatticeSpace,
    SpaceSizeError,
    count_collisions,
    count_contacts,
    new_space,
    oracle_collisions,
    oracle_contacts,
    reset_sparse,
)

CSV_COLUMNS = [
    "experiment",
    "algorithm",
    "n",
    "rep",
    "wall_ns",
    "result",
    "cells_touched",
    "space_cells",
]

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3

DEFAULT_SIZES = [64, 128, 256, 512, 1024]
DEFAULT_STD_DEVS = [1.0, 5.0, 20.0, 80.0]
# Default sphere box: dense enough that small N still yields collisions.
DEFAULT_BOX_EDGE = 10.0
# Largest half-extent a locality cloud may request; keeps the dense array
# comfortably under 2 GB.
MAX_CLOUD_HALF_EXTENT = 400


class CountMismatchError(AssertionError):
    """A fast path disagreed with its oracle or its sibling schedule."""


@dataclass
class BenchConfig:
    sizes: list[int]
    vectors: int = 10
    reps: int = 3
    seed: int = 0
    realloc_every: list[int] = field(default_factory=lambda: [0])
    std_devs: list[float] = field(default_factory=lambda: list(DEFAULT_STD_DEVS))
    workers: int = 4
    schedule: str = "both"
    box_edge: float = DEFAULT_BOX_EDGE
    out: Path = Path("bench.csv")

    def __post_init__(self):
        if not self.sizes:
            raise ValueError("sizes must be non-empty")
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        if self.vectors < 1:
            raise ValueError("vectors must be >= 1")


def append_rows(path: Path, rows: list[dict]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    write_header = not path.exists() or path.stat().st_size == 0
    with open(path, "a", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        if write_header:
            writer.writeheader()
        writer.writerows(rows)


def _row(experiment, algorithm, n, rep, wall_ns, result, cells_touched=0, space_cells=0):
    return {
        "experiment": experiment,
        "algorithm": algorithm,
        "n": n,
        "rep": rep,
        "wall_ns": wall_ns,
        "result": result,
        "cells_touched": cells_touched,
        "space_cells": space_cells,
    }


def _chain_batch(n, vectors, seed, tag):
    chains = []
    extent = 0
    for v in range(vectors):
        beads, a = generators.random_chain(n, seed * 1_000_003 + tag * 7919 + v)
        chains.append(beads)
        extent = max(extent, a)
    return chains, extent


def _linear_pass(chains, space: LatticeSpace, realloc_every: int):
    """Count collisions over a batch of vectors, reusing the space via sparse
    reset, or reallocating it every `realloc_every` vectors (0 = never)."""
    counts = []
    touched = 0
    for idx, beads in enumerate(chains):
        if realloc_every and idx and idx % realloc_every == 0:
            space = LatticeSpace(space.half_extent)
        report = count_collisions(beads, space)
        reset_sparse(space, beads)
        counts.append(report.count)
        touched += report.cells_touched
    return counts, touched, space


def run_linear_vs_quadratic(config: BenchConfig) -> list[dict]:
    rows = []
    for n in config.sizes:
        for rep in range(config.reps):
            chains, extent = _chain_batch(n, config.vectors, config.seed, rep)
            try:
                space = new_space(extent)
            except SpaceSizeError as exc:
                rows.append(_row("linear-vs-quadratic", "linear", n, rep, 0,
                                 f"skipped:{exc}"))
                continue
            if rep == 0:  # warm-up pass, discarded
                _linear_pass(chains[:1], space, 0)
                reset_sparse(space, chains[0])
                oracle_collisions(chains[0])

            t0 = time.perf_counter_ns()
            linear_counts, touched, space = _linear_pass(
                chains, space, config.realloc_every[0]
            )
            t_linear = time.perf_counter_ns() - t0

            t0 = time.perf_counter_ns()
            oracle_counts = [oracle_collisions(beads) for beads in chains]
            t_oracle = time.perf_counter_ns() - t0

            if linear_counts != oracle_counts:
                raise CountMismatchError(
                    f"linear-vs-quadratic: count mismatch at n={n} rep={rep}"
                )
            rows.append(_row("linear-vs-quadratic", "linear", n, rep, t_linear,
                             sum(linear_counts), touched, space.interior_cells))
            rows.append(_row("linear-vs-quadratic", "quadratic", n, rep, t_oracle,
                             sum(oracle_counts), 0, 0))
    append_rows(config.out, rows)
    return rows


def run_realloc_sweep(config: BenchConfig) -> list[dict]:
    rows = []
    n = config.sizes[0]
    reference = None
    for k in config.realloc_every:
        for rep in range(config.reps):
            chains, extent = _chain_batch(n, config.vectors, config.seed, rep)
            space = new_space(extent)
            t0 = time.perf_counter_ns()
            counts, touched, space = _linear_pass(chains, space, k)
            wall = time.perf_counter_ns() - t0
            key = (rep,)
            if reference is None:
                reference = {}
            if key not in reference:
                reference[key] = counts
            elif reference[key] != counts:
                raise CountMismatchError(
                    f"realloc: counts differ between K values at rep={rep}"
                )
            rows.append(_row("realloc", f"linear-K{k}", n, rep, wall,
                             sum(counts), touched, space.interior_cells))
    append_rows(config.out, rows)
    return rows


def run_locality_sweep(config: BenchConfig) -> list[dict]:
    rows = []
    for n in config.sizes:
        for std_dev in config.std_devs:
            extent = max(8, min(MAX_CLOUD_HALF_EXTENT, int(4 * std_dev)))
            space = new_space(extent)
            for rep in range(config.reps):
                clouds = [
                    generators.normal_cloud(
                        n, std_dev, extent,
                        config.seed * 1_000_003 + rep * 7919 + v,
                    )
                    for v in range(config.vectors)
                ]
                t0 = time.perf_counter_ns()
                counts = []
                touched = 0
                for beads in clouds:
                    report = count_collisions(beads, space)
                    reset_sparse(space, beads)
                    counts.append(report.count)
                    touched += report.cells_touched
                wall = time.perf_counter_ns() - t0
                for beads, got in zip(clouds, counts):
                    if got != oracle_collisions(beads):
                        raise CountMismatchError(
                            f"locality: mismatch at n={n} std_dev={std_dev}"
                        )
                rows.append(_row("locality", f"linear-std{std_dev:g}", n, rep,
                                 wall, sum(counts), touched, space.interior_cells))
    append_rows(config.out, rows)
    return rows


def run_spi_compare(config: BenchConfig) -> list[dict]:
    rows = []
    schedules = (
        list(spi_engine.SCHEDULES) if config.schedule == "both" else [config.schedule]
    )
    for n in config.sizes:
        spheres = generators.random_spheres(n, config.box_edge, config.seed)
        totals = {}
        for schedule in schedules:
            # warm-up, discarded
            spi_engine.spi_parallel(
                spheres, spi_engine.collision_indicator, config.workers, schedule
            )
            for rep in range(config.reps):
                t0 = time.perf_counter_ns()
                result = spi_engine.spi_parallel(
                    spheres, spi_engine.collision_indicator, config.workers, schedule
                )
                wall = time.perf_counter_ns() - t0
                totals[schedule] = result.total
                rows.append(_row("spi", f"spi-{schedule}", n, rep, wall,
                                 result.total))
            print(
                f"spi n={n} schedule={schedule} total={result.total} "
                f"depth={result.depth_per_worker} "
                f"worker_pairs={list(result.worker_pairs)}"
            )
        if len(totals) == 2 and totals["standard"] != totals["balanced"]:
            raise CountMismatchError(f"spi: totals differ at n={n}: {totals}")
    append_rows(config.out, rows)
    return rows


# ---------------------------------------------------------------------------
# verify: the correctness property suite
# ---------------------------------------------------------------------------

def _check_schedule_completeness(n_max: int) -> bool:
    seen = np.zeros(n_max * n_max, dtype=bool)  # reused unordered-pair flags
    for n in range(1, n_max + 1):
        p = pair_schedule.pairs_array(n)
        expected = pair_schedule.total_pairs(n)
        if len(p) != expected:
            return False
        if expected == 0:
            continue
        lo = np.minimum(p[:, 0], p[:, 1])
        hi = np.maximum(p[:, 0], p[:, 1])
        if (lo == hi).any():
            return False
        keys = lo * np.int32(n) + hi  # stay in int32: n^2 < 2^31
        seen[keys] = True
        # C(n,2) valid unordered pairs with C(n,2) distinct flags set means
        # the schedule covers every pair exactly once
        distinct = int(seen[: n * n].sum())
        seen[keys] = False
        if distinct != expected:
            return False
    return True


def _check_balance(n_max: int) -> bool:
    for n in range(1, n_max + 1):
        counts = pair_schedule.step_counts(n)
        spread = int(counts.max() - counts.min())
        want_spread = 0 if (n % 2 == 1 or n == 1) else 1
        if n >= 2 and spread != want_spread:
            return False
        if int(counts.sum()) != pair_schedule.total_pairs(n):
            return False
    return True


def _check_violation_tightness(n_max: int) -> bool:
    for n in range(3, n_max + 1, 2):
        s_viol = pair_schedule.first_violation_step(n)
        if s_viol != (n + 1) // 2:
            return False
        i = np.repeat(np.arange(n, dtype=np.int64), s_viol)
        s = np.tile(np.arange(1, s_viol + 1, dtype=np.int64), n)
        j = (i + s) % n
        lo, hi = np.minimum(i, j), np.maximum(i, j)
        counts = np.bincount(lo * n + hi, minlength=n * n)
        # steps 1..(n-1)/2 alone are duplicate-free (checked by completeness);
        # adding the violation step must create at least one duplicate
        if counts.max() < 2:
            return False
    return True


def _adversarial_vectors(n: int):
    yield np.zeros((n, 3), dtype=np.int64)  # all coincident
    side = max(1, int(np.ceil(n ** (1 / 3))))
    idx = np.arange(n)
    distinct = np.column_stack([idx % side, (idx // side) % side, idx // side**2])
    yield 2 * distinct.astype(np.int64)  # all distinct, no contacts
    yield np.zeros((0, 3), dtype=np.int64)  # empty


def _check_counters(sizes, vectors_per_n, seed):
    """Lattice counters vs brute-force oracles over chains, clouds, and
    adversarial inputs.  Returns (ok, per-n rows of deterministic metadata)."""
    detail = []
    ok = True
    for n in sizes:
        touched_total = 0
        extent_max = 0
        for v in range(vectors_per_n):
            beads, extent = generators.random_chain(n, seed * 31 + v)
            cloud = generators.normal_cloud(n, max(1.0, n / 16), n, seed * 37 + v)
            for vec, a in ((beads, extent), (cloud, n)):
                space = new_space(a)
                col = count_collisions(vec, space)
                reset_sparse(space, vec)
                con = count_contacts(vec, space)
                reset_sparse(space, vec)
                if col.count != oracle_collisions(vec):
                    ok = False
                if con.count != oracle_contacts(vec):
                    ok = False
                if col.cells_touched > n or con.cells_touched > 7 * n:
                    ok = False
                touched_total += col.cells_touched + con.cells_touched
                extent_max = max(extent_max, a)
        for vec in _adversarial_vectors(n):
            a = max(1, int(np.abs(vec).max(initial=0)))
            space = new_space(a)
            if count_collisions(vec, space).count != oracle_collisions(vec):
                ok = False
            reset_sparse(space, vec)
            if count_contacts(vec, space).count != oracle_contacts(vec):
                ok = False
        detail.append((n, touched_total, (2 * extent_max + 1) ** 3))
    return ok, detail


def _check_spi_equivalence(sizes, seed, workers_grid=(1, 2, 3, 7, 8)) -> bool:
    for n in sizes:
        spheres = generators.random_spheres(n, 4.0, seed * 41 + n)
        base = spi_engine.spi_standard(spheres, spi_engine.collision_indicator)
        if base.pairs_evaluated != n * (n - 1) // 2:
            return False
        bal = spi_engine.spi_balanced(spheres, spi_engine.collision_indicator)
        if bal.total != base.total:
            return False
        for workers in workers_grid:
            for schedule in spi_engine.SCHEDULES:
                par = spi_engine.spi_parallel(
                    spheres, spi_engine.collision_indicator, workers, schedule
                )
                if par.total != base.total:
                    return False
    return True


def verify(level: str, seed: int = 0, out: Path | None = None) -> bool:
    """Run the property suite; print one line per check; write deterministic
    CSV rows (wall_ns fixed at 0 so output is byte-identical per seed)."""
    if level == "quick":
        n_sched, n_viol = 257, 257
        counter_sizes, vectors_per_n = [1, 2, 3, 16, 64, 257], 3
        spi_sizes = [2, 3, 4, 5, 8, 16, 64]
    elif level == "full":
        n_sched, n_viol = 2000, 999
        counter_sizes, vectors_per_n = [1, 2, 3, 16, 64, 257, 1024], 10
        spi_sizes = [2, 3, 4, 5, 8, 16, 64, 127, 128, 257]
    else:
        raise ValueError(f"unknown verify level {level!r}")

    rows = []
    all_ok = True

    def record(name, ok, n=0, cells_touched=0, space_cells=0):
        nonlocal all_ok
        all_ok = all_ok and ok
        status = "pass" if ok else "FAIL"
        print(f"{status} {name}" + (f" (n={n})" if n else ""))
        rows.append(_row("verify", name, n, 0, 0, status, cells_touched, space_cells))

    record(f"schedule-completeness-to-{n_sched}", _check_schedule_completeness(n_sched))
    record(f"schedule-balance-to-{n_sched}", _check_balance(n_sched))
    record(f"violation-tightness-to-{n_viol}", _check_violation_tightness(n_viol))
    counters_ok, detail = _check_counters(counter_sizes, vectors_per_n, seed)
    record("counters-vs-oracles", counters_ok)
    for n, touched, space_cells in detail:
        rows.append(_row("verify", "counters-vs-oracles", n, 0, 0,
                         "pass" if counters_ok else "FAIL", touched, space_cells))
    record("spi-equivalence", _check_spi_equivalence(spi_sizes, seed))

    if out is not None:
        append_rows(out, rows)
    return all_ok


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------

def compute_stats(raw_csv: Path):
    import pandas as pd

    df = pd.read_csv(raw_csv)
    timed = df[df["wall_ns"] > 0].copy()
    grouped = (
        timed.groupby(["experiment", "algorithm", "n"], as_index=False)
        .agg(
            mean_wall_ns=("wall_ns", "mean"),
            std_wall_ns=("wall_ns", "std"),
            reps=("wall_ns", "size"),
        )
        .fillna({"std_wall_ns": 0.0})
    )
    grouped["errbar_4std_ns"] = 4.0 * grouped["std_wall_ns"]
    return grouped


def run_stats(raw_csv: Path, out: Path, plot_dir: Path | None) -> None:
    summary = compute_stats(raw_csv)
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    summary.to_csv(out, index=False)
    print(f"wrote {len(summary)} summary rows to {out}")
    if plot_dir is not None:
        from .plotting import render_figures

        for path in render_figures(summary, plot_dir):
            print(f"wrote {path}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok]


def _add_bench_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sizes", type=_int_list, default=list(DEFAULT_SIZES))
    p.add_argument("--vectors", type=int, default=10)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--realloc-every", type=_int_list, default=[0],
                   help="comma list of K values; 0 = never reallocate")
    p.add_argument("--std-dev", type=_float_list, default=list(DEFAULT_STD_DEVS),
                   dest="std_devs")
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--schedule", choices=["standard", "balanced", "both"],
                   default="both")
    p.add_argument("--box-edge", type=float, default=DEFAULT_BOX_EDGE)
    p.add_argument("--out", type=Path, default=Path("bench.csv"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paircount",
        description="Collision-counting and pairwise-interaction benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="run a benchmark experiment")
    bench_sub = bench.add_subparsers(dest="experiment", required=True)
    for name in ("linear-vs-quadratic", "realloc", "locality", "spi"):
        p = bench_sub.add_parser(name)
        _add_bench_flags(p)

    v = sub.add_parser("verify", help="run the correctness property suite")
    v.add_argument("level", choices=["quick", "full"])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", type=Path, default=None)

    s = sub.add_parser("stats", help="aggregate raw benchmark rows")
    s.add_argument("--in", dest="raw_csv", type=Path, required=True)
    s.add_argument("--out", type=Path, default=Path("stats.csv"))
    s.add_argument("--plot", type=Path, default=None,
                   help="directory to render figures into")
    return parser


_RUNNERS = {
    "linear-vs-quadratic": run_linear_vs_quadratic,
    "realloc": run_realloc_sweep,
    "locality": run_locality_sweep,
    "spi": run_spi_compare,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bench":
            config = BenchConfig(
                sizes=args.sizes,
                vectors=args.vectors,
                reps=args.reps,
                seed=args.seed,
                realloc_every=args.realloc_every,
                std_devs=args.std_devs,
                workers=args.workers,
                schedule=args.schedule,
                box_edge=args.box_edge,
                out=args.out,
            )
            rows = _RUNNERS[args.experiment](config)
            print(f"wrote {len(rows)} rows to {config.out}")
            return EXIT_OK
        if args.command == "verify":
            ok = verify(args.level, seed=args.seed, out=args.out)
            return EXIT_OK if ok else EXIT_MISMATCH
        if args.command == "stats":
            run_stats(args.raw_csv, args.out, args.plot)
            return EXIT_OK
    except CountMismatchError as exc:
        print(f"correctness mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MemoryError, OSError) as exc:
        print(f"resource failure: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
