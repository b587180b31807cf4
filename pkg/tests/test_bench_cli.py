import csv
from pathlib import Path

import pytest

from paircount import bench_cli
from paircount.bench_cli import (
    CSV_COLUMNS,
    BenchConfig,
    main,
    run_linear_vs_quadratic,
    run_locality_sweep,
    run_realloc_sweep,
    run_spi_compare,
    verify,
)


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_linear_vs_quadratic_rows(tmp_path):
    out = tmp_path / "raw.csv"
    config = BenchConfig(sizes=[16, 32], vectors=3, reps=2, seed=1, out=out)
    rows = run_linear_vs_quadratic(config)
    assert len(rows) == 2 * 2 * 2  # sizes x reps x algorithms
    on_disk = read_csv(out)
    assert list(on_disk[0].keys()) == CSV_COLUMNS
    for lin, quad in zip(on_disk[::2], on_disk[1::2]):
        assert lin["algorithm"] == "linear" and quad["algorithm"] == "quadratic"
        assert lin["result"] == quad["result"]
        assert int(lin["cells_touched"]) <= 16 * 32 * 3  # <= N per vector


def test_csv_append_safe(tmp_path):
    out = tmp_path / "raw.csv"
    config = BenchConfig(sizes=[8], vectors=2, reps=1, out=out)
    run_linear_vs_quadratic(config)
    first = read_csv(out)
    run_linear_vs_quadratic(config)
    combined = read_csv(out)
    assert len(combined) == 2 * len(first)
    with open(out) as fh:
        assert sum(line.startswith("experiment,") for line in fh) == 1


def test_realloc_counts_identical_across_k(tmp_path):
    out = tmp_path / "raw.csv"
    config = BenchConfig(
        sizes=[32], vectors=10, reps=2, seed=3, realloc_every=[1, 4, 0], out=out
    )
    rows = run_realloc_sweep(config)
    by_k = {}
    for row in rows:
        by_k.setdefault(row["algorithm"], []).append(row["result"])
    assert len(by_k) == 3
    assert len(set(tuple(v) for v in by_k.values())) == 1


def test_locality_sweep(tmp_path):
    out = tmp_path / "raw.csv"
    config = BenchConfig(
        sizes=[100], vectors=2, reps=1, seed=5, std_devs=[1.0, 10.0], out=out
    )
    rows = run_locality_sweep(config)
    assert {row["algorithm"] for row in rows} == {"linear-std1", "linear-std10"}


def test_spi_compare_equal_totals(tmp_path):
    out = tmp_path / "raw.csv"
    config = BenchConfig(sizes=[60, 61], vectors=1, reps=2, workers=3, out=out)
    rows = run_spi_compare(config)
    for n in (60, 61):
        totals = {
            row["result"] for row in rows if row["n"] == n
        }
        assert len(totals) == 1


def test_verify_quick_passes(tmp_path, capsys):
    assert verify("quick", seed=0, out=tmp_path / "v.csv")
    assert "pass schedule-completeness" in capsys.readouterr().out


def test_verify_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    verify("quick", seed=7, out=a)
    verify("quick", seed=7, out=b)
    assert a.read_bytes() == b.read_bytes()


def test_main_bench_and_stats(tmp_path, capsys):
    raw = tmp_path / "raw.csv"
    rc = main([
        "bench", "linear-vs-quadratic",
        "--sizes", "16,32", "--vectors", "2", "--reps", "2",
        "--out", str(raw),
    ])
    assert rc == 0
    stats = tmp_path / "stats.csv"
    figdir = tmp_path / "figs"
    rc = main(["stats", "--in", str(raw), "--out", str(stats), "--plot", str(figdir)])
    assert rc == 0
    assert stats.exists()
    assert (figdir / "linear-vs-quadratic.png").exists()
    assert (figdir / "linear-vs-quadratic-speedup.png").exists()
    header = stats.read_text().splitlines()[0]
    assert header.startswith("experiment,algorithm,n,mean_wall_ns,std_wall_ns")


def test_main_verify_exit_code(tmp_path):
    assert main(["verify", "quick", "--out", str(tmp_path / "v.csv")]) == 0


def test_config_error_exit_code(tmp_path):
    rc = main([
        "bench", "linear-vs-quadratic", "--sizes", "",
        "--out", str(tmp_path / "raw.csv"),
    ])
    assert rc == bench_cli.EXIT_CONFIG


def test_mismatch_exit_code(tmp_path, monkeypatch):
    monkeypatch.setattr(bench_cli, "oracle_collisions", lambda beads: -1)
    rc = main([
        "bench", "linear-vs-quadratic", "--sizes", "8", "--vectors", "1",
        "--reps", "1", "--out", str(tmp_path / "raw.csv"),
    ])
    assert rc == bench_cli.EXIT_MISMATCH
