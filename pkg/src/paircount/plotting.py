"""Figure rendering for benchmark summaries.

Renders one PNG per experiment from the aggregated stats table: mean wall
time versus problem size per algorithm, with error bars spanning four
standard deviations (two above, two below the mean), following the error
bar convention of the CSV's `stats` output.  A derived speedup figure is
added for the linear-vs-quadratic experiment.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd

NS_PER_MS = 1e6


def _timing_figure(summary: pd.DataFrame, experiment: str, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for algorithm, grp in summary.groupby("algorithm"):
        grp = grp.sort_values("n")
        ax.errorbar(
            grp["n"],
            grp["mean_wall_ns"] / NS_PER_MS,
            yerr=2.0 * grp["std_wall_ns"] / NS_PER_MS,
            marker="o",
            capsize=3,
            label=algorithm,
        )
    ax.set_xlabel("problem size N")
    ax.set_ylabel("wall time [ms]")
    ax.set_title(experiment)
    if summary["n"].nunique() > 1 and (summary["n"] > 0).all():
        ax.set_xscale("log", base=2)
        ax.set_yscale("log")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _speedup_figure(summary: pd.DataFrame, path: Path) -> bool:
    pivot = summary.pivot_table(
        index="n", columns="algorithm", values="mean_wall_ns"
    )
    if "linear" not in pivot.columns or "quadratic" not in pivot.columns:
        return False
    ratio = (pivot["quadratic"] / pivot["linear"]).dropna()
    if ratio.empty:
        return False
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(ratio.index, ratio.values, marker="s", color="tab:green")
    ax.set_xlabel("problem size N")
    ax.set_ylabel("speedup (quadratic / linear)")
    ax.set_title("linear-vs-quadratic speedup")
    ax.set_xscale("log", base=2)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return True


def render_figures(summary: pd.DataFrame, outdir: Path) -> list[Path]:
    """Render per-experiment figures from a stats summary table.

    Returns the paths written.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for experiment, grp in summary.groupby("experiment"):
        path = outdir / f"{experiment}.png"
        _timing_figure(grp, str(experiment), path)
        written.append(path)
        if experiment == "linear-vs-quadratic":
            speedup_path = outdir / "linear-vs-quadratic-speedup.png"
            if _speedup_figure(grp, speedup_path):
                written.append(speedup_path)
    return written
