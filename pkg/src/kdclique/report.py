"""Figure rendering for benchmark run records.

Renders a small standard report next to the delimited output: a
solved-instances-over-time profile comparing solver configurations, and a
per-run search-tree-size chart.  Files are written as PNG via the Agg
backend so the report works headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .records import RunRecord  # noqa: E402


def render_figures(records: list[RunRecord], out_dir) -> list[Path]:
    """Write the report figures for `records` into `out_dir`; returns paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [
        _solved_over_time(records, out / "solved_over_time.png"),
        _tree_sizes(records, out / "tree_nodes.png"),
    ]
    return paths


def _by_config(records):
    groups: dict[str, list[RunRecord]] = {}
    for rec in records:
        groups.setdefault(rec.config, []).append(rec)
    return groups


def _solved_over_time(records, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for config, group in sorted(_by_config(records).items()):
        times = sorted(rec.total_time for rec in group if rec.status == "optimal")
        if times:
            counts = range(1, len(times) + 1)
            ax.step(times, counts, where="post", label=config)
    ax.set_xlabel("time (s)")
    ax.set_ylabel("instances solved")
    ax.set_title("Solved instances over time")
    if ax.has_data():
        ax.set_xscale("log")
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _tree_sizes(records, path: Path) -> Path:
    groups = _by_config(records)
    labels = sorted({f"{rec.instance}/k={rec.k}" for rec in records})
    index = {label: i for i, label in enumerate(labels)}
    width = 0.8 / max(len(groups), 1)

    fig, ax = plt.subplots(figsize=(max(6.4, 0.5 * len(labels) + 2), 4.2))
    for slot, (config, group) in enumerate(sorted(groups.items())):
        xs, ys = [], []
        for rec in group:
            xs.append(index[f"{rec.instance}/k={rec.k}"] + slot * width)
            ys.append(max(rec.tree_nodes, 1))
        ax.bar(xs, ys, width=width, label=config)
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(labels))])
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=7)
    ax.set_yscale("log")
    ax.set_ylabel("search tree nodes")
    ax.set_title("Search tree size per run")
    if groups:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
