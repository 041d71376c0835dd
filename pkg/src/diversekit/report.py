"""Trace output: per-node table sizes as CSV plus a rendered figure.

The CSV feeds the table-size bound checks; the companion PNG (same stem,
written next to the CSV) makes table growth along the decomposition easy
to eyeball.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .core_engine import NodeStats


def write_trace_csv(stats: Sequence[NodeStats], path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["node", "delta", "states", "tuples"])
        for entry in stats:
            writer.writerow([entry.node, entry.delta, entry.states, entry.tuples])
    return path


def render_trace_figure(stats: Sequence[NodeStats], path: str | Path) -> Path:
    path = Path(path)
    nodes = [entry.node for entry in stats]
    fig, ax = plt.subplots(figsize=(7.0, 3.5))
    ax.plot(nodes, [entry.states for entry in stats], marker="o", markersize=3,
            linewidth=1.0, label="states")
    ax.plot(nodes, [entry.tuples for entry in stats], marker="s", markersize=3,
            linewidth=1.0, label="tuples")
    ax.set_xlabel("decomposition node")
    ax.set_ylabel("count")
    ax.set_title("per-node table sizes")
    ax.grid(True, linewidth=0.3, alpha=0.6)
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def emit_trace(stats: Sequence[NodeStats], csv_path: str | Path) -> tuple[Path, Path | None]:
    """Write the CSV and, when there is data, the PNG next to it."""
    csv_path = Path(csv_path)
    write_trace_csv(stats, csv_path)
    if not stats:
        return csv_path, None
    figure_path = csv_path.with_suffix(".png")
    render_trace_figure(stats, figure_path)
    return csv_path, figure_path
