"""Render evaluation CSVs as figures.

Three kinds are supported, each validated against its expected CSV header:
`heatmap` for the square SMC matrix, `bucket_lines` for per-bucket accuracy
curves, and `complement_bars` for pairwise error-complementarity bars.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

KINDS = ("heatmap", "bucket_lines", "complement_bars")


class SchemaError(Exception):
    """CSV header or shape does not match the requested figure kind."""


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    kind: str
    output: str
    title: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown figure kind: {self.kind!r} (choose from {KINDS})")


def _read_rows(path):
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if not rows:
        raise SchemaError(f"{path}: empty file, nothing to plot")
    if len(rows) < 2:
        raise SchemaError(f"{path}: header-only CSV, nothing to plot")
    return rows


def _require_columns(path, header, needed):
    missing = [column for column in needed if column not in header]
    if missing:
        raise SchemaError(f"{path}: missing column(s) {', '.join(missing)}")
    return {column: header.index(column) for column in needed}


def _float_or_nan(cell):
    return float(cell) if cell else float("nan")


def _heatmap(rows, path, title):
    header = rows[0]
    if header[0] != "method":
        raise SchemaError(f"{path}: missing column(s) method")
    methods = header[1:]
    body = rows[1:]
    if [r[0] for r in body] != methods or any(len(r) != len(header) for r in body):
        raise SchemaError(f"{path}: not a square method matrix")
    matrix = np.array([[float(cell) for cell in r[1:]] for r in body])

    fig, ax = plt.subplots(figsize=(7.2, 6.0))
    image = ax.imshow(matrix, vmin=0.0, vmax=1.0, cmap="viridis")
    ax.set_xticks(range(len(methods)), labels=methods, rotation=45, ha="right")
    ax.set_yticks(range(len(methods)), labels=methods)
    for i in range(len(methods)):
        for j in range(len(methods)):
            value = matrix[i, j]
            color = "black" if value > 0.6 else "white"
            ax.text(j, i, f"{value:.2f}", ha="center", va="center", color=color)
    fig.colorbar(image, ax=ax, shrink=0.85)
    ax.set_title(title)
    fig.tight_layout()
    return fig


def _bucket_lines(rows, path, title):
    idx = _require_columns(path, rows[0], ["bucket", "method", "accuracy_strict"])
    series: dict[str, dict[int, float]] = {}
    for record in rows[1:]:
        method = record[idx["method"]]
        bucket = int(record[idx["bucket"]])
        series.setdefault(method, {})[bucket] = _float_or_nan(record[idx["accuracy_strict"]])

    fig, ax = plt.subplots(figsize=(7.2, 4.5))
    for method, points in series.items():
        buckets = sorted(points)
        ax.plot(buckets, [points[b] for b in buckets], marker="o", label=method)
    ax.set_xlabel("frequency-difference bucket (largest difference first)")
    ax.set_ylabel("accuracy")
    ax.set_ylim(-0.02, 1.02)
    ax.set_xticks(sorted({int(r[idx["bucket"]]) for r in rows[1:]}))
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    ax.set_title(title)
    fig.tight_layout()
    return fig


def _complement_bars(rows, path, title):
    idx = _require_columns(path, rows[0], ["method_a", "method_b", "complementarity"])
    groups: dict[str, dict[str, float]] = {}
    partners: list[str] = []
    for record in rows[1:]:
        a, b = record[idx["method_a"]], record[idx["method_b"]]
        value = record[idx["complementarity"]]
        groups.setdefault(a, {})
        if value:  # absent ratios (method_a never wrong) draw no bar
            groups[a][b] = float(value)
        if b not in partners:
            partners.append(b)

    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    names = list(groups)
    width = 0.8 / max(1, len(partners))
    x = np.arange(len(names))
    for offset, partner in enumerate(partners):
        xs = [i + offset * width for i, a in enumerate(names) if partner in groups[a]]
        heights = [groups[a][partner] for a in names if partner in groups[a]]
        ax.bar(xs, heights, width, label=partner)
    ax.set_xticks(x + 0.4 - width / 2, labels=names, rotation=30, ha="right")
    ax.set_ylabel("share of wrong pairs the other method gets right")
    ax.set_ylim(0.0, 1.0)
    ax.legend(fontsize=8, title="rescuing method")
    ax.set_title(title)
    fig.tight_layout()
    return fig


def build_figure(spec: FigureSpec):
    rows = _read_rows(spec.input_csv)
    if spec.kind == "heatmap":
        return _heatmap(rows, spec.input_csv, spec.title)
    if spec.kind == "bucket_lines":
        return _bucket_lines(rows, spec.input_csv, spec.title)
    return _complement_bars(rows, spec.input_csv, spec.title)


def render(spec: FigureSpec) -> None:
    """Build and save the figure; no file is written when validation fails."""
    fig = build_figure(spec)
    Path(spec.output).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output, dpi=150)
    plt.close(fig)
