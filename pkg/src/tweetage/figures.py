"""Figure rendering for the reporting paths.

matplotlib is imported lazily inside each function and forced onto the Agg
backend, so figure output works headless and importing this module stays
cheap for callers that never render.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

from .corpus import ClassDistribution

_BAR_COLORS = ("#4878a8", "#d1605e")


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _save(fig, path) -> Path:
    path = Path(path)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    _plt().close(fig)
    return path


def save_class_distribution_figure(dist: ClassDistribution, path, title: str = "Class distribution") -> Path:
    """Bar chart of per-class record counts, annotated with the counts."""
    plt = _plt()
    labels = ["0", "1"]
    values = [dist.negative, dist.positive]
    if dist.unlabeled:
        labels.append("unlabeled")
        values.append(dist.unlabeled)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    bars = ax.bar(labels, values, color=[_BAR_COLORS[i % 2] for i in range(len(labels))])
    ax.bar_label(bars)
    ax.set_xlabel("class label")
    ax.set_ylabel("tweets")
    ax.set_title(title)
    return _save(fig, path)


def save_loss_curve_figure(losses: Sequence[float], path, title: str = "Training loss") -> Path:
    """Per-epoch mean loss, 1-indexed epochs on the x axis."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5, 3.5))
    epochs = range(1, len(losses) + 1)
    ax.plot(list(epochs), list(losses), marker="o")
    ax.set_xlabel("epoch")
    ax.set_ylabel("mean batch loss")
    ax.set_xticks(list(epochs))
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return _save(fig, path)


def save_metrics_comparison_figure(rows: Sequence[dict], path, title: str = "Variant comparison") -> Path:
    """Grouped bars of precision / recall / F1 for each variant row.

    Rows are the machine-readable dicts produced by the scoring path;
    undefined (null) metrics plot as zero-height bars labeled "undef".
    """
    plt = _plt()
    metric_names = ("precision", "recall", "f1")
    fig, ax = plt.subplots(figsize=(1.2 + 1.6 * max(len(rows), 1), 3.5))
    width = 0.8 / len(metric_names)
    for j, metric in enumerate(metric_names):
        xs = [i + (j - 1) * width for i in range(len(rows))]
        values = [row[metric] if row[metric] is not None else 0.0 for row in rows]
        bars = ax.bar(xs, values, width=width, label=metric)
        labels = [
            "undef" if row[metric] is None else f"{row[metric]:.3f}" for row in rows
        ]
        ax.bar_label(bars, labels=labels, fontsize=7, rotation=90, padding=2)
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels([row["variant"] for row in rows])
    ax.set_ylim(0, 1.15)
    ax.set_ylabel("score")
    ax.set_title(title)
    ax.legend(loc="lower right", fontsize=8)
    return _save(fig, path)
