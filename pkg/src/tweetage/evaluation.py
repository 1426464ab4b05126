"""Positive-class precision / recall / F1 and prediction-file scoring.

Metrics are computed for the positive class (label 1). Undefined values
(zero denominators) are carried as None and rendered as "undef", never
silently coerced to 0. The prediction file format is a UTF-8 TSV with
header ``tweet_id\tlabel`` and one labeled row per tweet.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .corpus import HEADER as CORPUS_HEADER
from .corpus import load_corpus
from .errors import DataError

PREDICTION_HEADER = ("tweet_id", "label")


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class Metrics:
    precision: Optional[float]
    recall: Optional[float]
    f1: Optional[float]
    counts: ConfusionCounts


def confusion(gold: Sequence[int], predicted: Sequence[int]) -> ConfusionCounts:
    if len(gold) != len(predicted):
        raise DataError(f"gold has {len(gold)} labels but predictions have {len(predicted)}")
    tp = fp = fn = tn = 0
    for g, p in zip(gold, predicted):
        if g not in (0, 1) or p not in (0, 1):
            raise DataError(f"labels must be 0 or 1, got gold={g!r} predicted={p!r}")
        if g == 1 and p == 1:
            tp += 1
        elif g == 0 and p == 1:
            fp += 1
        elif g == 1 and p == 0:
            fn += 1
        else:
            tn += 1
    return ConfusionCounts(tp, fp, fn, tn)


def f1_from_pr(precision: Optional[float], recall: Optional[float]) -> Optional[float]:
    """Harmonic mean; None when either input is None or both are zero."""
    if precision is None or recall is None:
        return None
    if precision + recall == 0.0:
        return None
    return 2.0 * precision * recall / (precision + recall)


def metrics_from_counts(counts: ConfusionCounts) -> Metrics:
    precision = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp else None
    recall = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn else None
    return Metrics(precision, recall, f1_from_pr(precision, recall), counts)


def load_predictions(path) -> list[tuple[str, int]]:
    """Read a prediction TSV; strict about header, fields, labels, and
    duplicate ids."""
    path = Path(path)
    try:
        lines = path.read_text("utf-8").splitlines()
    except OSError as exc:
        raise DataError(f"{path}: cannot read: {exc}") from exc
    if not lines or tuple(lines[0].split("\t")) != PREDICTION_HEADER:
        got = lines[0] if lines else ""
        raise DataError(
            f"{path} line 1: expected header {chr(9).join(PREDICTION_HEADER)!r}, got {got!r}"
        )
    rows: list[tuple[str, int]] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines[1:], 2):
        if line == "":
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise DataError(f"{path} line {lineno}: expected 2 tab-separated fields, got {len(fields)}")
        tweet_id, raw_label = fields
        if not tweet_id:
            raise DataError(f"{path} line {lineno}: empty tweet id")
        if tweet_id in seen:
            raise DataError(f"{path} line {lineno}: duplicate tweet id {tweet_id!r}")
        seen.add(tweet_id)
        if raw_label not in ("0", "1"):
            raise DataError(f"{path} line {lineno}: label must be 0 or 1, got {raw_label!r}")
        rows.append((tweet_id, int(raw_label)))
    return rows


def save_predictions(path, rows: Sequence[tuple[str, int]]) -> None:
    lines = ["\t".join(PREDICTION_HEADER)]
    for tweet_id, label in rows:
        lines.append(f"{tweet_id}\t{label}")
    Path(path).write_text("\n".join(lines) + "\n", "utf-8")


def _load_gold(path) -> list[tuple[str, int]]:
    # Gold can be either a labeled corpus TSV or a prediction-format TSV;
    # the header says which.
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            first = fh.readline().rstrip("\n")
    except OSError as exc:
        raise DataError(f"{path}: cannot read: {exc}") from exc
    header = tuple(first.split("\t"))
    if header == CORPUS_HEADER:
        corpus = load_corpus(path, expect_labels=True)
        return [(r.id, r.label) for r in corpus]
    if header == PREDICTION_HEADER:
        return load_predictions(path)
    raise DataError(f"{path} line 1: not a corpus or prediction header: {first!r}")


def _list_some(ids: list[str]) -> str:
    shown = ", ".join(repr(i) for i in ids[:10])
    more = f" (and {len(ids) - 10} more)" if len(ids) > 10 else ""
    return shown + more


def score_prediction_file(pred_path, gold_path) -> Metrics:
    """Join predictions to gold by tweet id and compute metrics.

    Every gold id needs a prediction and every prediction must refer to a
    gold id; both violations list the offending ids.
    """
    predictions = dict(load_predictions(pred_path))
    gold = _load_gold(gold_path)
    gold_ids = {tweet_id for tweet_id, _ in gold}

    missing = [tweet_id for tweet_id, _ in gold if tweet_id not in predictions]
    if missing:
        raise DataError(f"no prediction for gold id(s): {_list_some(missing)}")
    unknown = sorted(set(predictions) - gold_ids)
    if unknown:
        raise DataError(f"prediction refers to unknown id(s): {_list_some(unknown)}")

    gold_labels = [label for _, label in gold]
    pred_labels = [predictions[tweet_id] for tweet_id, _ in gold]
    return metrics_from_counts(confusion(gold_labels, pred_labels))


def _fmt(value: Optional[float]) -> str:
    return "undef" if value is None else f"{value:.3f}"


def metrics_text(metrics: Metrics) -> str:
    """Human-scannable two-column TSV: metric name, value."""
    c = metrics.counts
    lines = [
        f"precision\t{_fmt(metrics.precision)}",
        f"recall\t{_fmt(metrics.recall)}",
        f"f1\t{_fmt(metrics.f1)}",
        f"tp\t{c.tp}",
        f"fp\t{c.fp}",
        f"fn\t{c.fn}",
        f"tn\t{c.tn}",
    ]
    return "\n".join(lines) + "\n"


def metrics_json_row(variant: str, metrics: Metrics) -> dict:
    """Machine-readable row (full precision; undefined metrics are null)."""
    c = metrics.counts
    return {
        "variant": variant,
        "precision": metrics.precision,
        "recall": metrics.recall,
        "f1": metrics.f1,
        "tp": c.tp,
        "fp": c.fp,
        "fn": c.fn,
        "tn": c.tn,
    }


def metrics_json_text(variant: str, metrics: Metrics) -> str:
    return json.dumps(metrics_json_row(variant, metrics), sort_keys=True) + "\n"


@dataclass(frozen=True)
class ComparisonReport:
    rows: list[dict]
    text: str


def compare_variants(results: Mapping[str, Metrics]) -> ComparisonReport:
    """Tabulate per-variant metrics side by side.

    ``rows`` keeps full precision for machine use; ``text`` is a TSV table
    with three-decimal values and "undef" placeholders.
    """
    rows = [metrics_json_row(name, metrics) for name, metrics in results.items()]
    lines = ["variant\tprecision\trecall\tf1"]
    for row in rows:
        lines.append(
            f"{row['variant']}\t{_fmt(row['precision'])}\t{_fmt(row['recall'])}\t{_fmt(row['f1'])}"
        )
    return ComparisonReport(rows=rows, text="\n".join(lines) + "\n")
