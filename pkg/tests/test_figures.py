from tweetage.corpus import ClassDistribution
from tweetage.evaluation import ConfusionCounts, metrics_from_counts, metrics_json_row
from tweetage.figures import (
    save_class_distribution_figure,
    save_loss_curve_figure,
    save_metrics_comparison_figure,
)

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def test_class_distribution_figure(tmp_path):
    path = save_class_distribution_figure(
        ClassDistribution(negative=70, positive=30, unlabeled=0), tmp_path / "dist.png"
    )
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_class_distribution_figure_with_unlabeled(tmp_path):
    path = save_class_distribution_figure(
        ClassDistribution(negative=5, positive=3, unlabeled=2), tmp_path / "dist.png"
    )
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_loss_curve_figure(tmp_path):
    path = save_loss_curve_figure([0.69, 0.66, 0.61], tmp_path / "loss.png")
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_loss_curve_single_epoch(tmp_path):
    path = save_loss_curve_figure([0.7], tmp_path / "loss.png")
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_metrics_comparison_figure(tmp_path):
    rows = [
        metrics_json_row("keep", metrics_from_counts(ConfusionCounts(8, 2, 1, 9))),
        metrics_json_row("remove", metrics_from_counts(ConfusionCounts(7, 1, 2, 10))),
    ]
    path = save_metrics_comparison_figure(rows, tmp_path / "cmp.png")
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_metrics_comparison_figure_with_undefined_cells(tmp_path):
    rows = [metrics_json_row("keep", metrics_from_counts(ConfusionCounts(0, 0, 0, 4)))]
    path = save_metrics_comparison_figure(rows, tmp_path / "cmp.png")
    assert path.read_bytes()[:8] == PNG_MAGIC


def test_figures_are_deterministic_sizes(tmp_path):
    # same inputs render to the same byte size (matplotlib output is stable
    # within a single environment)
    a = save_loss_curve_figure([0.7, 0.6], tmp_path / "a.png")
    b = save_loss_curve_figure([0.7, 0.6], tmp_path / "b.png")
    assert a.stat().st_size == b.stat().st_size
