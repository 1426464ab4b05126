"""End-to-end convenience: load, train, predict, score in one call."""

from __future__ import annotations

from typing import Callable, Optional, Union

from .corpus import load_corpus
from .errors import DataError
from .evaluation import Metrics, confusion, metrics_from_counts
from .model import TrainConfig, predict_labels, train
from .normalizer import Lexicons, PronounVariant


def _coerce_variant(variant: Union[PronounVariant, str]) -> PronounVariant:
    if isinstance(variant, PronounVariant):
        return variant
    try:
        return PronounVariant(variant)
    except ValueError:
        raise DataError(
            f"unknown pronoun variant {variant!r}; expected one of "
            f"{[v.value for v in PronounVariant]}"
        ) from None


def end_to_end(
    train_path,
    test_path,
    variant: Union[PronounVariant, str],
    *,
    seed: int = 0,
    epochs: int = 10,
    batch_size: int = 32,
    lr: float = 5e-5,
    dims: int = 2**18,
    ngram_max: int = 2,
    class_weighting: bool = False,
    threshold: float = 0.5,
    lexicons: Optional[Lexicons] = None,
    on_epoch_end: Optional[Callable[[int, float], None]] = None,
) -> Metrics:
    """Train on one labeled corpus file, evaluate on another.

    Returns positive-class metrics on the test corpus. Fully deterministic
    in (file contents, arguments).
    """
    config = TrainConfig(
        epochs=epochs,
        batch_size=batch_size,
        lr=lr,
        seed=seed,
        dims=dims,
        ngram_max=ngram_max,
        class_weighting=class_weighting,
        variant=_coerce_variant(variant),
    )
    train_corpus = load_corpus(train_path, expect_labels=True)
    test_corpus = load_corpus(test_path, expect_labels=True)
    params = train(train_corpus, config, lexicons=lexicons, on_epoch_end=on_epoch_end)
    predicted = predict_labels(params, test_corpus, config, lexicons=lexicons, threshold=threshold)
    gold = [r.label for r in test_corpus]
    return metrics_from_counts(confusion(gold, [label for _, label in predicted]))
