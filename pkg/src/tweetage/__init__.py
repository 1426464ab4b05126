"""Deterministic pipeline toolkit for classifying tweets that self-report
an exact age: lossless lexing, two-variant normalization, corpus handling,
a hashed-n-gram logistic classifier trained with Adam, and positive-class
evaluation."""

__version__ = "0.1.0"

from .corpus import (
    ClassDistribution,
    Corpus,
    LabeledTweet,
    class_distribution,
    combine,
    generate_synthetic,
    load_corpus,
    save_corpus,
    stratified_split,
)
from .errors import DataError, TrainingError
from .evaluation import (
    ConfusionCounts,
    Metrics,
    compare_variants,
    confusion,
    f1_from_pr,
    metrics_from_counts,
    score_prediction_file,
)
from .lexer import Token, TokenKind, kind_counts, tokenize
from .model import (
    AdamState,
    FeatureVector,
    ModelParams,
    TrainConfig,
    adam_step,
    bce_loss_and_grad,
    featurize,
    fnv1a_64,
    load_model,
    predict_labels,
    predict_proba,
    save_model,
    train,
)
from .normalizer import (
    Lexicons,
    NormalizationConfig,
    PronounVariant,
    load_lexicons,
    normalize,
    render,
)
from .pipeline import end_to_end

__all__ = [
    "AdamState",
    "ClassDistribution",
    "ConfusionCounts",
    "Corpus",
    "DataError",
    "FeatureVector",
    "LabeledTweet",
    "Lexicons",
    "Metrics",
    "ModelParams",
    "NormalizationConfig",
    "PronounVariant",
    "Token",
    "TokenKind",
    "TrainConfig",
    "TrainingError",
    "adam_step",
    "bce_loss_and_grad",
    "class_distribution",
    "combine",
    "compare_variants",
    "confusion",
    "end_to_end",
    "f1_from_pr",
    "featurize",
    "fnv1a_64",
    "generate_synthetic",
    "kind_counts",
    "load_corpus",
    "load_lexicons",
    "load_model",
    "metrics_from_counts",
    "normalize",
    "predict_labels",
    "predict_proba",
    "render",
    "save_corpus",
    "save_model",
    "score_prediction_file",
    "stratified_split",
    "tokenize",
    "train",
    "__version__",
]
