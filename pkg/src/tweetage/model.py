"""Hashed bag-of-n-grams logistic regression, trained with Adam.

Feature extraction hashes word n-grams (adjacent normalized words joined
with ``_``) into a fixed number of dimensions with FNV-1a 64; the model is
a single-logit sigmoid classifier over those counts plus a bias. Training
minimizes (optionally class-weighted) binary cross-entropy with a
hand-stepped Adam optimizer.

Everything here is deterministic: given the same corpus, config, and
lexicons, ``train`` produces bit-identical parameters, and the saved model
file is byte-identical across runs.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .corpus import Corpus
from .errors import DataError, TrainingError
from .normalizer import Lexicons, NormalizationConfig, PronounVariant, normalize

FNV_OFFSET_BASIS = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_U64 = (1 << 64) - 1

PROBABILITY_FLOOR = 1e-12


def fnv1a_64(data: bytes) -> int:
    """FNV-1a 64-bit hash. Pure-integer reference implementation."""
    h = FNV_OFFSET_BASIS
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & _U64
    return h


@dataclass(frozen=True)
class FeatureVector:
    """Sparse hashed counts: index -> count, over ``dims`` buckets."""

    counts: dict[int, int]
    dims: int


def featurize(words: list[str], dims: int, ngram_max: int = 2) -> FeatureVector:
    """Hash the 1..ngram_max-grams of ``words`` into ``dims`` buckets.

    ``dims`` must be a positive power of two so the modulo is a mask and
    bucket spread does not depend on hash low-bit bias.
    """
    if dims <= 0 or dims & (dims - 1):
        raise DataError(f"feature dimensions must be a positive power of two, got {dims}")
    if ngram_max < 1:
        raise DataError(f"ngram_max must be >= 1, got {ngram_max}")
    mask = dims - 1
    counts: dict[int, int] = {}
    for n in range(1, ngram_max + 1):
        for i in range(len(words) - n + 1):
            gram = "_".join(words[i : i + n])
            index = fnv1a_64(gram.encode("utf-8")) & mask
            counts[index] = counts.get(index, 0) + 1
    return FeatureVector(counts, dims)


@dataclass(frozen=True)
class ModelParams:
    weights: np.ndarray  # shape (dims,)
    bias: float

    @property
    def dims(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class AdamState:
    m: np.ndarray  # first-moment estimate, shape (dims + 1,); bias slot last
    v: np.ndarray  # second-moment estimate, same shape
    t: int = 0
    lr: float = 5e-5
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def fresh(cls, dims: int, lr: float = 5e-5) -> "AdamState":
        return cls(m=np.zeros(dims + 1), v=np.zeros(dims + 1), t=0, lr=lr)


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 10
    batch_size: int = 32
    lr: float = 5e-5
    seed: int = 0
    dims: int = 2**18
    ngram_max: int = 2
    class_weighting: bool = False
    variant: PronounVariant = PronounVariant.KEEP


def _sigmoid(z: float) -> float:
    # Bounded evaluation in both tails so exp never overflows.
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def predict_proba(params: ModelParams, x: FeatureVector) -> float:
    """P(label=1 | x) under the current parameters."""
    if x.dims != params.dims:
        raise DataError(f"feature dims {x.dims} do not match model dims {params.dims}")
    z = params.bias
    weights = params.weights
    for index, count in x.counts.items():
        z += weights[index] * count
    return _sigmoid(z)


def bce_loss_and_grad(
    params: ModelParams,
    batch: list[tuple[FeatureVector, int]],
    class_weights: tuple[float, float] = (1.0, 1.0),
) -> tuple[float, np.ndarray]:
    """Mean weighted binary cross-entropy over a batch, and its gradient.

    The returned gradient has shape (dims + 1,) with the bias derivative in
    the last slot. Probabilities are clamped away from 0 and 1 inside the
    log only; the gradient uses the exact (p - y) form.
    """
    if not batch:
        raise DataError("loss requires a non-empty batch")
    grad = np.zeros(params.dims + 1)
    total = 0.0
    scale = 1.0 / len(batch)
    for x, y in batch:
        p = predict_proba(params, x)
        w = class_weights[y]
        p_safe = min(max(p, PROBABILITY_FLOOR), 1.0 - PROBABILITY_FLOOR)
        total += -w * (y * math.log(p_safe) + (1 - y) * math.log(1.0 - p_safe))
        coefficient = scale * w * (p - y)
        for index, count in x.counts.items():
            grad[index] += coefficient * count
        grad[-1] += coefficient
    return total * scale, grad


def adam_step(
    params: ModelParams,
    grads: np.ndarray,
    state: AdamState,
) -> tuple[ModelParams, AdamState]:
    """One bias-corrected Adam update. Pure: returns new params and state."""
    if grads.shape != (params.dims + 1,):
        raise DataError(f"gradient shape {grads.shape} does not match dims {params.dims} + bias")
    t = state.t + 1
    m = state.beta1 * state.m + (1.0 - state.beta1) * grads
    v = state.beta2 * state.v + (1.0 - state.beta2) * grads * grads
    m_hat = m / (1.0 - state.beta1**t)
    v_hat = v / (1.0 - state.beta2**t)
    theta = np.concatenate([params.weights, [params.bias]])
    theta = theta - state.lr * m_hat / (np.sqrt(v_hat) + state.eps)
    new_params = ModelParams(weights=theta[:-1], bias=float(theta[-1]))
    new_state = replace(state, m=m, v=v, t=t)
    return new_params, new_state


def _featurized_corpus(
    corpus: Corpus,
    config: TrainConfig,
    lexicons: Optional[Lexicons],
) -> list[tuple[FeatureVector, Optional[int]]]:
    norm_config = NormalizationConfig(variant=config.variant)
    return [
        (featurize(normalize(r.text, norm_config, lexicons), config.dims, config.ngram_max), r.label)
        for r in corpus
    ]


def class_weight_pair(n_negative: int, n_positive: int) -> tuple[float, float]:
    """Inverse-frequency weights n / (2 * n_class) for (negative, positive)."""
    n = n_negative + n_positive
    return (n / (2.0 * n_negative), n / (2.0 * n_positive))


def train(
    corpus: Corpus,
    config: TrainConfig,
    lexicons: Optional[Lexicons] = None,
    on_epoch_end: Optional[Callable[[int, float], None]] = None,
) -> ModelParams:
    """Train from zero-initialized parameters on a fully labeled corpus.

    Records are reshuffled every epoch with random.Random(config.seed);
    batches of config.batch_size (last one possibly short) each take one
    Adam step. ``on_epoch_end(epoch_index, mean_loss)`` fires after every
    epoch with the example-weighted mean batch loss. A non-finite loss
    aborts with TrainingError.
    """
    if config.epochs < 1:
        raise DataError(f"epochs must be >= 1, got {config.epochs}")
    if config.batch_size < 1:
        raise DataError(f"batch size must be >= 1, got {config.batch_size}")
    if not config.lr > 0.0:
        raise DataError(f"learning rate must be positive, got {config.lr}")
    if not corpus.fully_labeled:
        raise DataError("training requires every record to be labeled")
    labels = [r.label for r in corpus]
    n_positive = sum(labels)
    n_negative = len(labels) - n_positive
    if n_positive == 0 or n_negative == 0:
        raise DataError("training requires both classes to be present")

    examples = [(x, y) for x, y in _featurized_corpus(corpus, config, lexicons)]
    weights = class_weight_pair(n_negative, n_positive) if config.class_weighting else (1.0, 1.0)

    params = ModelParams(weights=np.zeros(config.dims), bias=0.0)
    state = AdamState.fresh(config.dims, lr=config.lr)
    rng = random.Random(config.seed)
    order = list(range(len(examples)))

    for epoch in range(config.epochs):
        rng.shuffle(order)
        loss_sum = 0.0
        for start in range(0, len(order), config.batch_size):
            batch = [examples[i] for i in order[start : start + config.batch_size]]
            loss, grad = bce_loss_and_grad(params, batch, weights)
            if not math.isfinite(loss):
                raise TrainingError(f"non-finite loss at epoch {epoch}, batch offset {start}")
            params, state = adam_step(params, grad, state)
            loss_sum += loss * len(batch)
        epoch_loss = loss_sum / len(order)
        if on_epoch_end is not None:
            on_epoch_end(epoch, epoch_loss)
    return params


def predict_labels(
    params: ModelParams,
    corpus: Corpus,
    config: TrainConfig,
    lexicons: Optional[Lexicons] = None,
    threshold: float = 0.5,
) -> list[tuple[str, int]]:
    """(id, label) pairs in corpus order; p >= threshold classifies as 1."""
    featurized = _featurized_corpus(corpus, config, lexicons)
    out = []
    for record, (x, _) in zip(corpus, featurized):
        out.append((record.id, 1 if predict_proba(params, x) >= threshold else 0))
    return out


MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class LoadedModel:
    params: ModelParams
    dims: int
    ngram_max: int
    variant: PronounVariant
    threshold: float


def save_model(
    path,
    params: ModelParams,
    ngram_max: int,
    variant: PronounVariant,
    threshold: float = 0.5,
) -> None:
    """Write a model file: one JSON header line, then little-endian float64
    parameters (weights, bias last). Byte-identical for identical inputs."""
    header = {
        "format_version": MODEL_FORMAT_VERSION,
        "dims": params.dims,
        "ngram_max": ngram_max,
        "variant": variant.value,
        "threshold": threshold,
    }
    blob = np.concatenate([params.weights, [params.bias]]).astype("<f8").tobytes()
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True).encode("utf-8"))
        fh.write(b"\n")
        fh.write(blob)


def load_model(path) -> LoadedModel:
    path = Path(path)
    raw = path.read_bytes()
    newline = raw.find(b"\n")
    if newline < 0:
        raise DataError(f"{path}: not a model file (missing header line)")
    try:
        header = json.loads(raw[:newline].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise DataError(f"{path}: invalid model header: {exc}") from exc
    if not isinstance(header, dict) or header.get("format_version") != MODEL_FORMAT_VERSION:
        raise DataError(f"{path}: unsupported model format {header!r}")
    try:
        dims = int(header["dims"])
        ngram_max = int(header["ngram_max"])
        variant = PronounVariant(header["variant"])
        threshold = float(header["threshold"])
    except (KeyError, ValueError) as exc:
        raise DataError(f"{path}: invalid model header field: {exc}") from exc
    blob = raw[newline + 1 :]
    expected = 8 * (dims + 1)
    if len(blob) != expected:
        raise DataError(f"{path}: expected {expected} parameter bytes, found {len(blob)}")
    theta = np.frombuffer(blob, dtype="<f8")
    params = ModelParams(weights=theta[:-1].copy(), bias=float(theta[-1]))
    return LoadedModel(params=params, dims=dims, ngram_max=ngram_max, variant=variant, threshold=threshold)
