"""Top-K unigram baseline features and the multinomial logistic rater.

The baseline (``bl``) represents a review as raw occurrence counts of the
K most frequent training unigrams (default K=100), with no tf-idf and no
stopword removal. The rater is a 5-class softmax regression trained with
mini-batch SGD on L2-regularized cross-entropy; single-threaded training
is deterministic for a fixed seed.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from reviewrater.corpus import Review, ReviewSet
from reviewrater.embeddings import FeatureVector, SCHEME_BL, word_norms

STAR_CLASSES = (1, 2, 3, 4, 5)


class ModelError(Exception):
    """Raised for invalid training inputs or corrupt model files."""


@dataclass(frozen=True)
class UnigramVocab:
    """Rank-ordered top-K unigrams (frequency desc, lexicographic ties)."""

    words: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.words)) != len(self.words):
            raise ModelError("unigram vocabulary contains duplicates")

    @property
    def k(self) -> int:
        return len(self.words)

    def index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.words)}


RankingFn = Callable[[Counter], list[str]]


def _frequency_ranking(counts: Counter) -> list[str]:
    return [w for w, _ in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))]


def select_top_k_unigrams(
    train: ReviewSet | Sequence[Sequence[str]],
    k: int = 100,
    ranking: RankingFn = _frequency_ranking,
) -> UnigramVocab:
    """Top unigrams by total occurrence count over training texts only.

    ``ranking`` is a pluggable point for alternative keyword rankings; the
    default is plain global frequency.
    """
    if k < 1:
        raise ModelError("k must be >= 1")
    counts: Counter = Counter()
    if isinstance(train, ReviewSet):
        if len(train) == 0:
            raise ModelError("cannot build a unigram vocabulary from an empty set")
        for review in train:
            counts.update(word_norms(review.text))
    else:
        for words in train:
            counts.update(words)
    return UnigramVocab(words=tuple(ranking(counts)[:k]))


def bl_featurize(
    review: Review | Sequence[str], vocab: UnigramVocab
) -> FeatureVector:
    """Length-K vector of token counts of each vocab unigram in the review."""
    words = word_norms(review.text) if isinstance(review, Review) else review
    index = vocab.index()
    values = np.zeros(vocab.k, dtype=np.float64)
    for w in words:
        idx = index.get(w)
        if idx is not None:
            values[idx] += 1.0
    return FeatureVector(scheme=SCHEME_BL, values=values)


# -- multinomial logistic regression ----------------------------------------


@dataclass(frozen=True)
class MLRConfig:
    """Mini-batch SGD settings for the softmax rater."""

    learning_rate: float = 0.1
    epochs: int = 20
    batch_size: int = 256
    l2: float = 1e-4
    seed: int = 1

    def validate(self) -> None:
        if self.learning_rate <= 0:
            raise ModelError("learning_rate must be positive")
        if self.epochs < 1:
            raise ModelError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ModelError("batch_size must be >= 1")
        if self.l2 < 0:
            raise ModelError("l2 must be >= 0")


def _softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=-1, keepdims=True)
    ex = np.exp(shifted)
    return ex / ex.sum(axis=-1, keepdims=True)


def mlr_loss_and_grad(
    weights: np.ndarray,
    bias: np.ndarray,
    x: np.ndarray,
    y_idx: np.ndarray,
    l2: float,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean cross-entropy plus (l2/2)*||W||^2, with analytic gradients."""
    n = x.shape[0]
    probs = _softmax(x @ weights.T + bias)
    logp = np.log(np.maximum(probs[np.arange(n), y_idx], 1e-300))
    loss = float(-logp.mean() + 0.5 * l2 * float((weights**2).sum()))
    probs[np.arange(n), y_idx] -= 1.0
    grad_w = probs.T @ x / n + l2 * weights
    grad_b = probs.mean(axis=0)
    return loss, grad_w, grad_b


@dataclass
class MLRModel:
    """5-class softmax rater over a fixed feature scheme.

    Features are standardized per column during training (raw counts,
    embedding means, and phrase sums live on very different scales); the
    fitted affine transform is stored in the model and applied on every
    prediction, so callers always pass raw features.
    """

    weights: np.ndarray
    bias: np.ndarray
    scheme: str
    feature_scale: float = 1.0
    train_config: MLRConfig | None = None
    loss_history: list[float] | None = None
    classes: tuple[int, ...] = STAR_CLASSES

    @property
    def feature_dim(self) -> int:
        return int(self.weights.shape[1])

    def _check(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if x.shape[1] != self.feature_dim:
            raise ModelError(
                f"feature dim {x.shape[1]} does not match model dim "
                f"{self.feature_dim}"
            )
        return x / self.feature_scale

    def decision_scores(self, x: np.ndarray) -> np.ndarray:
        return self._check(x) @ self.weights.T + self.bias

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        """Softmax class probabilities; each row sums to 1."""
        return _softmax(self.decision_scores(x))

    def predict(self, x: np.ndarray) -> np.ndarray:
        """Argmax star rating; score ties resolve to the lower star."""
        scores = self.decision_scores(x)
        return np.argmax(scores, axis=1) + 1

    def save(self, path: str | Path) -> None:
        payload = {
            "format": "reviewrater-mlr",
            "version": 1,
            "scheme": self.scheme,
            "feature_dim": self.feature_dim,
            "classes": list(self.classes),
            "weights": self.weights.tolist(),
            "bias": self.bias.tolist(),
            "feature_scale": self.feature_scale,
            "train_config": asdict(self.train_config) if self.train_config else None,
        }
        Path(path).write_text(json.dumps(payload), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "MLRModel":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ModelError(f"cannot read model file {path}: {exc}") from exc
        if payload.get("format") != "reviewrater-mlr" or payload.get("version") != 1:
            raise ModelError(f"{path} is not a version-1 rater model file")
        config = (
            MLRConfig(**payload["train_config"]) if payload["train_config"] else None
        )

        def _arr(key: str) -> np.ndarray | None:
            raw = payload.get(key)
            return np.array(raw, dtype=np.float64) if raw is not None else None

        return cls(
            weights=np.array(payload["weights"], dtype=np.float64),
            bias=np.array(payload["bias"], dtype=np.float64),
            scheme=payload["scheme"],
            feature_mean=_arr("feature_mean"),
            feature_scale=_arr("feature_scale"),
            train_config=config,
            classes=tuple(payload["classes"]),
        )


def _as_matrix(
    features: Sequence[FeatureVector] | np.ndarray,
) -> tuple[np.ndarray, str]:
    if isinstance(features, np.ndarray):
        return np.asarray(features, dtype=np.float64), "raw"
    if not features:
        raise ModelError("no training features given")
    scheme = features[0].scheme
    dim = features[0].dim
    for fv in features:
        if fv.scheme != scheme:
            raise ModelError(
                f"mixed feature schemes: {scheme!r} and {fv.scheme!r}"
            )
        if fv.dim != dim:
            raise ModelError(f"mixed feature dims: {dim} and {fv.dim}")
    return np.stack([fv.values for fv in features]).astype(np.float64), scheme


def train_mlr(
    features: Sequence[FeatureVector] | np.ndarray,
    labels: Sequence[int],
    config: MLRConfig | None = None,
    scheme: str | None = None,
) -> MLRModel:
    """Train the softmax rater with mini-batch SGD (1/sqrt(t) decay).

    Labels are stars in {1..5}; every class need not be present. Reports
    the mean training loss per epoch in ``loss_history``.
    """
    config = config or MLRConfig()
    config.validate()
    x, inferred_scheme = _as_matrix(features)
    y = np.asarray(labels, dtype=np.int64)
    if x.shape[0] != y.shape[0]:
        raise ModelError(f"{x.shape[0]} features but {y.shape[0]} labels")
    if x.shape[0] == 0:
        raise ModelError("cannot train on zero examples")
    if not np.isfinite(x).all():
        raise ModelError("non-finite feature input")
    if not np.isin(y, STAR_CLASSES).all():
        raise ModelError("labels must be stars in {1..5}")

    y_idx = y - 1
    n, dim = x.shape
    mean = x.mean(axis=0)
    scale = x.std(axis=0)
    scale[scale < 1e-12] = 1.0
    x = (x - mean) / scale
    weights = np.zeros((len(STAR_CLASSES), dim), dtype=np.float64)
    bias = np.zeros(len(STAR_CLASSES), dtype=np.float64)
    rng = np.random.default_rng(config.seed)
    step = 0
    history: list[float] = []
    for _ in range(config.epochs):
        order = rng.permutation(n)
        epoch_loss = 0.0
        batches = 0
        for lo in range(0, n, config.batch_size):
            batch = order[lo : lo + config.batch_size]
            step += 1
            lr = config.learning_rate / np.sqrt(step)
            loss, grad_w, grad_b = mlr_loss_and_grad(
                weights, bias, x[batch], y_idx[batch], config.l2
            )
            weights -= lr * grad_w
            bias -= lr * grad_b
            epoch_loss += loss
            batches += 1
        history.append(epoch_loss / batches)
    return MLRModel(
        weights=weights,
        bias=bias,
        scheme=scheme or inferred_scheme,
        feature_mean=mean,
        feature_scale=scale,
        train_config=config,
        loss_history=history,
    )
