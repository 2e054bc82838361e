"""Skip-gram negative-sampling word embeddings and review feature vectors.

Training is single-threaded and bit-reproducible for a fixed seed: pairs
are generated in corpus order with a seeded dynamic window, negatives are
drawn from the unigram^0.75 noise distribution, and updates are applied in
fixed-size minibatches with a linearly decaying learning rate.

Feature schemes built on a trained model:

* ``w2v``      - mean of the vectors of in-vocab tokens (dim D)
* ``w2v_ape``  - mean vector concatenated with the sum of vectors of all
                 words in the review's aspect phrases (dim 2D)
* ``w2v_pape`` - mean vector concatenated with separate positive-phrase
                 and negative-phrase sums (dim 3D)

Out-of-vocabulary words contribute nothing at aggregation points; lookups
report absence explicitly instead of fabricating a vector.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from reviewrater.aspects import AspectPhrase
from reviewrater.corpus import ReviewSet
from reviewrater.lexicon import NEGATIVE, POSITIVE
from reviewrater.textproc.tokenizer import tokenize

SCHEME_BL = "bl"
SCHEME_W2V = "w2v"
SCHEME_APE = "w2v_ape"
SCHEME_PAPE = "w2v_pape"

EMBEDDING_SCHEMES = (SCHEME_W2V, SCHEME_APE, SCHEME_PAPE)


class EmbeddingError(Exception):
    """Raised for invalid training configs or unusable corpora."""


@dataclass(frozen=True)
class SgnsConfig:
    """Skip-gram negative-sampling hyperparameters."""

    dim: int = 100
    window: int = 5
    negatives: int = 5
    min_count: int = 5
    epochs: int = 5
    seed: int = 1
    learning_rate: float = 0.025
    subsample: float | None = None
    batch_size: int = 512

    def validate(self) -> None:
        if self.dim < 1:
            raise EmbeddingError("dim must be >= 1")
        if self.window < 1:
            raise EmbeddingError("window must be >= 1")
        if self.negatives < 1:
            raise EmbeddingError("negatives must be >= 1")
        if self.min_count < 1:
            raise EmbeddingError("min_count must be >= 1")
        if self.epochs < 1:
            raise EmbeddingError("epochs must be >= 1")
        if not 0 < self.learning_rate:
            raise EmbeddingError("learning_rate must be positive")


def word_norms(text: str) -> list[str]:
    """Lowercased word tokens of a text; pure punctuation is dropped."""
    return [tok.norm for tok in tokenize(text) if tok.is_word]


@dataclass
class EmbeddingModel:
    """Vocabulary plus one D-dimensional vector per word."""

    dim: int
    vocab: dict[str, int]
    vectors: np.ndarray
    train_config: SgnsConfig | None = None
    epoch_losses: list[float] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.vectors.shape != (len(self.vocab), self.dim):
            raise EmbeddingError(
                f"vectors shape {self.vectors.shape} does not match "
                f"({len(self.vocab)}, {self.dim})"
            )

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.vocab

    def vector(self, word: str) -> np.ndarray | None:
        """Trained vector for an in-vocab word, else None (absent)."""
        idx = self.vocab.get(word.lower())
        if idx is None:
            return None
        return self.vectors[idx]

    def save(self, path: str | Path) -> None:
        """Text format: header ``<vocab_size> <dim>``, then word + floats."""
        order = sorted(self.vocab, key=self.vocab.get)
        with Path(path).open("w", encoding="utf-8") as fh:
            fh.write(f"{len(order)} {self.dim}\n")
            for word in order:
                row = self.vectors[self.vocab[word]]
                fh.write(word)
                for x in row:
                    fh.write(f" {float(x)!r}")
                fh.write("\n")

    @classmethod
    def load(cls, path: str | Path) -> "EmbeddingModel":
        with Path(path).open("r", encoding="utf-8") as fh:
            header = fh.readline().split()
            if len(header) != 2:
                raise EmbeddingError(f"bad embedding file header in {path}")
            size, dim = int(header[0]), int(header[1])
            vocab: dict[str, int] = {}
            vectors = np.zeros((size, dim), dtype=np.float32)
            for i, line in enumerate(fh):
                parts = line.rstrip("\n").split(" ")
                if len(parts) != dim + 1:
                    raise EmbeddingError(f"bad embedding row {i + 2} in {path}")
                vocab[parts[0]] = i
                vectors[i] = [float(x) for x in parts[1:]]
        if len(vocab) != size:
            raise EmbeddingError(f"embedding file {path} truncated")
        return cls(dim=dim, vocab=vocab, vectors=vectors)


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(x, -30.0, 30.0)))


def _build_vocab(
    sentences: Sequence[list[str]], min_count: int
) -> tuple[dict[str, int], np.ndarray]:
    counts = Counter(w for sent in sentences for w in sent)
    kept = [(w, c) for w, c in counts.items() if c >= min_count]
    if not kept:
        raise EmbeddingError(
            f"empty effective vocabulary (no word reaches min_count={min_count})"
        )
    # Frequency-descending order with lexicographic tiebreak keeps indices
    # deterministic across runs.
    kept.sort(key=lambda wc: (-wc[1], wc[0]))
    vocab = {w: i for i, (w, _) in enumerate(kept)}
    freqs = np.array([c for _, c in kept], dtype=np.float64)
    return vocab, freqs


def train_word2vec(
    corpus: ReviewSet | Iterable[Sequence[str]],
    config: SgnsConfig | None = None,
) -> EmbeddingModel:
    """Train skip-gram with negative sampling over review texts.

    ``corpus`` is either a ReviewSet (texts are tokenized here) or an
    iterable of pre-tokenized sentences. Deterministic for a fixed seed.
    """
    config = config or SgnsConfig()
    config.validate()
    if isinstance(corpus, ReviewSet):
        sentences = [word_norms(r.text) for r in corpus]
    else:
        sentences = [list(s) for s in corpus]
    if not any(sentences):
        raise EmbeddingError("cannot train embeddings on an empty corpus")

    vocab, freqs = _build_vocab(sentences, config.min_count)
    indexed = [
        np.array([vocab[w] for w in sent if w in vocab], dtype=np.int64)
        for sent in sentences
    ]
    indexed = [s for s in indexed if len(s) >= 2]
    if not indexed:
        raise EmbeddingError("no sentence has two in-vocab words; nothing to train")

    rng = np.random.default_rng(config.seed)
    dim = config.dim
    w_in = (rng.random((len(vocab), dim), dtype=np.float64) - 0.5) / dim
    w_out = np.zeros((len(vocab), dim), dtype=np.float64)

    noise = freqs**0.75
    noise_cdf = np.cumsum(noise / noise.sum())

    total_centers = config.epochs * sum(len(s) for s in indexed)
    processed = 0
    lr0 = config.learning_rate
    k = config.negatives
    losses: list[float] = []

    subsample_keep: np.ndarray | None = None
    if config.subsample:
        word_frac = freqs / freqs.sum()
        ratio = config.subsample / word_frac
        subsample_keep = np.minimum(1.0, np.sqrt(ratio) + ratio)

    for _ in range(config.epochs):
        epoch_loss = 0.0
        epoch_pairs = 0
        centers_buf: list[np.ndarray] = []
        contexts_buf: list[np.ndarray] = []
        buffered = 0

        def flush() -> None:
            nonlocal epoch_loss, epoch_pairs, buffered
            if not centers_buf:
                return
            centers = np.concatenate(centers_buf)
            contexts = np.concatenate(contexts_buf)
            centers_buf.clear()
            contexts_buf.clear()
            buffered = 0
            n = len(centers)
            negs = np.searchsorted(noise_cdf, rng.random((n, k)))
            alpha = lr0 * max(1e-4, 1.0 - processed / total_centers)
            for lo in range(0, n, config.batch_size):
                hi = min(lo + config.batch_size, n)
                c = centers[lo:hi]
                o = contexts[lo:hi]
                ng = negs[lo:hi]
                h = w_in[c]
                out_pos = w_out[o]
                out_neg = w_out[ng]
                s_pos = _sigmoid(np.einsum("bd,bd->b", h, out_pos))
                s_neg = _sigmoid(np.einsum("bd,bkd->bk", h, out_neg))
                epoch_loss += float(
                    -np.log(np.maximum(s_pos, 1e-12)).sum()
                    - np.log(np.maximum(1.0 - s_neg, 1e-12)).sum()
                )
                g_pos = (s_pos - 1.0) * alpha
                g_neg = s_neg * alpha
                grad_h = g_pos[:, None] * out_pos + np.einsum(
                    "bk,bkd->bd", g_neg, out_neg
                )
                np.add.at(w_out, o, -g_pos[:, None] * h)
                np.add.at(w_out, ng, -g_neg[:, :, None] * h[:, None, :])
                np.add.at(w_in, c, -grad_h)
            epoch_pairs += n

        for sent in indexed:
            if subsample_keep is not None:
                keep = rng.random(len(sent)) < subsample_keep[sent]
                sent = sent[keep]
                if len(sent) < 2:
                    processed += len(sent)
                    continue
            n = len(sent)
            reduced = rng.integers(1, config.window + 1, size=n)
            for i in range(n):
                b = int(reduced[i])
                lo = max(0, i - b)
                hi = min(n, i + b + 1)
                ctx = np.concatenate((sent[lo:i], sent[i + 1 : hi]))
                if len(ctx):
                    centers_buf.append(np.full(len(ctx), sent[i], dtype=np.int64))
                    contexts_buf.append(ctx)
                    buffered += len(ctx)
            processed += n
            if buffered >= config.batch_size * 4:
                flush()
        flush()
        losses.append(epoch_loss / max(1, epoch_pairs) / (1 + k))

    return EmbeddingModel(
        dim=dim,
        vocab=vocab,
        vectors=w_in.astype(np.float32),
        train_config=config,
        epoch_losses=losses,
    )


# -- feature construction ---------------------------------------------------


@dataclass(frozen=True)
class FeatureVector:
    """Dense per-review features under a named scheme."""

    scheme: str
    values: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])


def review_text_embedding(model: EmbeddingModel, words: Sequence[str]) -> np.ndarray:
    """Mean of the vectors of in-vocab words; zero vector if none are."""
    rows = [model.vocab[w] for w in words if w in model.vocab]
    if not rows:
        return np.zeros(model.dim, dtype=np.float64)
    return np.asarray(model.vectors[rows], dtype=np.float64).mean(axis=0)


def ape_vector(
    model: EmbeddingModel, phrases: Sequence[AspectPhrase]
) -> np.ndarray:
    """Sum of the vectors of every word in every phrase (both words count,
    one contribution per occurrence); zero vector when nothing is in vocab."""
    out = np.zeros(model.dim, dtype=np.float64)
    for phrase in phrases:
        for word in (phrase.sentiment_word, phrase.target_word):
            idx = model.vocab.get(word)
            if idx is not None:
                out += model.vectors[idx]
    return out


def pape_vector(
    model: EmbeddingModel, phrases: Sequence[AspectPhrase]
) -> np.ndarray:
    """Positive-phrase sum concatenated with negative-phrase sum (dim 2D)."""
    pos = ape_vector(model, [p for p in phrases if p.polarity == POSITIVE])
    neg = ape_vector(model, [p for p in phrases if p.polarity == NEGATIVE])
    return np.concatenate([pos, neg])


def featurize(
    model: EmbeddingModel,
    words: Sequence[str],
    phrases: Sequence[AspectPhrase],
    scheme: str,
) -> FeatureVector:
    """Build the review's feature vector under an embedding scheme."""
    text_vec = review_text_embedding(model, words)
    if scheme == SCHEME_W2V:
        values = text_vec
    elif scheme == SCHEME_APE:
        values = np.concatenate([text_vec, ape_vector(model, phrases)])
    elif scheme == SCHEME_PAPE:
        values = np.concatenate([text_vec, pape_vector(model, phrases)])
    else:
        raise EmbeddingError(f"unknown embedding scheme {scheme!r}")
    return FeatureVector(scheme=scheme, values=values)
