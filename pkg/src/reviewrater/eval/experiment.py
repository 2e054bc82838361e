"""Experiment orchestration: per-(domain, fold) training and scoring.

For every target domain and fold, the training set is assembled per the
chosen setting, features are built per scheme, a rater is trained on the
training side only, and the test fold is scored with MAE and RMSE. The
per-domain result is the unweighted mean of the k fold scores, and report
rows are ordered by descending domain review count.

Embedding-training leakage policy: by default embeddings are trained on
the cell's training split only; ``leakage=True`` trains one model on the
whole corpus text instead (test text leaks, labels never do).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Protocol, Sequence

import numpy as np

from reviewrater.aspects import AspectPhrase, extract_from_segments
from reviewrater.corpus import ReviewSet
from reviewrater.embeddings import (
    EMBEDDING_SCHEMES,
    EmbeddingModel,
    SCHEME_BL,
    SgnsConfig,
    featurize,
    train_word2vec,
)
from reviewrater.eval.folds import FoldPlan, cross_domain_split, in_domain_split
from reviewrater.eval.metrics import mae, rmse
from reviewrater.lexicon import SentimentLexicon, load_default_lexicon
from reviewrater.models import MLRConfig, UnigramVocab, select_top_k_unigrams, train_mlr
from reviewrater.seeding import derive_seed
from reviewrater.textproc.segmenter import segment
from reviewrater.textproc.tagger import Tagger, load_default_tagger, pos_tag
from reviewrater.textproc.tokenizer import tokenize

IN_DOMAIN = "in_domain"
CROSS_DOMAIN = "cross_domain"
SETTINGS = (IN_DOMAIN, CROSS_DOMAIN)

ALL_SCHEMES = (SCHEME_BL,) + EMBEDDING_SCHEMES


class ExperimentError(Exception):
    """Raised for invalid configurations or failed experiment cells."""


class Rater(Protocol):
    def predict(self, x: np.ndarray) -> np.ndarray: ...


RaterFactory = Callable[[np.ndarray, np.ndarray, str], Rater]


@dataclass(frozen=True)
class ExperimentConfig:
    """What to run: setting, schemes, and component hyperparameters."""

    setting: str = IN_DOMAIN
    schemes: tuple[str, ...] = ALL_SCHEMES
    seed: int = 0
    embedding: SgnsConfig = field(default_factory=SgnsConfig)
    mlr: MLRConfig = field(default_factory=MLRConfig)
    bl_k: int = 100
    leakage: bool = False
    target_domains: tuple[str, ...] | None = None

    def validate(self) -> None:
        if self.setting not in SETTINGS:
            raise ExperimentError(f"unknown setting {self.setting!r}")
        if not self.schemes:
            raise ExperimentError("no feature schemes requested")
        for scheme in self.schemes:
            if scheme not in ALL_SCHEMES:
                raise ExperimentError(f"unknown scheme {scheme!r}")
        if self.bl_k < 1:
            raise ExperimentError("bl_k must be >= 1")


@dataclass(frozen=True)
class FoldRow:
    domain: str
    setting: str
    scheme: str
    fold: int
    n: int
    mae: float
    rmse: float


@dataclass(frozen=True)
class AggregateRow:
    domain: str
    setting: str
    scheme: str
    mae: float
    rmse: float
    n: int


@dataclass
class MetricsReport:
    """All fold scores plus per-(domain, scheme) fold-averaged rows."""

    setting: str
    fold_rows: list[FoldRow]
    rows: list[AggregateRow]

    @property
    def n(self) -> int:
        return sum(r.n for r in self.fold_rows)

    @property
    def mae(self) -> float:
        return float(np.mean([r.mae for r in self.rows]))

    @property
    def rmse(self) -> float:
        return float(np.mean([r.rmse for r in self.rows]))

    def row(self, domain: str, scheme: str) -> AggregateRow:
        for r in self.rows:
            if r.domain == domain and r.scheme == scheme:
                return r
        raise KeyError((domain, scheme))


# Backwards-friendly alias: the report is the experiment's output object.
ExperimentReport = MetricsReport


@dataclass
class _Prepared:
    """Tokenized words and extracted phrases for every review, computed once."""

    words: dict[str, list[str]]
    phrases: dict[str, list[AspectPhrase]]
    stars: dict[str, int]


def prepare_reviews(
    reviews: ReviewSet,
    lex: SentimentLexicon | None = None,
    tagger: Tagger | None = None,
) -> _Prepared:
    lex = lex or load_default_lexicon()
    tagger = tagger or load_default_tagger()
    words: dict[str, list[str]] = {}
    phrases: dict[str, list[AspectPhrase]] = {}
    stars: dict[str, int] = {}
    for review in reviews:
        tokens = pos_tag(tokenize(review.text), tagger)
        words[review.id] = [t.norm for t in tokens if t.is_word]
        phrases[review.id] = extract_from_segments(segment(tokens), lex)
        stars[review.id] = review.stars
    return _Prepared(words=words, phrases=phrases, stars=stars)


def _bl_matrix(ids: Sequence[str], prep: _Prepared, vocab: UnigramVocab) -> np.ndarray:
    index = vocab.index()
    x = np.zeros((len(ids), vocab.k), dtype=np.float64)
    for row, review_id in enumerate(ids):
        for w in prep.words[review_id]:
            col = index.get(w)
            if col is not None:
                x[row, col] += 1.0
    return x


def _embedding_matrix(
    ids: Sequence[str], prep: _Prepared, model: EmbeddingModel, scheme: str
) -> np.ndarray:
    return np.stack(
        [
            featurize(model, prep.words[i], prep.phrases[i], scheme).values
            for i in ids
        ]
    )


def domains_by_size(reviews: ReviewSet) -> list[str]:
    counts = reviews.domain_counts()
    return sorted(counts, key=lambda d: (-counts[d], d))


def run_experiment(
    reviews: ReviewSet,
    plan: FoldPlan,
    config: ExperimentConfig,
    lex: SentimentLexicon | None = None,
    tagger: Tagger | None = None,
    rater_factory: RaterFactory | None = None,
) -> MetricsReport:
    """Run the full (domain x fold x scheme) grid for one setting.

    ``rater_factory`` replaces the default logistic-regression trainer;
    it receives (train_x, train_y, scheme) and must return something with
    a ``predict`` method. Any cell failure aborts with cell context.
    """
    config.validate()
    prep = prepare_reviews(reviews, lex, tagger)
    split_fn = in_domain_split if config.setting == IN_DOMAIN else cross_domain_split
    targets = list(config.target_domains or domains_by_size(reviews))
    for domain in targets:
        if domain not in reviews.domains:
            raise ExperimentError(f"target domain {domain!r} not in corpus")
    order = [d for d in domains_by_size(reviews) if d in set(targets)]

    needs_embedding = any(s in EMBEDDING_SCHEMES for s in config.schemes)
    embed_config = SgnsConfig(
        **{
            **config.embedding.__dict__,
            "seed": derive_seed(config.seed, "embedding"),
        }
    )
    mlr_config = MLRConfig(
        **{**config.mlr.__dict__, "seed": derive_seed(config.seed, "mlr")}
    )
    embed_cache: dict[tuple, EmbeddingModel] = {}

    def embedding_for(train_ids: Sequence[str]) -> EmbeddingModel:
        key = ("__full__",) if config.leakage else tuple(train_ids)
        if key not in embed_cache:
            source = (
                [prep.words[r.id] for r in reviews]
                if config.leakage
                else [prep.words[i] for i in train_ids]
            )
            embed_cache[key] = train_word2vec(source, embed_config)
        return embed_cache[key]

    def default_factory(x: np.ndarray, y: np.ndarray, scheme: str) -> Rater:
        return train_mlr(x, y, mlr_config, scheme=scheme)

    factory = rater_factory or default_factory

    fold_rows: list[FoldRow] = []
    for domain in order:
        for fold in range(1, plan.k + 1):
            try:
                train_ids, test_ids = split_fn(plan, domain, fold)
                y_train = np.array([prep.stars[i] for i in train_ids])
                y_test = np.array([prep.stars[i] for i in test_ids])
                model = embedding_for(train_ids) if needs_embedding else None
                for scheme in config.schemes:
                    if scheme == SCHEME_BL:
                        vocab = select_top_k_unigrams(
                            [prep.words[i] for i in train_ids], config.bl_k
                        )
                        x_train = _bl_matrix(train_ids, prep, vocab)
                        x_test = _bl_matrix(test_ids, prep, vocab)
                    else:
                        assert model is not None
                        x_train = _embedding_matrix(train_ids, prep, model, scheme)
                        x_test = _embedding_matrix(test_ids, prep, model, scheme)
                    rater = factory(x_train, y_train, scheme)
                    preds = np.asarray(rater.predict(x_test))
                    fold_rows.append(
                        FoldRow(
                            domain=domain,
                            setting=config.setting,
                            scheme=scheme,
                            fold=fold,
                            n=len(test_ids),
                            mae=mae(preds, y_test),
                            rmse=rmse(preds, y_test),
                        )
                    )
            except Exception as exc:
                raise ExperimentError(
                    f"cell (domain={domain!r}, fold={fold}) failed: {exc}"
                ) from exc

    rows: list[AggregateRow] = []
    for domain in order:
        for scheme in config.schemes:
            cell = [
                r for r in fold_rows if r.domain == domain and r.scheme == scheme
            ]
            rows.append(
                AggregateRow(
                    domain=domain,
                    setting=config.setting,
                    scheme=scheme,
                    mae=float(np.mean([r.mae for r in cell])),
                    rmse=float(np.mean([r.rmse for r in cell])),
                    n=sum(r.n for r in cell),
                )
            )
    return MetricsReport(setting=config.setting, fold_rows=fold_rows, rows=rows)


def best_in_domain(rows: Sequence[AggregateRow]) -> dict[str, tuple[float, float]]:
    """Per domain: (best MAE, best RMSE) over schemes of in-domain rows."""
    best: dict[str, tuple[float, float]] = {}
    for row in rows:
        if row.setting != IN_DOMAIN:
            continue
        cur = best.get(row.domain)
        if cur is None:
            best[row.domain] = (row.mae, row.rmse)
        else:
            best[row.domain] = (min(cur[0], row.mae), min(cur[1], row.rmse))
    return best


def write_fold_csv(report: MetricsReport, path: str | Path) -> None:
    """Emit ``domain,setting,scheme,fold,mae,rmse`` rows."""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["domain", "setting", "scheme", "fold", "mae", "rmse"])
        for r in report.fold_rows:
            writer.writerow(
                [r.domain, r.setting, r.scheme, r.fold, repr(r.mae), repr(r.rmse)]
            )


def write_aggregate_csv(
    report: MetricsReport,
    path: str | Path,
    bid: Mapping[str, tuple[float, float]] | None = None,
) -> None:
    """Emit ``domain,setting,scheme,mae,rmse`` rows (+ BID columns if given)."""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        header = ["domain", "setting", "scheme", "mae", "rmse"]
        if bid is not None:
            header += ["bid_mae", "bid_rmse"]
        writer.writerow(header)
        for r in report.rows:
            row = [r.domain, r.setting, r.scheme, repr(r.mae), repr(r.rmse)]
            if bid is not None:
                pair = bid.get(r.domain)
                row += [repr(pair[0]), repr(pair[1])] if pair else ["", ""]
            writer.writerow(row)
