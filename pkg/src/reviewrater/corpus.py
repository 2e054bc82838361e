"""Ingest, validate, filter, and summarize multi-domain review datasets.

The interchange format is JSONL, one review object per line:

    {"id": str, "text": str, "stars": int, "domain": str, "source": str}

Invalid lines are never silently dropped: :func:`load_reviews` returns a
:class:`LoadResult` that carries both the accepted reviews and a per-line
rejection log.
"""

from __future__ import annotations

import csv
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, Mapping

STAR_VALUES = (1, 2, 3, 4, 5)

_REQUIRED_FIELDS = ("id", "text", "stars", "domain", "source")


class CorpusError(Exception):
    """Raised for unreadable files or malformed review sets."""


@dataclass(frozen=True, slots=True)
class Review:
    """One rated review: text plus a 1-5 star label and provenance tags."""

    id: str
    text: str
    stars: int
    domain: str
    source: str


@dataclass(frozen=True, slots=True)
class Rejection:
    """One rejected input line, with the reason it failed validation."""

    line_no: int
    reason: str


class ReviewSet:
    """Immutable ordered collection of reviews with unique ids."""

    def __init__(self, reviews: Iterable[Review]):
        self._reviews = tuple(reviews)
        by_id: dict[str, Review] = {}
        for r in self._reviews:
            if r.id in by_id:
                raise CorpusError(f"duplicate review id {r.id!r}")
            by_id[r.id] = r
        self._by_id = by_id
        self.domains = frozenset(r.domain for r in self._reviews)

    def __len__(self) -> int:
        return len(self._reviews)

    def __iter__(self) -> Iterator[Review]:
        return iter(self._reviews)

    def __getitem__(self, index: int) -> Review:
        return self._reviews[index]

    def get(self, review_id: str) -> Review | None:
        return self._by_id.get(review_id)

    def filter_domain(self, domain: str) -> "ReviewSet":
        """Reviews with the given domain tag, original order preserved."""
        return ReviewSet(r for r in self._reviews if r.domain == domain)

    def domain_counts(self) -> dict[str, int]:
        return dict(Counter(r.domain for r in self._reviews))

    def __repr__(self) -> str:
        return f"ReviewSet({len(self)} reviews, {len(self.domains)} domains)"


@dataclass(slots=True)
class LoadResult:
    """Outcome of loading a JSONL file: accepted reviews plus rejection log."""

    reviews: ReviewSet
    rejections: list[Rejection] = field(default_factory=list)
    filtered_short: int = 0
    total_lines: int = 0


def _validate_record(obj: object, domains: frozenset[str] | None) -> Review | str:
    """Turn one parsed JSON value into a Review, or a rejection reason."""
    if not isinstance(obj, dict):
        return "record is not a JSON object"
    for name in _REQUIRED_FIELDS:
        if name not in obj:
            return f"missing field {name!r}"
    rid = obj["id"]
    text = obj["text"]
    stars = obj["stars"]
    domain = obj["domain"]
    source = obj["source"]
    if not isinstance(rid, str) or not rid:
        return "id must be a non-empty string"
    if not isinstance(text, str):
        return "text must be a string"
    if not text.strip():
        return "text is empty"
    # bool is an int subtype; reject it explicitly.  Non-integer star values
    # (e.g. 4.5) are rejected rather than rounded: the task is 5-class.
    if isinstance(stars, bool) or not isinstance(stars, int):
        return "stars must be an integer"
    if stars not in STAR_VALUES:
        return "stars out of range"
    if not isinstance(domain, str) or not domain:
        return "domain must be a non-empty string"
    if domains is not None and domain not in domains:
        return f"domain {domain!r} not in configured domain set"
    if not isinstance(source, str) or not source:
        return "source must be a non-empty string"
    return Review(id=rid, text=text, stars=stars, domain=domain, source=source)


def load_reviews(
    path: str | Path,
    *,
    domains: Iterable[str] | None = None,
    min_text_len: int = 0,
) -> LoadResult:
    """Load reviews from a JSONL file.

    Every input line is accounted for: it ends up as a review, a logged
    rejection, or (when ``min_text_len`` is set) a length-filtered count.
    Blank lines are ignored. ``domains`` optionally restricts the accepted
    domain tags; by default any tag is accepted.
    """
    path = Path(path)
    try:
        fh = path.open("r", encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    with fh:
        return _load_stream(fh, domains=domains, min_text_len=min_text_len)


def _load_stream(
    fh: IO[str],
    *,
    domains: Iterable[str] | None = None,
    min_text_len: int = 0,
) -> LoadResult:
    domain_set = frozenset(domains) if domains is not None else None
    reviews: list[Review] = []
    rejections: list[Rejection] = []
    seen_ids: set[str] = set()
    filtered = 0
    total = 0
    for line_no, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line:
            continue
        total += 1
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            rejections.append(Rejection(line_no, f"invalid JSON: {exc.msg}"))
            continue
        result = _validate_record(obj, domain_set)
        if isinstance(result, str):
            rejections.append(Rejection(line_no, result))
            continue
        if result.id in seen_ids:
            rejections.append(Rejection(line_no, f"duplicate id {result.id!r}"))
            continue
        if min_text_len and len(result.text.strip()) < min_text_len:
            filtered += 1
            continue
        seen_ids.add(result.id)
        reviews.append(result)
    return LoadResult(
        reviews=ReviewSet(reviews),
        rejections=rejections,
        filtered_short=filtered,
        total_lines=total,
    )


def save_reviews(reviews: Iterable[Review], path: str | Path) -> int:
    """Write reviews as canonical JSONL. Returns the number written."""
    n = 0
    with Path(path).open("w", encoding="utf-8") as fh:
        for r in reviews:
            fh.write(
                json.dumps(
                    {
                        "id": r.id,
                        "text": r.text,
                        "stars": r.stars,
                        "domain": r.domain,
                        "source": r.source,
                    },
                    ensure_ascii=False,
                )
            )
            fh.write("\n")
            n += 1
    return n


def filter_domain(reviews: ReviewSet, domain: str) -> ReviewSet:
    """Reviews whose domain matches, in original order. Unknown tag -> empty."""
    return reviews.filter_domain(domain)


def star_distribution(reviews: ReviewSet) -> dict[str, list[int]]:
    """Per-domain histogram of star counts.

    Returns ``{domain: [count_1, ..., count_5]}``; the five counts sum to the
    domain's review count. Domains are keyed by tag; callers wanting the
    machine-readable table should use :func:`write_star_distribution_csv`.
    """
    hist: dict[str, list[int]] = {}
    for r in reviews:
        row = hist.setdefault(r.domain, [0, 0, 0, 0, 0])
        row[r.stars - 1] += 1
    return hist


def write_star_distribution_csv(
    hist: Mapping[str, list[int]], path: str | Path
) -> None:
    """Emit ``domain,stars,count`` rows, domains sorted by descending total."""
    order = sorted(hist, key=lambda d: (-sum(hist[d]), d))
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["domain", "stars", "count"])
        for domain in order:
            for stars, count in zip(STAR_VALUES, hist[domain]):
                writer.writerow([domain, stars, count])


def write_rejections(rejections: Iterable[Rejection], path: str | Path) -> None:
    """Emit the rejection log as ``line_no,reason`` CSV."""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["line_no", "reason"])
        for rej in rejections:
            writer.writerow([rej.line_no, rej.reason])
