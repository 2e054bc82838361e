"""Aspect phrase extraction and per-domain salience ranking.

An aspect phrase is a (sentiment word, target word) pair found inside one
opinion segment: the sentiment word is any lexicon member, the target is a
non-sentiment token tagged noun or verb. Every qualifying pair in a
segment is emitted (full cross product), ordered by sentiment-word
position then target-word position. Copulas and auxiliaries are legitimate
targets, so pairs like (good, was) are expected output.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from reviewrater.corpus import Review, ReviewSet
from reviewrater.lexicon import NONE, SentimentLexicon
from reviewrater.textproc.segmenter import Segment, segment
from reviewrater.textproc.tagger import (
    NOUN,
    VERB,
    Tagger,
    load_default_tagger,
    pos_tag,
)
from reviewrater.textproc.tokenizer import tokenize

TARGET_POS = frozenset({NOUN, VERB})


@dataclass(frozen=True, slots=True)
class AspectPhrase:
    """One extracted pair plus its polarity and segment provenance."""

    sentiment_word: str
    target_word: str
    polarity: str
    segment_index: int

    @property
    def pair(self) -> tuple[str, str]:
        return (self.sentiment_word, self.target_word)


def extract_from_segments(
    segments: Sequence[Segment],
    lex: SentimentLexicon,
    max_distance: int | None = None,
) -> list[AspectPhrase]:
    """Extract phrases from POS-tagged segments.

    Lexicon membership takes precedence over POS: a sentiment word tagged
    noun/verb acts only as sentiment word, never as target. By default the
    segment is the only boundary; ``max_distance`` optionally caps the
    token-position distance between the two words of a pair.
    """
    phrases: list[AspectPhrase] = []
    for seg_idx, seg in enumerate(segments):
        sentiments: list[tuple[int, str, str]] = []
        targets: list[tuple[int, str]] = []
        for pos_idx, tok in enumerate(seg.tokens):
            pol = lex.polarity(tok.norm)
            if pol != NONE:
                sentiments.append((pos_idx, tok.norm, pol))
            elif tok.pos in TARGET_POS:
                targets.append((pos_idx, tok.norm))
        for s_idx, word, pol in sentiments:
            for t_idx, target in targets:
                if max_distance is not None and abs(s_idx - t_idx) > max_distance:
                    continue
                phrases.append(AspectPhrase(word, target, pol, seg_idx))
    return phrases


def extract_aspect_phrases(
    review: Review | str,
    lex: SentimentLexicon | None = None,
    tagger: Tagger | None = None,
    max_distance: int | None = None,
) -> list[AspectPhrase]:
    """Run the full extraction pipeline on one review (or raw text).

    Tokenize, POS-tag, split into segments, then pair sentiment words with
    non-sentiment noun/verb targets segment by segment. A review with no
    qualifying pairs yields an empty list.
    """
    if lex is None:
        from reviewrater.lexicon import load_default_lexicon

        lex = load_default_lexicon()
    text = review.text if isinstance(review, Review) else review
    tokens = pos_tag(tokenize(text), tagger)
    return extract_from_segments(segment(tokens), lex, max_distance)


def salient_phrases(
    reviews: ReviewSet,
    lex: SentimentLexicon | None = None,
    tagger: Tagger | None = None,
    top_n: int = 5,
) -> dict[str, list[tuple[tuple[str, str], int]]]:
    """Per-domain top phrases by raw frequency.

    Ties break lexicographically on (sentiment_word, target_word). If a
    domain has fewer than ``top_n`` distinct phrases, all are returned.
    """
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    if tagger is None:
        tagger = load_default_tagger()
    counts: dict[str, Counter[tuple[str, str]]] = {}
    for review in reviews:
        counter = counts.setdefault(review.domain, Counter())
        for phrase in extract_aspect_phrases(review, lex, tagger):
            counter[phrase.pair] += 1
    ranked: dict[str, list[tuple[tuple[str, str], int]]] = {}
    for domain, counter in counts.items():
        order = sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
        ranked[domain] = order[:top_n]
    return ranked


def write_phrase_dump_csv(
    rows: Iterable[tuple[str, AspectPhrase]], path: str | Path
) -> None:
    """Emit ``review_id,segment_index,sentiment_word,target_word,polarity``."""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["review_id", "segment_index", "sentiment_word", "target_word", "polarity"]
        )
        for review_id, phrase in rows:
            writer.writerow(
                [
                    review_id,
                    phrase.segment_index,
                    phrase.sentiment_word,
                    phrase.target_word,
                    phrase.polarity,
                ]
            )


def write_salience_csv(
    ranked: dict[str, list[tuple[tuple[str, str], int]]],
    path: str | Path,
    domain_order: Sequence[str] | None = None,
) -> None:
    """Emit ``domain,rank,sentiment_word,target_word,count`` rows."""
    domains = list(domain_order) if domain_order is not None else sorted(ranked)
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["domain", "rank", "sentiment_word", "target_word", "count"])
        for domain in domains:
            for rank, ((sent, targ), count) in enumerate(ranked.get(domain, []), 1):
                writer.writerow([domain, rank, sent, targ, count])
