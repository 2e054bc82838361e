"""Seeded synthetic review corpora for desk-scale evaluation.

Reviews are assembled from clauses that plant sentiment words (shared
across domains) next to domain-specific target nouns (disjoint across
domains). The star label is a deterministic function of the planted
positive/negative counts, so polarity-aware features are sufficient
statistics for the rating and cross-domain transfer is learnable at small
scale.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from reviewrater.corpus import Review, ReviewSet


class SynthSpecError(Exception):
    """Raised when a generator configuration is internally inconsistent."""


def _round_half_away(x: float) -> int:
    return int(math.floor(x + 0.5)) if x >= 0 else int(math.ceil(x - 0.5))


def default_rating_rule(pos: int, neg: int) -> int:
    """stars = clamp(3 + round(2*(pos-neg)/(pos+neg+1)), 1, 5)."""
    raw = 3 + _round_half_away(2.0 * (pos - neg) / (pos + neg + 1))
    return max(1, min(5, raw))


@dataclass(frozen=True)
class SynthDomain:
    """One synthetic domain: its size and its private target vocabulary."""

    name: str
    n_reviews: int
    targets: tuple[str, ...]


_SENTIMENT_TEMPLATES = (
    "the {t} was {s}",
    "the {t} is {s}",
    "{s} {t}",
    "we had {s} {t}",
    "it was a {s} {t}",
)

_FILLER_TEMPLATES = (
    "we went to the {t}",
    "we tried the {t}",
    "they have a {t}",
    "we saw the {t} {a}",
    "it seemed {a} normal",
    "we stayed {a} late",
)

_FILLER_ADVERBS = ("really", "very", "quite", "somewhat", "mostly")


@dataclass(frozen=True)
class SynthConfig:
    """Generator settings; see :func:`synth_corpus`."""

    domains: tuple[SynthDomain, ...]
    positive_words: tuple[str, ...]
    negative_words: tuple[str, ...]
    pos_range: tuple[int, int] = (0, 6)
    neg_range: tuple[int, int] = (0, 6)
    filler_range: tuple[int, int] = (1, 6)
    source: str = "synth"

    def validate(self) -> None:
        if len(self.domains) < 2:
            raise SynthSpecError("need at least 2 domains")
        names = [d.name for d in self.domains]
        if len(set(names)) != len(names):
            raise SynthSpecError("duplicate domain names")
        seen: dict[str, str] = {}
        for dom in self.domains:
            if dom.n_reviews < 1:
                raise SynthSpecError(f"domain {dom.name!r} has no reviews")
            if not dom.targets:
                raise SynthSpecError(f"domain {dom.name!r} has no target words")
            for t in dom.targets:
                if t in seen:
                    raise SynthSpecError(
                        f"target {t!r} shared by domains {seen[t]!r} and {dom.name!r}"
                    )
                seen[t] = dom.name
        pos, neg = set(self.positive_words), set(self.negative_words)
        if not pos or not neg:
            raise SynthSpecError("both sentiment pools must be non-empty")
        if pos & neg:
            raise SynthSpecError(f"sentiment pools overlap: {sorted(pos & neg)}")
        planted = pos | neg
        if planted & set(seen):
            raise SynthSpecError(
                f"sentiment words collide with targets: {sorted(planted & set(seen))}"
            )
        for name, rng_ in (
            ("pos_range", self.pos_range),
            ("neg_range", self.neg_range),
            ("filler_range", self.filler_range),
        ):
            if rng_[0] < 0 or rng_[1] < rng_[0]:
                raise SynthSpecError(f"invalid {name}: {rng_}")


_JOINERS = (", ", " and ", "; ", " but ", ". ")


def synth_corpus(config: SynthConfig, seed: int) -> ReviewSet:
    """Generate a seeded corpus; identical seeds give identical output.

    Each review plants ``n_pos`` positive and ``n_neg`` negative sentiment
    words in clauses next to domain targets, pads with filler clauses, and
    labels the result with :func:`default_rating_rule`.
    """
    config.validate()
    rng = random.Random(seed)
    reviews: list[Review] = []
    for dom in config.domains:
        for i in range(dom.n_reviews):
            n_pos = rng.randint(*config.pos_range)
            n_neg = rng.randint(*config.neg_range)
            n_fill = rng.randint(*config.filler_range)
            clauses: list[str] = []
            for pool, count in (
                (config.positive_words, n_pos),
                (config.negative_words, n_neg),
            ):
                for _ in range(count):
                    template = rng.choice(_SENTIMENT_TEMPLATES)
                    clauses.append(
                        template.format(
                            s=rng.choice(pool), t=rng.choice(dom.targets)
                        )
                    )
            for _ in range(n_fill):
                template = rng.choice(_FILLER_TEMPLATES)
                clauses.append(
                    template.format(
                        t=rng.choice(dom.targets), a=rng.choice(_FILLER_ADVERBS)
                    )
                )
            rng.shuffle(clauses)
            text = clauses[0]
            for clause in clauses[1:]:
                text += rng.choice(_JOINERS) + clause
            text = text[0].upper() + text[1:] + "."
            reviews.append(
                Review(
                    id=f"{dom.name}-{i:05d}",
                    text=text,
                    stars=default_rating_rule(n_pos, n_neg),
                    domain=dom.name,
                    source=config.source,
                )
            )
    return ReviewSet(reviews)


def acceptance_config(scarce_size: int = 200, popular_size: int = 600) -> SynthConfig:
    """Five-domain configuration with one scarce domain (last).

    Target vocabularies are disjoint across domains; the sentiment pools
    are shared and drawn from the bundled lexicon.
    """
    return SynthConfig(
        domains=(
            SynthDomain(
                "eatery",
                popular_size,
                (
                    "food", "service", "pizza", "pasta", "waiter", "menu",
                    "salad", "soup", "dessert", "kitchen", "lunch", "dinner",
                    "burger", "fries", "steak", "sauce", "patio", "chef",
                    "brunch", "appetizer", "burrito", "noodles", "sushi", "taco",
                    "platter", "espresso",
                ),
            ),
            SynthDomain(
                "lodging",
                popular_size,
                (
                    "room", "bed", "lobby", "pool", "view", "suite",
                    "shower", "hallway", "elevator", "balcony", "breakfast", "desk",
                    "mattress", "pillow", "towel", "concierge", "parking", "gym",
                    "spa", "wifi", "bathtub", "linens", "keycard", "minibar",
                    "courtyard", "valet",
                ),
            ),
            SynthDomain(
                "fiction",
                popular_size,
                (
                    "book", "story", "chapter", "author", "character", "ending",
                    "cover", "page", "plot", "sequel", "narrator", "paragraph",
                    "novel", "writing", "prose", "dialogue", "heroine", "translation",
                    "paperback", "preface", "bookmark", "index", "appendix", "epilogue",
                    "foreword", "manuscript",
                ),
            ),
            SynthDomain(
                "apparel",
                popular_size,
                (
                    "shirt", "dress", "fabric", "jacket", "shoes", "jeans",
                    "sleeve", "zipper", "collar", "pocket", "sweater", "boots",
                    "skirt", "blouse", "scarf", "buttons", "lining", "hem",
                    "waist", "heel", "denim", "flannel", "buttonhole", "cuff",
                    "insole", "laces",
                ),
            ),
            SynthDomain(
                "dental",
                scarce_size,
                (
                    "dentist", "office", "teeth", "tooth", "appointment",
                    "hygienist", "filling", "crown", "chair", "clinic",
                    "receptionist", "exam", "gums", "braces", "molar", "dentures",
                    "floss", "rinse", "paperwork", "bill", "cavity", "checkup",
                    "enamel", "retainer", "sealant", "x-ray",
                ),
            ),
        ),
        positive_words=(
            "good", "great", "excellent", "amazing", "wonderful",
            "fantastic", "awesome", "lovely", "pleasant", "superb",
            "delightful", "impressive", "charming", "terrific", "splendid",
            "marvelous", "brilliant", "fabulous", "outstanding", "perfect",
            "delicious", "tasty", "friendly", "helpful", "polite",
            "courteous", "attentive", "gorgeous", "beautiful", "elegant",
            "stylish", "comfy", "cozy", "spotless", "pristine",
            "immaculate", "sparkling", "refreshing", "satisfying", "enjoyable",
            "memorable", "remarkable", "exceptional", "magnificent", "stellar",
            "sublime", "divine", "graceful", "vibrant", "inviting",
            "welcoming", "generous", "reasonable", "affordable", "speedy",
            "prompt", "reliable", "sturdy", "seamless", "flawless",
        ),
        negative_words=(
            "bad", "terrible", "awful", "horrible", "poor",
            "dreadful", "unpleasant", "disappointing", "mediocre", "lousy",
            "dirty", "nasty", "gross", "shabby", "miserable",
            "atrocious", "abysmal", "appalling", "horrendous", "hideous",
            "revolting", "disgusting", "filthy", "grimy", "stale",
            "bland", "soggy", "greasy", "rancid", "moldy",
            "rude", "hostile", "arrogant", "dismissive", "sloppy",
            "careless", "clumsy", "noisy", "chaotic", "cramped",
            "dingy", "dilapidated", "rickety", "flimsy", "defective",
            "faulty", "broken", "leaky", "rusty", "scratched",
            "overpriced", "exorbitant", "slow", "sluggish", "tardy",
            "unresponsive", "unreliable", "unprofessional", "unhelpful", "dismal",
        ),
        pos_range=(0, 7),
        neg_range=(0, 7),
        filler_range=(1, 5),
    )
