"""Part-of-speech tagging behind a pluggable interface.

Two implementations ship here: :class:`PerceptronTagger`, a trainable
averaged perceptron over Penn-style fine tags, and :class:`RuleTagger`, a
deterministic closed-class/suffix tagger. The perceptron consults the
closed-class table first and falls back to the suffix rules when it has no
learned evidence for a token, so out-of-vocabulary behaviour is always
deterministic.

Fine tags are collapsed to the coarse classes used by the extraction
pipeline (noun, verb, adjective, adverb, punctuation, conjunction, other)
via a mapping table stored inside the model file.

Model file container: magic bytes ``RRTM``, one version byte, then a
gzip-compressed JSON payload holding classes, tag dictionary, feature
weights, and the collapse map.
"""

from __future__ import annotations

import gzip
import json
import random
from collections import defaultdict
from importlib import resources
from pathlib import Path
from typing import Iterable, Protocol, Sequence

from reviewrater.textproc.tokenizer import Token

NOUN = "noun"
VERB = "verb"
ADJECTIVE = "adjective"
ADVERB = "adverb"
PUNCTUATION = "punctuation"
CONJUNCTION = "conjunction"
OTHER = "other"

COARSE_TAGS = frozenset(
    {NOUN, VERB, ADJECTIVE, ADVERB, PUNCTUATION, CONJUNCTION, OTHER}
)

PUNCT_TAG = "PUNCT"

# Fine Penn-style tag -> coarse class. Tags absent here collapse to OTHER;
# modals (MD) are deliberately not verbs, so they never become targets.
DEFAULT_COLLAPSE: dict[str, str] = {
    "NN": NOUN,
    "NNS": NOUN,
    "NNP": NOUN,
    "NNPS": NOUN,
    "VB": VERB,
    "VBD": VERB,
    "VBG": VERB,
    "VBN": VERB,
    "VBP": VERB,
    "VBZ": VERB,
    "JJ": ADJECTIVE,
    "JJR": ADJECTIVE,
    "JJS": ADJECTIVE,
    "RB": ADVERB,
    "RBR": ADVERB,
    "RBS": ADVERB,
    "CC": CONJUNCTION,
    PUNCT_TAG: PUNCTUATION,
}

# Hand-maintained closed classes; these are tagged deterministically and
# take precedence over learned weights.
CLOSED_CLASS: dict[str, str] = {}
CLOSED_CLASS.update(
    dict.fromkeys(
        "the a an this that these those some any no every each either neither "
        "both all another such".split(),
        "DT",
    )
)
CLOSED_CLASS.update(
    dict.fromkeys(
        "of in on at by with from about into over after before under between "
        "during without against through since although though because while "
        "if unless until upon within onto off near across behind beyond "
        "despite toward towards among around per via than as".split(),
        "IN",
    )
)
CLOSED_CLASS.update(
    dict.fromkeys(
        "i you he she it we they me him us them myself yourself himself "
        "herself itself ourselves themselves someone anyone everyone nobody "
        "something anything everything nothing".split(),
        "PRP",
    )
)
CLOSED_CLASS.update(
    dict.fromkeys("my your his its our their mine yours hers theirs".split(), "PRP$")
)
CLOSED_CLASS.update(dict.fromkeys("for and nor but or yet so".split(), "CC"))
CLOSED_CLASS["to"] = "TO"
CLOSED_CLASS.update(
    dict.fromkeys(
        "can could will would shall should may might must cannot won't can't "
        "couldn't wouldn't shouldn't mustn't mightn't".split(),
        "MD",
    )
)
CLOSED_CLASS.update(
    {
        "is": "VBZ",
        "was": "VBD",
        "are": "VBP",
        "were": "VBD",
        "am": "VBP",
        "be": "VB",
        "been": "VBN",
        "being": "VBG",
        "isn't": "VBZ",
        "wasn't": "VBD",
        "aren't": "VBP",
        "weren't": "VBD",
        "ain't": "VBP",
        "do": "VBP",
        "does": "VBZ",
        "did": "VBD",
        "don't": "VBP",
        "doesn't": "VBZ",
        "didn't": "VBD",
        "have": "VBP",
        "has": "VBZ",
        "had": "VBD",
        "haven't": "VBP",
        "hasn't": "VBZ",
        "hadn't": "VBD",
    }
)
CLOSED_CLASS.update(
    dict.fromkeys(
        "very really quite too also just only even still never always often "
        "sometimes usually again maybe perhaps here now then once twice soon "
        "almost enough rather not n't ever definitely probably".split(),
        "RB",
    )
)
CLOSED_CLASS.update({"there": "EX", "which": "WDT", "who": "WP", "whom": "WP"})
CLOSED_CLASS.update(dict.fromkeys("when where why how".split(), "WRB"))
CLOSED_CLASS.update(dict.fromkeys("oh wow hey yes yeah hmm".split(), "UH"))
CLOSED_CLASS.update({"more": "JJR", "most": "JJS", "less": "JJR", "least": "JJS"})

_JJ_SUFFIXES = (
    "ous", "ful", "ive", "able", "ible", "al", "ic", "ish", "less", "ary",
)
_NN_SUFFIXES = (
    "ness", "ment", "tion", "sion", "ship", "ism", "ist", "ity", "ance",
    "ence", "hood", "dom",
)


class TaggerModelError(Exception):
    """Raised when a tagger model file is missing, corrupt, or mismatched."""


class Tagger(Protocol):
    """Anything that maps a token sequence to coarse POS tags."""

    def tag(self, tokens: Sequence[Token]) -> list[str]:
        """Return one coarse tag per token (see ``COARSE_TAGS``)."""
        ...


def _suffix_tag(word: str, position: int) -> str:
    """Deterministic fine tag for a word with no learned evidence."""
    if word in CLOSED_CLASS:
        return CLOSED_CLASS[word]
    if word and word[0].isdigit():
        return "CD"
    if word.endswith("ly"):
        return "RB"
    if word.endswith("ing") and len(word) > 4:
        return "VBG"
    if word.endswith("ed") and len(word) > 3:
        return "VBD"
    for suf in _NN_SUFFIXES:
        if word.endswith(suf) and len(word) > len(suf) + 1:
            return "NN"
    for suf in _JJ_SUFFIXES:
        if word.endswith(suf) and len(word) > len(suf) + 1:
            return "JJ"
    if word.endswith("ize") or word.endswith("ise"):
        return "VB"
    if (
        word.endswith("s")
        and len(word) > 3
        and not word.endswith("ss")
        and not word.endswith("us")
        and not word.endswith("is")
    ):
        return "NNS"
    return "NN"


class RuleTagger:
    """Closed-class plus suffix heuristics; no training required."""

    def __init__(self, collapse: dict[str, str] | None = None):
        self.collapse = dict(collapse or DEFAULT_COLLAPSE)

    def tag_fine(self, tokens: Sequence[Token]) -> list[str]:
        fine = []
        for i, tok in enumerate(tokens):
            if not tok.is_word:
                fine.append(PUNCT_TAG)
            elif tok.norm in CLOSED_CLASS:
                fine.append(CLOSED_CLASS[tok.norm])
            elif i > 0 and tok.surface[0].isupper():
                fine.append("NNP")
            else:
                fine.append(_suffix_tag(tok.norm, i))
        return fine

    def tag(self, tokens: Sequence[Token]) -> list[str]:
        return [self.collapse.get(t, OTHER) for t in self.tag_fine(tokens)]


class AveragedPerceptron:
    """Multiclass averaged perceptron over sparse string features."""

    def __init__(self):
        self.weights: dict[str, dict[str, float]] = {}
        self.classes: set[str] = set()
        self._totals: dict[tuple[str, str], float] = defaultdict(float)
        self._tstamps: dict[tuple[str, str], int] = defaultdict(int)
        self.i = 0

    def predict(self, features: dict[str, int]) -> tuple[str, float]:
        """Best class and its score; ties break alphabetically."""
        if not self.classes:
            return "", 0.0
        scores: dict[str, float] = defaultdict(float)
        for feat, value in features.items():
            if feat not in self.weights or value == 0:
                continue
            for label, weight in self.weights[feat].items():
                scores[label] += value * weight
        best = min(self.classes, key=lambda label: (-scores[label], label))
        return best, scores[best]

    def update(self, truth: str, guess: str, features: Iterable[str]) -> None:
        self.i += 1
        if truth == guess:
            return
        for feat in features:
            weights = self.weights.setdefault(feat, {})
            self._upd_feat(truth, feat, weights.get(truth, 0.0), 1.0)
            self._upd_feat(guess, feat, weights.get(guess, 0.0), -1.0)

    def _upd_feat(self, label: str, feat: str, weight: float, delta: float) -> None:
        key = (feat, label)
        self._totals[key] += (self.i - self._tstamps[key]) * weight
        self._tstamps[key] = self.i
        self.weights[feat][label] = weight + delta

    def average_weights(self) -> None:
        for feat, weights in self.weights.items():
            new: dict[str, float] = {}
            for label, weight in weights.items():
                key = (feat, label)
                total = self._totals[key] + (self.i - self._tstamps[key]) * weight
                averaged = round(total / self.i, 6)
                if averaged:
                    new[label] = averaged
            self.weights[feat] = new
        self._totals.clear()
        self._tstamps.clear()


def _normalize(word: str) -> str:
    if "-" in word and word[0] != "-":
        return "!HYPHEN"
    if word.isdigit():
        return "!DIGITS"
    return word.lower()


_START = ["-START-", "-START2-"]
_END = ["-END-", "-END2-"]


class PerceptronTagger:
    """Averaged-perceptron tagger with deterministic fallback for unknowns.

    ``tag`` emits coarse classes; ``tag_fine`` exposes the underlying fine
    tags. Models are trained with :meth:`train` and persisted with
    :meth:`save`/:meth:`load`.
    """

    MAGIC = b"RRTM"
    VERSION = 1

    def __init__(self, collapse: dict[str, str] | None = None):
        self.model = AveragedPerceptron()
        self.tagdict: dict[str, str] = {}
        self.collapse = dict(collapse or DEFAULT_COLLAPSE)
        self._rules = RuleTagger(self.collapse)

    # -- features ---------------------------------------------------------

    def _get_features(
        self,
        i: int,
        word: str,
        context: Sequence[str],
        prev: str,
        prev2: str,
    ) -> dict[str, int]:
        """Sparse feature counts for position ``i`` (context is padded)."""

        def add(name: str, *args: str) -> None:
            features[" ".join((name,) + args)] += 1

        i += len(_START)
        features: dict[str, int] = defaultdict(int)
        add("bias")
        add("i suffix", word[-3:])
        add("i pref1", word[0] if word else "")
        add("i-1 tag", prev)
        add("i-2 tag", prev2)
        add("i tag+i-2 tag", prev, prev2)
        add("i word", context[i])
        add("i-1 tag+i word", prev, context[i])
        add("i-1 word", context[i - 1])
        add("i-1 suffix", context[i - 1][-3:])
        add("i-2 word", context[i - 2])
        add("i+1 word", context[i + 1])
        add("i+1 suffix", context[i + 1][-3:])
        add("i+2 word", context[i + 2])
        return features

    # -- tagging ----------------------------------------------------------

    def tag_fine(self, tokens: Sequence[Token]) -> list[str]:
        fine: list[str] = []
        prev, prev2 = _START
        context = (
            _START + [_normalize(t.norm) for t in tokens] + _END
        )
        for i, tok in enumerate(tokens):
            if not tok.is_word:
                tag = PUNCT_TAG
            elif tok.norm in CLOSED_CLASS:
                tag = CLOSED_CLASS[tok.norm]
            else:
                tag = self.tagdict.get(tok.norm, "")
                if not tag:
                    word = _normalize(tok.norm)
                    features = self._get_features(i, word, context, prev, prev2)
                    guess, score = self.model.predict(features)
                    if guess and score > 0.0:
                        tag = guess
                    else:
                        # No learned evidence: deterministic suffix fallback.
                        if i > 0 and tok.surface[0].isupper():
                            tag = "NNP"
                        else:
                            tag = _suffix_tag(tok.norm, i)
            fine.append(tag)
            prev2, prev = prev, tag
        return fine

    def tag(self, tokens: Sequence[Token]) -> list[str]:
        return [self.collapse.get(t, OTHER) for t in self.tag_fine(tokens)]

    # -- training ---------------------------------------------------------

    def train(
        self,
        sentences: Sequence[list[tuple[str, str]]],
        nr_iter: int = 8,
        seed: int = 1,
    ) -> None:
        """Train from ``[(word, fine_tag), ...]`` sentences.

        Deterministic for a fixed seed; weights are averaged at the end.
        """
        self._make_tagdict(sentences)
        self.model.classes.update(
            tag for sent in sentences for _, tag in sent
        )
        rng = random.Random(seed)
        order = list(range(len(sentences)))
        for _ in range(nr_iter):
            for idx in order:
                sentence = sentences[idx]
                words = [w for w, _ in sentence]
                context = _START + [_normalize(w.lower()) for w in words] + _END
                prev, prev2 = _START
                for i, (word, truth) in enumerate(sentence):
                    lowered = word.lower()
                    if lowered in CLOSED_CLASS:
                        guess = CLOSED_CLASS[lowered]
                    else:
                        guess = self.tagdict.get(lowered, "")
                        if not guess:
                            feats = self._get_features(
                                i, _normalize(lowered), context, prev, prev2
                            )
                            guess, _ = self.model.predict(feats)
                            if not guess:
                                guess = truth
                            self.model.update(truth, guess, feats.keys())
                    prev2, prev = prev, guess
            rng.shuffle(order)
        self.model.average_weights()

    def _make_tagdict(
        self, sentences: Sequence[list[tuple[str, str]]], freq_thresh: int = 5
    ) -> None:
        """Words that are frequent and near-unambiguous get a fixed tag."""
        counts: dict[str, dict[str, int]] = defaultdict(lambda: defaultdict(int))
        for sentence in sentences:
            for word, tag in sentence:
                counts[word.lower()][tag] += 1
        for word, tag_freqs in counts.items():
            if word in CLOSED_CLASS:
                continue
            tag, mode = max(tag_freqs.items(), key=lambda kv: (kv[1], kv[0]))
            total = sum(tag_freqs.values())
            if total >= freq_thresh and mode / total >= 0.97:
                self.tagdict[word] = tag

    # -- persistence ------------------------------------------------------

    def save(self, path: str | Path) -> None:
        payload = {
            "classes": sorted(self.model.classes),
            "tagdict": self.tagdict,
            "weights": self.model.weights,
            "collapse": self.collapse,
        }
        blob = gzip.compress(
            json.dumps(payload, sort_keys=True).encode("utf-8")
        )
        with Path(path).open("wb") as fh:
            fh.write(self.MAGIC)
            fh.write(bytes([self.VERSION]))
            fh.write(blob)

    @classmethod
    def load(cls, path: str | Path) -> "PerceptronTagger":
        path = Path(path)
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise TaggerModelError(f"cannot read tagger model {path}: {exc}") from exc
        if len(raw) < 5 or raw[:4] != cls.MAGIC:
            raise TaggerModelError(f"{path} is not a tagger model (bad magic)")
        version = raw[4]
        if version != cls.VERSION:
            raise TaggerModelError(
                f"unsupported tagger model version {version} in {path}"
            )
        try:
            payload = json.loads(gzip.decompress(raw[5:]).decode("utf-8"))
            tagger = cls(collapse=payload["collapse"])
            tagger.tagdict = payload["tagdict"]
            tagger.model.weights = payload["weights"]
            tagger.model.classes = set(payload["classes"])
        except (OSError, KeyError, ValueError) as exc:
            raise TaggerModelError(f"corrupt tagger model {path}: {exc}") from exc
        return tagger


def read_tagged_corpus(path: str | Path) -> list[list[tuple[str, str]]]:
    """Read ``word_TAG`` sentences (one sentence per line, '#' comments)."""
    sentences: list[list[tuple[str, str]]] = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            pairs: list[tuple[str, str]] = []
            for item in line.split():
                word, _, tag = item.rpartition("_")
                if not word or not tag:
                    raise TaggerModelError(f"malformed tagged item {item!r}")
                pairs.append((word, tag))
            sentences.append(pairs)
    return sentences


_DEFAULT_TAGGER: PerceptronTagger | None = None


def default_model_path() -> Path:
    return Path(
        str(resources.files("reviewrater").joinpath("data/tagger/english.tagmodel"))
    )


def load_default_tagger() -> PerceptronTagger:
    """Bundled tagger model, loaded once per process."""
    global _DEFAULT_TAGGER
    if _DEFAULT_TAGGER is None:
        _DEFAULT_TAGGER = PerceptronTagger.load(default_model_path())
    return _DEFAULT_TAGGER


def pos_tag(tokens: Sequence[Token], tagger: Tagger | None = None) -> Sequence[Token]:
    """Assign a coarse POS tag to every token, in place."""
    if tagger is None:
        tagger = load_default_tagger()
    for tok, tag in zip(tokens, tagger.tag(tokens)):
        tok.pos = tag
    return tokens
