"""Opinion lexicon: positive/negative word lists and polarity lookup.

File format (one list per polarity): one lowercase word per line, lines
beginning with ";" are comments, blank lines are ignored. The bundled
lists are a curated stand-in loaded by :func:`load_default_lexicon`; any
files in the same format can be supplied instead, including the published
~6,800-entry lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

POSITIVE = "positive"
NEGATIVE = "negative"
NONE = "none"


class LexiconError(Exception):
    """Raised for unreadable lexicon files or conflicting entries."""


@dataclass(frozen=True)
class SentimentLexicon:
    """Disjoint sets of positive and negative lowercase words."""

    positive: frozenset[str]
    negative: frozenset[str]

    def __post_init__(self) -> None:
        clash = self.positive & self.negative
        if clash:
            listing = ", ".join(sorted(clash)[:20])
            raise LexiconError(
                f"{len(clash)} word(s) appear in both lists: {listing}"
            )

    def __len__(self) -> int:
        return len(self.positive) + len(self.negative)

    def polarity(self, word: str) -> str:
        """``positive``/``negative`` for lexicon members, else ``none``.

        ``word`` is expected in norm (lowercase) form; matching is exact,
        with no stemming and no negation handling.
        """
        if word in self.positive:
            return POSITIVE
        if word in self.negative:
            return NEGATIVE
        return NONE

    def __contains__(self, word: str) -> bool:
        return word in self.positive or word in self.negative


def _read_word_list(path: Path) -> frozenset[str]:
    try:
        # Legacy copies of the published lists carry a few non-UTF8 bytes;
        # replace rather than fail.
        raw = path.read_text(encoding="utf-8", errors="replace")
    except OSError as exc:
        raise LexiconError(f"cannot read lexicon file {path}: {exc}") from exc
    words = set()
    for line in raw.splitlines():
        line = line.strip()
        if not line or line.startswith(";"):
            continue
        words.add(line.lower())
    return frozenset(words)


def load_lexicon(pos_path: str | Path, neg_path: str | Path) -> SentimentLexicon:
    """Load both polarity lists; fails if any word appears in both."""
    return SentimentLexicon(
        positive=_read_word_list(Path(pos_path)),
        negative=_read_word_list(Path(neg_path)),
    )


def polarity(lex: SentimentLexicon, word: str) -> str:
    """Module-level alias for :meth:`SentimentLexicon.polarity`."""
    return lex.polarity(word)


_DEFAULT: SentimentLexicon | None = None


def default_lexicon_paths() -> tuple[Path, Path]:
    base = resources.files("reviewrater").joinpath("data/lexicon")
    return Path(str(base / "positive-words.txt")), Path(str(base / "negative-words.txt"))


def load_default_lexicon() -> SentimentLexicon:
    """Bundled lexicon, loaded once per process."""
    global _DEFAULT
    if _DEFAULT is None:
        pos_path, neg_path = default_lexicon_paths()
        _DEFAULT = load_lexicon(pos_path, neg_path)
    return _DEFAULT
