"""Whitespace/punctuation tokenizer that keeps intra-word hyphens.

Rules: split on whitespace, detach leading/trailing punctuation as
single-character tokens, and always detach the four segment-delimiting
punctuation marks (, . ; :) even inside a chunk. Hyphens and apostrophes
between alphanumeric characters stay inside the token ("well-written",
"don't"). Each token records its start offset, so the original text is
reconstructible from the token stream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

# Segment boundaries per the extraction rules: four punctuation marks plus
# the seven coordinating conjunctions, matched whole-token case-insensitively.
DELIMITER_PUNCTUATION = frozenset({",", ".", ";", ":"})
COORDINATING_CONJUNCTIONS = frozenset({"for", "and", "nor", "but", "or", "yet", "so"})

# A word is an alphanumeric run, optionally joined by internal hyphens or
# apostrophes; anything else that is not whitespace is a one-char token.
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*|\S")


@dataclass(slots=True)
class Token:
    """One token: original surface, lowercased form, offset, and POS slot."""

    surface: str
    start: int
    norm: str = field(init=False)
    pos: str | None = None
    is_delimiter: bool = field(init=False)

    def __post_init__(self) -> None:
        self.norm = self.surface.lower()
        self.is_delimiter = (
            self.surface in DELIMITER_PUNCTUATION
            or self.norm in COORDINATING_CONJUNCTIONS
        )

    @property
    def end(self) -> int:
        return self.start + len(self.surface)

    @property
    def is_word(self) -> bool:
        """True when the token has an alphanumeric core (not pure punctuation)."""
        return any(ch.isalnum() for ch in self.surface)


def tokenize(text: str) -> list[Token]:
    """Split text into tokens; POS tags are left unset.

    Empty text yields an empty list. Concatenating ``surface`` strings with
    the inter-token gaps recovered from ``start`` offsets reconstructs the
    input exactly.
    """
    return [Token(m.group(), m.start()) for m in _TOKEN_RE.finditer(text)]


def reconstruct(text: str, tokens: list[Token]) -> str:
    """Rebuild the input from token surfaces plus recorded gaps (for checks)."""
    parts: list[str] = []
    cursor = 0
    for tok in tokens:
        parts.append(text[cursor : tok.start])
        parts.append(tok.surface)
        cursor = tok.end
    parts.append(text[cursor:])
    return "".join(parts)
