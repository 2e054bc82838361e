"""Split token streams into opinion segments.

Boundaries are purely lexical: the punctuation marks , . ; : and the
coordinating conjunctions for, and, nor, but, or, yet, so. Boundary tokens
are dropped; the text on either side lands in different segments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from reviewrater.textproc.tokenizer import Token


@dataclass(frozen=True, slots=True)
class Segment:
    """Maximal run of non-delimiter tokens, in original order."""

    tokens: tuple[Token, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def words(self) -> list[str]:
        return [t.norm for t in self.tokens]


def segment(tokens: Sequence[Token]) -> list[Segment]:
    """Partition tokens into segments at delimiter tokens.

    Delimiters never appear in the output; consecutive delimiters produce no
    empty segments. Boundaries depend only on token surfaces, never on POS.
    """
    segments: list[Segment] = []
    current: list[Token] = []
    for tok in tokens:
        if tok.is_delimiter:
            if current:
                segments.append(Segment(tuple(current)))
                current = []
        else:
            current.append(tok)
    if current:
        segments.append(Segment(tuple(current)))
    return segments
