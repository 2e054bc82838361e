"""Tokenization, part-of-speech tagging, and opinion-segment splitting."""

from reviewrater.textproc.tokenizer import (
    COORDINATING_CONJUNCTIONS,
    DELIMITER_PUNCTUATION,
    Token,
    tokenize,
)
from reviewrater.textproc.tagger import (
    COARSE_TAGS,
    PerceptronTagger,
    RuleTagger,
    Tagger,
    load_default_tagger,
    pos_tag,
)
from reviewrater.textproc.segmenter import Segment, segment

__all__ = [
    "COARSE_TAGS",
    "COORDINATING_CONJUNCTIONS",
    "DELIMITER_PUNCTUATION",
    "PerceptronTagger",
    "RuleTagger",
    "Segment",
    "Tagger",
    "Token",
    "load_default_tagger",
    "pos_tag",
    "segment",
    "tokenize",
]
