"""Stable derivation of named sub-seeds from one master seed.

All randomness in a run flows from a single top-level seed; components
(fold planning, embeddings, rater, synthesis) get named sub-seeds so any
stage can be re-run in isolation with the same stream.
"""

from __future__ import annotations

import hashlib


def derive_seed(master: int, *names: str | int) -> int:
    """Deterministic 63-bit sub-seed for a (master, names...) path."""
    key = ":".join([str(master), *map(str, names)])
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1
