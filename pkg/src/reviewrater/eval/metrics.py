"""Rating-error metrics: mean absolute error and root mean square error."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def _paired(preds: Sequence[float], truths: Sequence[float]) -> np.ndarray:
    p = np.asarray(preds, dtype=np.float64)
    t = np.asarray(truths, dtype=np.float64)
    if p.ndim != 1 or t.ndim != 1:
        raise ValueError("predictions and truths must be 1-dimensional")
    if p.shape[0] != t.shape[0]:
        raise ValueError(f"length mismatch: {p.shape[0]} vs {t.shape[0]}")
    if p.shape[0] == 0:
        raise ValueError("cannot score an empty test set")
    return p - t


def mae(preds: Sequence[float], truths: Sequence[float]) -> float:
    """Mean absolute error between predicted and true ratings."""
    return float(np.abs(_paired(preds, truths)).mean())


def rmse(preds: Sequence[float], truths: Sequence[float]) -> float:
    """Root mean square error between predicted and true ratings."""
    return float(np.sqrt((_paired(preds, truths) ** 2).mean()))
