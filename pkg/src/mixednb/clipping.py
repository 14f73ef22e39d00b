"""Auxiliary binary variables: threshold each continuous column at the
class-weighted grand mean and binarize with a strict ``>`` rule.

Thresholds are computed once from training data; prediction never clips.
They exist only so that mixed-kind correlations can be measured on a
common binary footing.
"""

from __future__ import annotations

import numpy as np

from .errors import NoContinuousColumnsError, SchemaMismatchError
from .schema import Dataset


def compute_thresholds(dataset: Dataset) -> np.ndarray:
    """Per-continuous-column threshold sum_k(mean_kj * n_k) / n.

    Algebraically equal to the grand column mean; kept in the weighted-class
    form so the label structure is explicit.
    """
    cont, _ = dataset.split_by_kind()
    if not cont:
        raise NoContinuousColumnsError("dataset has no continuous columns")
    X = dataset.X[:, cont]
    y = dataset.y
    n = dataset.n
    thresholds = np.zeros(len(cont))
    for k in range(1, dataset.n_classes + 1):
        mask = y == k
        n_k = int(mask.sum())
        if n_k:
            thresholds += X[mask].mean(axis=0) * n_k
    return thresholds / n


def clip(columns: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    """Binarize: 1 where value > threshold, 0 otherwise (ties map to 0)."""
    columns = np.asarray(columns, dtype=float)
    thresholds = np.asarray(thresholds, dtype=float)
    if columns.ndim == 1:
        columns = columns[:, None]
    if columns.shape[1] != thresholds.shape[0]:
        raise SchemaMismatchError(
            f"{columns.shape[1]} columns but {thresholds.shape[0]} thresholds"
        )
    return (columns > thresholds).astype(float)
