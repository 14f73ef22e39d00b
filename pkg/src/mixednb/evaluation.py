"""Confusion matrix, false alarm rate, and fault detection rate.

FAR/FDR collapse multi-class labels to normal vs. non-normal; the full
confusion matrix is kept for diagnostics. A rate with an empty denominator
is reported as None, never as 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, LengthMismatchError


@dataclass(frozen=True)
class EvaluationReport:
    confusion: np.ndarray          # (K, K), rows = true class, cols = predicted
    accuracy: float
    far: float | None              # false alarm rate
    fdr: float | None              # fault detection rate

    @property
    def n(self) -> int:
        return int(self.confusion.sum())

    def summary_line(self) -> str:
        far = "" if self.far is None else f"{self.far:.6f}"
        fdr = "" if self.fdr is None else f"{self.fdr:.6f}"
        return f"FAR={far} FDR={fdr} ACC={self.accuracy:.6f}"


def evaluate(predicted, true, normal_class: int = 1) -> EvaluationReport:
    pred = np.asarray(predicted, dtype=int)
    true = np.asarray(true, dtype=int)
    if pred.shape != true.shape:
        raise LengthMismatchError("predicted and true label sequences differ in length")
    if pred.size == 0:
        raise InvalidParameterError("no labels to evaluate")
    K = int(max(pred.max(), true.max()))
    if not 1 <= normal_class <= K:
        raise InvalidParameterError(f"normal_class {normal_class} out of range 1..{K}")
    confusion = np.zeros((K, K), dtype=int)
    np.add.at(confusion, (true - 1, pred - 1), 1)

    accuracy = float(np.trace(confusion) / pred.size)
    normal_mask = true == normal_class
    n_normal = int(normal_mask.sum())
    n_fault = pred.size - n_normal
    far = (
        float(np.sum(normal_mask & (pred != normal_class)) / n_normal)
        if n_normal else None
    )
    fdr = (
        float(np.sum(~normal_mask & (pred != normal_class)) / n_fault)
        if n_fault else None
    )
    return EvaluationReport(confusion=confusion, accuracy=accuracy, far=far, fdr=fdr)
