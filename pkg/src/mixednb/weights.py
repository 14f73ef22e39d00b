"""Mutual-information feature weighting.

Each feature's correlation index is its MI with the class label minus its
average pairwise MI with every other feature, all measured on binary views
(continuous columns are binarized at their training thresholds first). The
index is pushed through a logistic transform and normalized to sum 1.

Two transform directions are supported. ``LITERAL`` uses 1/(1+e^ci), which
is decreasing in the index; ``INCREASING`` uses 1/(1+e^-ci), which gives
features more correlated with the class larger weights. Both are exposed
because they encode opposite rankings; the default is LITERAL.
All MI values are in nats.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .clipping import clip
from .errors import DegenerateColumnError, InvalidParameterError
from .estimation import DEFAULT_XI, estimate_joint, estimate_marginal, truncate
from .schema import Dataset


class WeightMode(Enum):
    LITERAL = "literal"
    INCREASING = "increasing"


def mutual_information(joint: np.ndarray, row_marginals, col_marginals) -> float:
    """MI of a joint table in nats; truncation upstream guarantees no zeros.

    Tiny negative values from truncation round-off are clamped to 0.
    """
    joint = np.asarray(joint, dtype=float)
    pr = np.asarray(row_marginals, dtype=float)
    pc = np.asarray(col_marginals, dtype=float)
    if joint.shape != (pr.size, pc.size):
        raise DegenerateColumnError("joint table does not match marginals")
    mi = float(np.sum(joint * np.log(joint / np.outer(pr, pc))))
    return max(mi, 0.0)


def mi_pair(col_a: np.ndarray, col_b: np.ndarray, xi: float = DEFAULT_XI) -> float:
    """MI between two binary columns using the conditional-MLE joint.

    The joint factorization conditions on one column, so truncation can bind
    in one orientation and not the other; averaging both orientations keeps
    the estimate exactly symmetric.
    """
    pa = estimate_marginal(col_a, xi)
    pb = estimate_marginal(col_b, xi)
    # table rows indexed by the first column's value (0, 1)
    ab = mutual_information(
        estimate_joint(col_a, col_b, xi=xi).table(), (pa[1], pa[0]), (pb[1], pb[0])
    )
    ba = mutual_information(
        estimate_joint(col_b, col_a, xi=xi).table(), (pb[1], pb[0]), (pa[1], pa[0])
    )
    return 0.5 * (ab + ba)


def mi_feature_label(col: np.ndarray, y: np.ndarray, xi: float = DEFAULT_XI) -> float:
    """MI between a binary feature and the K-valued label (2 x K table)."""
    col = np.asarray(col, dtype=float)
    y = np.asarray(y, dtype=int)
    n = y.size
    n_classes = int(y.max())
    joint = np.empty((2, n_classes))
    for a in (0, 1):
        for k in range(n_classes):
            joint[a, k] = np.sum((col == a) & (y == k + 1)) / n
    joint = truncate(joint, xi)
    p_feat = truncate(np.array([np.mean(col == 0), np.mean(col == 1)]), xi)
    p_label = truncate(np.bincount(y, minlength=n_classes + 1)[1:] / n, xi)
    return mutual_information(joint, p_feat, p_label)


def correlation_index(mi_label: float, pairwise_mis) -> float:
    """MI with the label minus average pairwise MI; empty average is 0."""
    pairwise = np.asarray(pairwise_mis, dtype=float)
    avg = float(pairwise.mean()) if pairwise.size else 0.0
    return mi_label - avg


def transform_weights(cis, mode: WeightMode = WeightMode.LITERAL) -> tuple[np.ndarray, np.ndarray]:
    """Logistic transform of correlation indices, then sum-1 normalization."""
    cis = np.asarray(cis, dtype=float)
    if cis.size == 0:
        raise InvalidParameterError("need at least one feature")
    z = cis if mode is WeightMode.LITERAL else -cis
    raw = 1.0 / (1.0 + np.exp(z))
    return raw, raw / raw.sum()


@dataclass(frozen=True)
class FeatureWeightReport:
    names: tuple[str, ...]
    mi_label: np.ndarray
    avg_pairwise_mi: np.ndarray
    ci: np.ndarray
    raw: np.ndarray
    normalized: np.ndarray

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("feature,mi_label,avg_pairwise_mi,ci,raw,normalized\n")
        for j, name in enumerate(self.names):
            fields = (
                self.mi_label[j], self.avg_pairwise_mi[j],
                self.ci[j], self.raw[j], self.normalized[j],
            )
            out.write(name + "," + ",".join(repr(float(v)) for v in fields) + "\n")
        return out.getvalue()


def weight_report(
    X: np.ndarray,
    y: np.ndarray,
    names: tuple[str, ...],
    cont_idx,
    thresholds: np.ndarray | None,
    xi: float = DEFAULT_XI,
    mode: WeightMode = WeightMode.LITERAL,
) -> FeatureWeightReport:
    """Full weighting pass over training arrays (y in 1..K).

    Continuous columns are replaced by their clipped binary views before any
    MI is measured; two-valued columns are used as-is.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    cont = list(cont_idx)
    B = X.copy()
    if cont:
        if thresholds is None:
            raise InvalidParameterError("thresholds required with continuous columns")
        B[:, cont] = clip(X[:, cont], thresholds)

    p = X.shape[1]
    mi_label = np.array([mi_feature_label(B[:, j], y, xi) for j in range(p)])

    pair = np.zeros((p, p))
    for j in range(p):
        for jp in range(j + 1, p):
            m = mi_pair(B[:, j], B[:, jp], xi)
            pair[j, jp] = pair[jp, j] = m

    if p > 1:
        avg_pair = (pair.sum(axis=1)) / (p - 1)
    else:
        avg_pair = np.zeros(1)
    ci = mi_label - avg_pair
    raw, normalized = transform_weights(ci, mode)
    return FeatureWeightReport(
        names=tuple(names),
        mi_label=mi_label,
        avg_pairwise_mi=avg_pair,
        ci=ci,
        raw=raw,
        normalized=normalized,
    )


def compute_feature_weights(
    dataset: Dataset,
    thresholds: np.ndarray | None,
    xi: float = DEFAULT_XI,
    mode: WeightMode = WeightMode.LITERAL,
) -> FeatureWeightReport:
    cont, _ = dataset.split_by_kind()
    return weight_report(
        dataset.X, dataset.y, tuple(dataset.schema.names), cont, thresholds, xi, mode
    )
