"""Naive Bayes classifiers for mixed binary/continuous data.

``WeightedMixedNB`` is the main estimator: Bernoulli conditionals on binary
columns, Gaussian conditionals on continuous columns, each feature's
log-likelihood scaled by a mutual-information-derived weight. Scoring uses
the linear factorization x_tilde . varphi_k + phi_k; ``direct_scores``
recomputes the same quantity term by term and exists so the two routes can
be checked against each other.

``GaussianOnlyNB`` and ``BernoulliOnlyNB`` are the unweighted single-kind
baselines (all feature weights fixed at 1).

All probability math is in the log domain; posteriors use max-shifted
exponential normalization, so wide rows cannot underflow.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from . import clipping
from .errors import (
    ClassTooSmallError,
    InvalidParameterError,
    ModelFormatError,
    NonBinaryValueError,
    SchemaMismatchError,
    SingleClassError,
)
from .estimation import (
    DEFAULT_SIGMA_FLOOR,
    DEFAULT_XI,
    TruncationConfig,
    TruncationMode,
    estimate_bernoulli,
    estimate_gaussian,
    estimate_priors,
)
from .schema import Dataset, DatasetSchema, VariableKind, VariableSpec
from .weights import FeatureWeightReport, WeightMode, weight_report

MODEL_FORMAT_VERSION = "1"


@dataclass(frozen=True)
class ScoreBreakdown:
    """Per-class components of the linear decision form for one row."""

    x_tilde: np.ndarray      # (p2 + 1,), last entry 1
    varphi: np.ndarray       # (K, p2 + 1)
    phi: np.ndarray          # (K,) continuous log-density contribution
    scores: np.ndarray       # (K,) x_tilde . varphi_k + phi_k


class _BaseMixedNB(ClassifierMixin, BaseEstimator):
    """Shared fit/score machinery; subclasses choose the feature weights."""

    def __init__(self, xi=DEFAULT_XI, truncation="clamp-all", sigma_floor=DEFAULT_SIGMA_FLOOR):
        self.xi = xi
        self.truncation = truncation
        self.sigma_floor = sigma_floor

    def _binary_indices(self, X):
        raise NotImplementedError

    def _fit_weights(self, X, y_int):
        """Return (weights, thresholds or None, report or None)."""
        raise NotImplementedError

    def _truncation_cfg(self):
        return TruncationConfig(xi=self.xi, mode=TruncationMode(self.truncation))

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=float)
        self.classes_ = np.unique(y)
        K = self.classes_.size
        if K < 2:
            raise SingleClassError("training data contains a single class")
        y_int = np.searchsorted(self.classes_, y) + 1
        counts = np.bincount(y_int, minlength=K + 1)[1:]
        if np.any(counts < 2):
            raise ClassTooSmallError("every class needs at least 2 training rows")

        p = X.shape[1]
        binary_idx = sorted(self._binary_indices(X))
        if any(j < 0 or j >= p for j in binary_idx):
            raise InvalidParameterError("binary feature index out of range")
        cont_idx = [j for j in range(p) if j not in set(binary_idx)]
        for j in binary_idx:
            if not np.all((X[:, j] == 0.0) | (X[:, j] == 1.0)):
                raise NonBinaryValueError(f"binary column {j} contains a value other than 0/1")

        cfg = self._truncation_cfg()
        self.binary_idx_ = binary_idx
        self.cont_idx_ = cont_idx
        self.class_count_ = K
        self.priors_ = estimate_priors(y_int, K, cfg)
        self.theta_ = np.column_stack(
            [estimate_bernoulli(X[:, j], y_int, K, cfg) for j in binary_idx]
        ) if binary_idx else np.empty((K, 0))
        if cont_idx:
            mus, sigmas = zip(*[
                estimate_gaussian(X[:, j], y_int, K, self.sigma_floor) for j in cont_idx
            ])
            self.mu_ = np.column_stack(mus)
            self.sigma_ = np.column_stack(sigmas)
        else:
            self.mu_ = np.empty((K, 0))
            self.sigma_ = np.empty((K, 0))

        weights, thresholds, report = self._fit_weights(X, y_int)
        self.feature_weights_ = np.asarray(weights, dtype=float)
        self.thresholds_ = thresholds
        self.weight_report_ = report
        self._build_linear_form()
        return self

    def _build_linear_form(self):
        """Cache varphi_k vectors for the factorized scoring path."""
        K = self.class_count_
        p2 = len(self.binary_idx_)
        fw_t = self.feature_weights_[self.binary_idx_]
        varphi = np.empty((K, p2 + 1))
        with np.errstate(divide="ignore"):
            log_odds = np.log(self.theta_ / (1.0 - self.theta_))
            log_comp = np.log(1.0 - self.theta_)
        varphi[:, :p2] = fw_t * log_odds
        varphi[:, p2] = np.log(self.priors_) + (fw_t * log_comp).sum(axis=1)
        self.varphi_ = varphi

    def _validate_rows(self, X):
        X = check_array(X, dtype=float)
        p = len(self.binary_idx_) + len(self.cont_idx_)
        if X.shape[1] != p:
            raise SchemaMismatchError(f"row has {X.shape[1]} features, model expects {p}")
        for j in self.binary_idx_:
            if not np.all((X[:, j] == 0.0) | (X[:, j] == 1.0)):
                raise NonBinaryValueError(f"binary column {j} contains a value other than 0/1")
        return X

    def _phi(self, X):
        """Weighted continuous log-density contribution, shape (n, K)."""
        n = X.shape[0]
        if not self.cont_idx_:
            return np.zeros((n, self.class_count_))
        Xc = X[:, self.cont_idx_]                       # (n, p1)
        fw = self.feature_weights_[self.cont_idx_]      # (p1,)
        mu = self.mu_[None, :, :]                       # (1, K, p1)
        var = self.sigma_[None, :, :] ** 2
        logdens = -0.5 * np.log(2.0 * np.pi * var) - (Xc[:, None, :] - mu) ** 2 / (2.0 * var)
        return (fw[None, None, :] * logdens).sum(axis=2)

    def decision_scores(self, X):
        """Per-class scores via the linear form, shape (n, K)."""
        check_is_fitted(self, "varphi_")
        X = self._validate_rows(X)
        x_tilde = np.column_stack([X[:, self.binary_idx_], np.ones(X.shape[0])])
        return x_tilde @ self.varphi_.T + self._phi(X)

    def direct_scores(self, X):
        """Same scores computed term by term from the weighted log-posterior
        numerator; the reference route for checking the linear form."""
        check_is_fitted(self, "varphi_")
        X = self._validate_rows(X)
        n = X.shape[0]
        scores = np.tile(np.log(self.priors_), (n, 1))
        fw_t = self.feature_weights_[self.binary_idx_]
        if self.binary_idx_:
            Xt = X[:, self.binary_idx_][:, None, :]     # (n, 1, p2)
            theta = self.theta_[None, :, :]
            loglik = Xt * np.log(theta) + (1.0 - Xt) * np.log(1.0 - theta)
            scores += (fw_t[None, None, :] * loglik).sum(axis=2)
        scores += self._phi(X)
        return scores

    def score_breakdown(self, row) -> ScoreBreakdown:
        row = np.asarray(row, dtype=float).reshape(1, -1)
        X = self._validate_rows(row)
        x_tilde = np.append(X[0, self.binary_idx_], 1.0)
        phi = self._phi(X)[0]
        scores = self.varphi_ @ x_tilde + phi
        return ScoreBreakdown(x_tilde=x_tilde, varphi=self.varphi_.copy(), phi=phi, scores=scores)

    def predict(self, X):
        scores = self.decision_scores(X)
        # np.argmax takes the first maximum: ties go to the smallest class index
        return self.classes_[np.argmax(scores, axis=1)]

    def predict_log_proba(self, X):
        scores = self.decision_scores(X)
        shifted = scores - scores.max(axis=1, keepdims=True)
        logZ = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
        return shifted - logZ

    def predict_proba(self, X):
        return np.exp(self.predict_log_proba(X))


class WeightedMixedNB(_BaseMixedNB):
    """Feature-weighted mixed naive Bayes classifier.

    Parameters
    ----------
    binary_features : sequence of int
        Column indices modeled as Bernoulli; all others are Gaussian.
    xi : float
        Probability truncation floor; every estimate lives in [xi, 1-xi].
    truncation : {"clamp-all", "literal"}
        Double-truncation mode for priors and response probabilities.
    sigmoid : {"literal", "increasing"}
        Direction of the logistic transform mapping correlation indices to
        raw weights.
    sigma_floor : float
        Lower bound on per-class standard deviations.
    """

    def __init__(
        self,
        binary_features=(),
        xi=DEFAULT_XI,
        truncation="clamp-all",
        sigmoid="literal",
        sigma_floor=DEFAULT_SIGMA_FLOOR,
    ):
        super().__init__(xi=xi, truncation=truncation, sigma_floor=sigma_floor)
        self.binary_features = binary_features
        self.sigmoid = sigmoid

    def _binary_indices(self, X):
        return [int(j) for j in self.binary_features]

    def _fit_weights(self, X, y_int):
        thresholds = None
        if self.cont_idx_:
            ds = _as_dataset(X, y_int, self.binary_idx_)
            thresholds = clipping.compute_thresholds(ds)
        names = tuple(f"x{j + 1}" for j in range(X.shape[1]))
        report = weight_report(
            X, y_int, names, self.cont_idx_, thresholds,
            xi=self.xi, mode=WeightMode(self.sigmoid),
        )
        return report.normalized, thresholds, report


class GaussianOnlyNB(_BaseMixedNB):
    """Gaussian naive Bayes baseline: every feature continuous, weight 1."""

    def _binary_indices(self, X):
        return []

    def _fit_weights(self, X, y_int):
        return np.ones(X.shape[1]), None, None


class BernoulliOnlyNB(_BaseMixedNB):
    """Bernoulli naive Bayes baseline: every feature binary, weight 1."""

    def _binary_indices(self, X):
        return list(range(X.shape[1]))

    def _fit_weights(self, X, y_int):
        return np.ones(X.shape[1]), None, None


def _as_dataset(X, y_int, binary_idx):
    p = X.shape[1]
    variables = tuple(
        VariableSpec(
            f"x{j + 1}",
            VariableKind.TWO_VALUED if j in set(binary_idx) else VariableKind.CONTINUOUS,
        )
        for j in range(p)
    )
    return Dataset(schema=DatasetSchema(variables), X=X, y=y_int)


# --------------------------------------------------------------------------
# Dataset-level training and model persistence
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelBundle:
    """A fitted classifier together with the schema and label tokens it was
    trained against; the unit of model persistence."""

    clf: WeightedMixedNB
    schema: DatasetSchema
    label_names: tuple[str, ...]

    def predict_tokens(self, X) -> list[str]:
        return [self.label_names[k - 1] for k in self.clf.predict(X)]


def train_on_dataset(
    dataset: Dataset,
    xi: float = DEFAULT_XI,
    truncation: str = "clamp-all",
    sigmoid: str = "literal",
    sigma_floor: float = DEFAULT_SIGMA_FLOOR,
) -> ModelBundle:
    _, two = dataset.split_by_kind()
    clf = WeightedMixedNB(
        binary_features=tuple(two), xi=xi, truncation=truncation,
        sigmoid=sigmoid, sigma_floor=sigma_floor,
    )
    clf.fit(dataset.X, dataset.y)
    # rename weight report columns to the schema's variable names
    if clf.weight_report_ is not None:
        r = clf.weight_report_
        clf.weight_report_ = FeatureWeightReport(
            names=tuple(dataset.schema.names),
            mi_label=r.mi_label, avg_pairwise_mi=r.avg_pairwise_mi,
            ci=r.ci, raw=r.raw, normalized=r.normalized,
        )
    return ModelBundle(clf=clf, schema=dataset.schema, label_names=dataset.label_names)


_MODEL_FIELDS = {
    "format_version", "schema", "label_mapping", "class_count", "priors",
    "theta", "mu", "sigma", "thresholds", "weights", "config",
}


def model_to_dict(bundle: ModelBundle) -> dict:
    clf = bundle.clf
    r = clf.weight_report_
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "schema": {
            "variables": [[v.name, v.kind.value] for v in bundle.schema.variables],
            "label_name": bundle.schema.label_name,
        },
        "label_mapping": list(bundle.label_names),
        "class_count": clf.class_count_,
        "priors": clf.priors_.tolist(),
        "theta": clf.theta_.tolist(),
        "mu": clf.mu_.tolist(),
        "sigma": clf.sigma_.tolist(),
        "thresholds": None if clf.thresholds_ is None else np.asarray(clf.thresholds_).tolist(),
        "weights": {
            "names": list(r.names),
            "mi_label": r.mi_label.tolist(),
            "avg_pairwise_mi": r.avg_pairwise_mi.tolist(),
            "ci": r.ci.tolist(),
            "raw": r.raw.tolist(),
            "normalized": r.normalized.tolist(),
        },
        "config": {
            "xi": clf.xi,
            "truncation": clf.truncation,
            "sigmoid": clf.sigmoid,
            "sigma_floor": clf.sigma_floor,
        },
    }


def model_from_dict(doc: dict) -> ModelBundle:
    if not isinstance(doc, dict):
        raise ModelFormatError("model document is not a JSON object")
    unknown = set(doc) - _MODEL_FIELDS
    if unknown:
        raise ModelFormatError(f"unknown model fields: {sorted(unknown)}")
    missing = _MODEL_FIELDS - set(doc)
    if missing:
        raise ModelFormatError(f"missing model fields: {sorted(missing)}")
    if doc["format_version"] != MODEL_FORMAT_VERSION:
        raise ModelFormatError(f"unsupported format_version {doc['format_version']!r}")

    try:
        variables = tuple(
            VariableSpec(name, VariableKind.parse(kind))
            for name, kind in doc["schema"]["variables"]
        )
        schema = DatasetSchema(variables, label_name=doc["schema"]["label_name"])
        cfg = doc["config"]
        clf = WeightedMixedNB(
            binary_features=tuple(schema.kind_indices()[1]),
            xi=cfg["xi"], truncation=cfg["truncation"],
            sigmoid=cfg["sigmoid"], sigma_floor=cfg["sigma_floor"],
        )
        K = int(doc["class_count"])
        clf.classes_ = np.arange(1, K + 1)
        clf.class_count_ = K
        cont, two = schema.kind_indices()
        clf.cont_idx_ = cont
        clf.binary_idx_ = two
        clf.priors_ = np.asarray(doc["priors"], dtype=float)
        clf.theta_ = np.asarray(doc["theta"], dtype=float).reshape(K, len(two))
        clf.mu_ = np.asarray(doc["mu"], dtype=float).reshape(K, len(cont))
        clf.sigma_ = np.asarray(doc["sigma"], dtype=float).reshape(K, len(cont))
        clf.thresholds_ = (
            None if doc["thresholds"] is None else np.asarray(doc["thresholds"], dtype=float)
        )
        w = doc["weights"]
        clf.weight_report_ = FeatureWeightReport(
            names=tuple(w["names"]),
            mi_label=np.asarray(w["mi_label"], dtype=float),
            avg_pairwise_mi=np.asarray(w["avg_pairwise_mi"], dtype=float),
            ci=np.asarray(w["ci"], dtype=float),
            raw=np.asarray(w["raw"], dtype=float),
            normalized=np.asarray(w["normalized"], dtype=float),
        )
        clf.feature_weights_ = clf.weight_report_.normalized
        clf._build_linear_form()
        label_names = tuple(str(t) for t in doc["label_mapping"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed model document: {exc}") from None
    if len(label_names) != K:
        raise ModelFormatError("label_mapping length does not match class_count")
    return ModelBundle(clf=clf, schema=schema, label_names=label_names)


def save_model(path: str | os.PathLike, bundle: ModelBundle) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(bundle), fh, indent=1)
        fh.write("\n")


def load_model(path: str | os.PathLike) -> ModelBundle:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"model file is not valid JSON: {exc}") from None
    return model_from_dict(doc)
