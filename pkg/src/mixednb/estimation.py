"""Parameter estimation with double truncation.

Every probability estimate that later enters a logarithm or an MI ratio is
clamped into [xi, 1 - xi] so that exact 0/1 frequencies cannot blow up the
log-domain scoring. Two truncation modes exist for priors and response
probabilities:

* ``CLAMP_ALL`` (default): clamp every per-class MLE into the band, then
  renormalize priors to sum 1. Preserves each class's own MLE.
* ``LITERAL_COMPLEMENT``: the largest class gets 1 minus the sum of the
  others' clamped values. For K > 2 the complement can leave [0, 1], so the
  result is clamped post hoc.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    ClassTooSmallError,
    InvalidParameterError,
    LengthMismatchError,
    NonBinaryValueError,
)

DEFAULT_XI = 1e-6
DEFAULT_SIGMA_FLOOR = 1e-9


class TruncationMode(Enum):
    CLAMP_ALL = "clamp-all"
    LITERAL_COMPLEMENT = "literal"


@dataclass(frozen=True)
class TruncationConfig:
    xi: float = DEFAULT_XI
    mode: TruncationMode = TruncationMode.CLAMP_ALL

    def __post_init__(self):
        if not 0.0 < self.xi < 0.5:
            raise InvalidParameterError(f"xi must be in (0, 0.5), got {self.xi}")


def truncate(p, xi: float):
    """Clamp probability estimate(s) into [xi, 1 - xi]."""
    return np.clip(p, xi, 1.0 - xi)


def class_counts(y: np.ndarray, n_classes: int) -> np.ndarray:
    y = np.asarray(y, dtype=int)
    return np.bincount(y, minlength=n_classes + 1)[1:]


def estimate_priors(y: np.ndarray, n_classes: int, cfg: TruncationConfig) -> np.ndarray:
    """Class priors n_k / n, double-truncated, summing to 1."""
    if n_classes < 1:
        raise InvalidParameterError("need at least one class")
    counts = class_counts(y, n_classes)
    n = counts.sum()
    if n == 0:
        raise InvalidParameterError("no labels given")
    raw = counts / n
    if cfg.mode is TruncationMode.CLAMP_ALL:
        p = truncate(raw, cfg.xi)
        return p / p.sum()
    k_max = int(np.argmax(counts))
    p = truncate(raw, cfg.xi)
    p[k_max] = 1.0 - (p.sum() - p[k_max])
    p = truncate(p, cfg.xi)
    return p / p.sum()


def estimate_bernoulli(
    column: np.ndarray, y: np.ndarray, n_classes: int, cfg: TruncationConfig
) -> np.ndarray:
    """Per-class response probability P(x=1 | class k), double-truncated."""
    column = np.asarray(column, dtype=float)
    if not np.all((column == 0.0) | (column == 1.0)):
        raise NonBinaryValueError("column is not two-valued")
    counts = class_counts(y, n_classes)
    if np.any(counts < 1):
        raise ClassTooSmallError("every class needs at least one sample")
    raw = np.array([column[np.asarray(y) == k + 1].mean() for k in range(n_classes)])
    if cfg.mode is TruncationMode.CLAMP_ALL:
        return truncate(raw, cfg.xi)
    k_max = int(np.argmax(raw))
    theta = truncate(raw, cfg.xi)
    theta[k_max] = 1.0 - (theta.sum() - theta[k_max])
    return truncate(theta, cfg.xi)


def estimate_gaussian(
    column: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    sigma_floor: float = DEFAULT_SIGMA_FLOOR,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-class mean and Bessel-corrected standard deviation.

    The std is floored at ``sigma_floor`` so a constant class cannot produce
    an infinite log-density.
    """
    column = np.asarray(column, dtype=float)
    y = np.asarray(y, dtype=int)
    mu = np.empty(n_classes)
    sigma = np.empty(n_classes)
    for k in range(n_classes):
        vals = column[y == k + 1]
        if vals.size < 2:
            raise ClassTooSmallError(f"class {k + 1} has {vals.size} samples, need >= 2")
        mu[k] = vals.mean()
        sigma[k] = np.sqrt(((vals - mu[k]) ** 2).sum() / (vals.size - 1))
    return mu, np.maximum(sigma, sigma_floor)


def estimate_marginal(column: np.ndarray, xi: float = DEFAULT_XI) -> tuple[float, float]:
    """(P(x=1), P(x=0)) of a binary column, truncated then renormalized."""
    column = np.asarray(column, dtype=float)
    if not np.all((column == 0.0) | (column == 1.0)):
        raise NonBinaryValueError("column is not two-valued")
    p1 = truncate(column.mean(), xi)
    p0 = truncate(1.0 - column.mean(), xi)
    s = p1 + p0
    return float(p1 / s), float(p0 / s)


@dataclass(frozen=True)
class BinaryJoint:
    """Joint distribution of two binary columns, cell (a, b) = P(x_j=a, x_j'=b)."""

    p11: float
    p01: float
    p00: float
    p10: float
    phi_hat: float
    phi_prime_hat: float

    def table(self) -> np.ndarray:
        """2x2 array indexed [a, b] for values of (x_j, x_j')."""
        return np.array([[self.p00, self.p01], [self.p10, self.p11]])


def estimate_joint(
    col_j: np.ndarray,
    col_jprime: np.ndarray,
    xi: float = DEFAULT_XI,
    truncated: bool = True,
) -> BinaryJoint:
    """Joint of two binary columns via the conditional-MLE factorization.

    phi = P(x_j=1 | x_j'=1) and phi' = P(x_j=0 | x_j'=0) are estimated in
    closed form; each cell is the (truncated) marginal of x_j' times the
    (truncated) conditional. When a conditional's denominator is empty the
    truncated marginal of x_j stands in, i.e. the independence product —
    no data constrains the conditional, so take the max-entropy completion.

    With ``truncated=False`` the raw estimates are used; the cells then equal
    the contingency-table frequencies count(a, b) / n whenever both
    denominators are nonzero.
    """
    xj = np.asarray(col_j, dtype=float)
    xp = np.asarray(col_jprime, dtype=float)
    if xj.shape != xp.shape:
        raise LengthMismatchError("columns have different lengths")
    for col in (xj, xp):
        if not np.all((col == 0.0) | (col == 1.0)):
            raise NonBinaryValueError("column is not two-valued")
    n = xj.size
    s_j = xj.sum()
    s_p = xp.sum()
    s_both = (xj * xp).sum()

    if truncated:
        m1, m0 = estimate_marginal(xp, xi)
        mj1 = truncate(s_j / n, xi)
        mj0 = truncate(1.0 - s_j / n, xi)
    else:
        m1, m0 = s_p / n, 1.0 - s_p / n
        mj1, mj0 = s_j / n, 1.0 - s_j / n

    phi = s_both / s_p if s_p > 0 else mj1
    phi_prime = (n + s_both - (s_j + s_p)) / (n - s_p) if s_p < n else mj0
    if truncated:
        phi = float(truncate(phi, xi))
        phi_prime = float(truncate(phi_prime, xi))

    p11 = m1 * phi
    p01 = m1 * (1.0 - phi)
    p00 = m0 * phi_prime
    p10 = m0 * (1.0 - phi_prime)
    if truncated:
        p11, p01, p00, p10 = (float(truncate(c, xi)) for c in (p11, p01, p00, p10))
    return BinaryJoint(
        p11=float(p11), p01=float(p01), p00=float(p00), p10=float(p10),
        phi_hat=float(phi), phi_prime_hat=float(phi_prime),
    )
