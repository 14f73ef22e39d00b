"""Statistical verification harness.

Two independent checks of the machinery:

* Arcsine law: clipping a correlated bivariate normal pair at the sample
  means yields binary variables whose Pearson correlation converges to
  (2/pi) * arcsin(rho). Monte-Carlo check of the clipping construction.
* Conditional-MLE oracle: the closed-form joint estimates for binary pairs
  must coincide with raw contingency-table frequencies whenever both
  conditional denominators are nonzero. Algebraic identity, checked to
  machine precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateColumnError, InvalidParameterError
from .estimation import estimate_joint


@dataclass(frozen=True)
class ArcsineCheckResult:
    rho: float
    empirical_binary_corr: float
    predicted: float
    abs_error: float
    sample_size: int


def arcsine_check(rho: float, n: int = 200_000, seed: int = 0) -> ArcsineCheckResult:
    """Compare the empirical binary correlation after mean-clipping against
    the (2/pi) arcsin(rho) prediction."""
    if not -1.0 < rho < 1.0:
        raise InvalidParameterError(f"rho must be in (-1, 1), got {rho}")
    if n < 1000:
        raise InvalidParameterError("need n >= 1000 for a meaningful check")
    rng = np.random.default_rng(seed)
    z1 = rng.standard_normal(n)
    z2 = rng.standard_normal(n)
    x = z1
    xp = rho * z1 + np.sqrt(1.0 - rho * rho) * z2
    bx = (x > x.mean()).astype(float)
    bxp = (xp > xp.mean()).astype(float)
    empirical = float(np.corrcoef(bx, bxp)[0, 1])
    predicted = float(2.0 / np.pi * np.arcsin(rho))
    return ArcsineCheckResult(
        rho=rho,
        empirical_binary_corr=empirical,
        predicted=predicted,
        abs_error=abs(empirical - predicted),
        sample_size=n,
    )


def joint_estimator_oracle(col_j, col_jprime) -> float:
    """Max |closed-form joint - contingency frequency| over the four cells."""
    xj = np.asarray(col_j, dtype=float)
    xp = np.asarray(col_jprime, dtype=float)
    s_p = xp.sum()
    if s_p == 0 or s_p == xp.size:
        raise DegenerateColumnError("conditioning column is constant")
    joint = estimate_joint(xj, xp, truncated=False)
    n = xj.size
    counts = {
        (1, 1): np.sum((xj == 1) & (xp == 1)) / n,
        (0, 1): np.sum((xj == 0) & (xp == 1)) / n,
        (0, 0): np.sum((xj == 0) & (xp == 0)) / n,
        (1, 0): np.sum((xj == 1) & (xp == 0)) / n,
    }
    estimates = {
        (1, 1): joint.p11,
        (0, 1): joint.p01,
        (0, 0): joint.p00,
        (1, 0): joint.p10,
    }
    return max(abs(estimates[cell] - counts[cell]) for cell in counts)


def run_arcsine_suite(
    rhos=(-0.9, -0.5, 0.0, 0.5, 0.9),
    n: int = 200_000,
    seed: int = 0,
    tolerance: float = 0.02,
) -> list[tuple[ArcsineCheckResult, bool]]:
    results = []
    for i, rho in enumerate(rhos):
        res = arcsine_check(rho, n=n, seed=seed + i)
        results.append((res, res.abs_error < tolerance))
    return results


def run_joint_oracle_suite(
    n_pairs: int = 100,
    n: int = 50,
    seed: int = 0,
    tolerance: float = 1e-12,
) -> tuple[float, bool]:
    """Max deviation over random nondegenerate binary pairs."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    done = 0
    while done < n_pairs:
        xj = (rng.random(n) < rng.random()).astype(float)
        xp = (rng.random(n) < rng.random()).astype(float)
        if xp.sum() in (0, n):
            continue
        worst = max(worst, joint_estimator_oracle(xj, xp))
        done += 1
    return worst, worst <= tolerance
