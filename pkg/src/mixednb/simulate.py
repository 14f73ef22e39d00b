"""Seeded synthetic benchmark: 5 Gaussian process variables and 5 binary
status variables under four working conditions (two normal, two faulty).

Each condition draws the continuous columns from per-variable normals and
sets each binary column to a base value with an exact floor(fraction * n)
subset of rows flipped. Training data is normal 1 + fault 1, test data is
normal 2 + fault 2. Everything is determined by the seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .schema import Dataset, DatasetSchema, VariableKind, VariableSpec


@dataclass(frozen=True)
class ConditionSpec:
    name: str
    label: int
    continuous: tuple[tuple[float, float], ...]   # (mean, std) per variable
    twovalued: tuple[tuple[int, float], ...]      # (base value, flip fraction)

    def __post_init__(self):
        if any(std <= 0 for _, std in self.continuous):
            raise InvalidParameterError("stds must be positive")
        if any(not 0.0 <= f <= 1.0 for _, f in self.twovalued):
            raise InvalidParameterError("flip fraction must be in [0, 1]")
        if any(base not in (0, 1) for base, _ in self.twovalued):
            raise InvalidParameterError("base value must be 0 or 1")


@dataclass(frozen=True)
class SimulationPlan:
    conditions: tuple[ConditionSpec, ...]
    samples_per_condition: int = 1500
    seed: int = 0

    def __post_init__(self):
        if self.samples_per_condition < 1:
            raise InvalidParameterError("samples_per_condition must be >= 1")


_NORMAL_BINARY = ((0, 0.30), (1, 0.25), (0, 0.20), (0, 0.15), (1, 0.10))
_FAULT_BINARY = ((1, 0.30), (0, 0.25), (1, 0.20), (1, 0.15), (0, 0.10))


def default_plan(seed: int = 0, samples_per_condition: int = 1500) -> SimulationPlan:
    """The canonical benchmark parameterization."""
    conditions = (
        ConditionSpec(
            "normal1", 1,
            ((0.00, 1.50), (0.00, 1.60), (0.00, 0.80), (0.00, 2.00), (0.00, 1.40)),
            _NORMAL_BINARY,
        ),
        ConditionSpec(
            "fault1", 2,
            ((3.50, 1.00), (4.50, 2.50), (3.20, 1.70), (2.20, 1.80), (0.80, 2.70)),
            _FAULT_BINARY,
        ),
        ConditionSpec(
            "normal2", 1,
            ((0.32, 1.49), (0.28, 1.56), (0.24, 0.88), (0.01, 2.00), (0.00, 1.40)),
            _NORMAL_BINARY,
        ),
        ConditionSpec(
            "fault2", 2,
            ((3.25, 1.25), (4.40, 2.55), (3.12, 1.73), (2.15, 1.75), (0.80, 2.70)),
            _FAULT_BINARY,
        ),
    )
    return SimulationPlan(conditions, samples_per_condition, seed)


def benchmark_schema(plan: SimulationPlan) -> DatasetSchema:
    p1 = len(plan.conditions[0].continuous)
    p2 = len(plan.conditions[0].twovalued)
    variables = tuple(
        VariableSpec(f"x{j + 1}", VariableKind.CONTINUOUS) for j in range(p1)
    ) + tuple(
        VariableSpec(f"x{p1 + j + 1}", VariableKind.TWO_VALUED) for j in range(p2)
    )
    return DatasetSchema(variables)


def _generate_condition(cond: ConditionSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    cols = []
    for mean, std in cond.continuous:
        cols.append(rng.normal(mean, std, size=n))
    for base, frac in cond.twovalued:
        col = np.full(n, float(base))
        n_flip = int(np.floor(frac * n))
        if n_flip:
            idx = rng.choice(n, size=n_flip, replace=False)
            col[idx] = 1.0 - col[idx]
        cols.append(col)
    return np.column_stack(cols)


def generate(plan: SimulationPlan) -> tuple[Dataset, Dataset]:
    """(train, test) datasets; train = conditions 1+2, test = conditions 3+4."""
    rng = np.random.default_rng(plan.seed)
    schema = benchmark_schema(plan)
    n = plan.samples_per_condition
    blocks = [(_generate_condition(c, n, rng), c.label) for c in plan.conditions]

    def assemble(parts):
        X = np.vstack([b for b, _ in parts])
        y = np.concatenate([np.full(b.shape[0], lab, dtype=int) for b, lab in parts])
        return Dataset(schema=schema, X=X, y=y)

    train = assemble(blocks[:2])
    test = assemble(blocks[2:])
    return train, test
