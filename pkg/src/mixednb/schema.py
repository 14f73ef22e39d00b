"""Data model for mixed binary/continuous labeled datasets and CSV ingestion.

The CSV dialect is deliberately small: UTF-8, comma separated, first row
header, ``.`` decimal separator, no quoting. Lines starting with ``#`` are
treated as comments and skipped (the simulator writes a ``# seed=`` line).
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    EmptyInputError,
    InvalidParameterError,
    MalformedNumberError,
    MissingColumnError,
    NonBinaryValueError,
)


class VariableKind(Enum):
    TWO_VALUED = "twovalued"
    CONTINUOUS = "continuous"

    @classmethod
    def parse(cls, token: str) -> "VariableKind":
        t = token.strip().lower().replace("-", "").replace("_", "")
        if t in ("twovalued", "binary", "twovalue"):
            return cls.TWO_VALUED
        if t in ("continuous", "cont"):
            return cls.CONTINUOUS
        raise InvalidParameterError(f"unknown variable kind: {token!r}")


@dataclass(frozen=True)
class VariableSpec:
    name: str
    kind: VariableKind

    def __post_init__(self):
        if not self.name:
            raise InvalidParameterError("variable name must be nonempty")


@dataclass(frozen=True)
class DatasetSchema:
    variables: tuple[VariableSpec, ...]
    label_name: str = "label"

    def __post_init__(self):
        if len(self.variables) == 0:
            raise InvalidParameterError("schema needs at least one variable")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise InvalidParameterError("duplicate variable names in schema")
        if self.label_name in names:
            raise InvalidParameterError("label column clashes with a variable name")

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.variables]

    @property
    def p(self) -> int:
        return len(self.variables)

    def kind_indices(self) -> tuple[list[int], list[int]]:
        """(continuous indices, two-valued indices), both in column order."""
        cont = [j for j, v in enumerate(self.variables) if v.kind is VariableKind.CONTINUOUS]
        two = [j for j, v in enumerate(self.variables) if v.kind is VariableKind.TWO_VALUED]
        return cont, two


@dataclass(frozen=True)
class Dataset:
    """Validated n x p matrix plus 1-based integer class labels.

    ``label_names`` maps class index k (1-based) to the original label token,
    in order of first appearance during parsing.
    """

    schema: DatasetSchema
    X: np.ndarray
    y: np.ndarray
    label_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=int)
        if X.ndim != 2 or X.shape[1] != self.schema.p:
            raise InvalidParameterError("X shape does not match schema")
        if X.shape[0] == 0:
            raise EmptyInputError("dataset has no rows")
        if y.shape != (X.shape[0],):
            raise InvalidParameterError("labels length does not match rows")
        if not np.all(np.isfinite(X)):
            raise MalformedNumberError("non-finite value in data matrix")
        _, two = self.schema.kind_indices()
        for j in two:
            col = X[:, j]
            if not np.all((col == 0.0) | (col == 1.0)):
                name = self.schema.variables[j].name
                raise NonBinaryValueError(f"column {name!r} contains a value other than 0/1")
        classes = np.unique(y)
        if classes[0] < 1 or not np.array_equal(classes, np.arange(1, classes[-1] + 1)):
            raise InvalidParameterError("labels must be contiguous integers starting at 1")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        if not self.label_names:
            object.__setattr__(
                self, "label_names", tuple(str(k) for k in range(1, classes[-1] + 1))
            )

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def n_classes(self) -> int:
        return int(self.y.max())

    def split_by_kind(self) -> tuple[list[int], list[int]]:
        return self.schema.kind_indices()

    def to_csv(self, comment: str | None = None) -> str:
        """Serialize in the package CSV dialect; round-trips exactly."""
        out = io.StringIO()
        if comment:
            out.write(f"# {comment}\n")
        out.write(",".join(self.schema.names + [self.schema.label_name]) + "\n")
        for i in range(self.n):
            fields = [_format_value(v) for v in self.X[i]]
            fields.append(self.label_names[self.y[i] - 1])
            out.write(",".join(fields) + "\n")
        return out.getvalue()


def _format_value(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(float(v))


def _parse_number(token: str, where: str) -> float:
    try:
        v = float(token)
    except ValueError:
        raise MalformedNumberError(f"cannot parse {token!r} as a number ({where})") from None
    if math.isnan(v) or math.isinf(v):
        raise MalformedNumberError(f"non-finite value {token!r} ({where})")
    return v


def parse_csv(text: str, schema: DatasetSchema) -> Dataset:
    """Parse CSV text against a schema, remapping labels to 1..K.

    Columns are reordered to schema order; extra columns are ignored.
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise EmptyInputError("input is empty")
    header = [h.strip() for h in lines[0].split(",")]
    col_of = {name: idx for idx, name in enumerate(header)}
    for name in schema.names + [schema.label_name]:
        if name not in col_of:
            raise MissingColumnError(f"header lacks column {name!r}")
    body = lines[1:]
    if not body:
        raise EmptyInputError("no data rows after header")

    order = [col_of[name] for name in schema.names]
    label_col = col_of[schema.label_name]
    n = len(body)
    X = np.empty((n, schema.p))
    y = np.empty(n, dtype=int)
    label_ids: dict[str, int] = {}
    for i, line in enumerate(body):
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != len(header):
            raise MalformedNumberError(f"row {i + 1} has {len(fields)} fields, expected {len(header)}")
        for j, src in enumerate(order):
            X[i, j] = _parse_number(fields[src], f"row {i + 1}, column {schema.names[j]!r}")
        tok = fields[label_col]
        if tok not in label_ids:
            label_ids[tok] = len(label_ids) + 1
        y[i] = label_ids[tok]

    names = tuple(sorted(label_ids, key=label_ids.get))
    return Dataset(schema=schema, X=X, y=y, label_names=names)


def parse_schema_file(text: str) -> DatasetSchema:
    """Parse a sidecar schema file: one ``name,kind`` line per variable.

    An optional last line ``<name>,label`` overrides the label column name.
    """
    variables: list[VariableSpec] = []
    label_name = "label"
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise EmptyInputError("schema file is empty")
    for ln in lines:
        parts = [p.strip() for p in ln.split(",")]
        if len(parts) != 2:
            raise InvalidParameterError(f"bad schema line: {ln!r}")
        name, kind = parts
        if kind.lower() == "label":
            label_name = name
            continue
        variables.append(VariableSpec(name, VariableKind.parse(kind)))
    return DatasetSchema(tuple(variables), label_name=label_name)


def schema_to_text(schema: DatasetSchema) -> str:
    lines = [f"{v.name},{v.kind.value}" for v in schema.variables]
    lines.append(f"{schema.label_name},label")
    return "\n".join(lines) + "\n"


def infer_schema(text: str, label_name: str = "label") -> DatasetSchema:
    """Infer variable kinds from data: a column whose values are all 0/1
    becomes two-valued. Opt-in only; a continuous variable can coincidentally
    be binary in a small sample.
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise EmptyInputError("input is empty")
    header = [h.strip() for h in lines[0].split(",")]
    if label_name not in header:
        raise MissingColumnError(f"header lacks label column {label_name!r}")
    body = lines[1:]
    if not body:
        raise EmptyInputError("no data rows after header")
    feature_names = [h for h in header if h != label_name]
    binary = {name: True for name in feature_names}
    for i, line in enumerate(body):
        fields = [f.strip() for f in line.split(",")]
        for name, tok in zip(header, fields):
            if name == label_name:
                continue
            v = _parse_number(tok, f"row {i + 1}, column {name!r}")
            if v not in (0.0, 1.0):
                binary[name] = False
    variables = tuple(
        VariableSpec(name, VariableKind.TWO_VALUED if binary[name] else VariableKind.CONTINUOUS)
        for name in feature_names
    )
    return DatasetSchema(variables, label_name=label_name)
