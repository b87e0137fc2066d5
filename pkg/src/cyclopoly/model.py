"""Core value types shared across the package.

Everything here is an immutable value; arrays handed out are read-only views.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np


class DataError(ValueError):
    """Invalid input data. Carries the offending row/column when known."""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message)
        self.row = row
        self.column = column


class Scheme(str, enum.Enum):
    ABBC = "abbc"
    ABCD = "abcd"


class Strategy(str, enum.Enum):
    INTRINSIC = "intrinsic"
    GEOMETRIC = "geometric"
    ANGULAR = "angular"
    STATISTICAL = "statistical"


class Transform(str, enum.Enum):
    LINEAR = "linear"
    LOG10 = "log"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DataVector:
    components: tuple[float, ...]

    def __post_init__(self):
        comps = tuple(float(c) for c in self.components)
        if len(comps) < 2:
            raise DataError(f"data vector needs at least 2 components, got {len(comps)}")
        for i, c in enumerate(comps):
            if not math.isfinite(c):
                raise DataError(f"non-finite component {c!r} at column {i}", column=i)
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def as_array(self) -> np.ndarray:
        return _frozen(self.components)


@dataclass(frozen=True)
class Dataset:
    """Rows of equal-length real vectors, with optional class labels.

    Construction only normalizes types; call :func:`validate_dataset` to check
    the invariants (it reports the first offending row).
    """

    rows: tuple[tuple[float, ...], ...]
    labels: Optional[tuple[str, ...]] = None
    attribute_names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        rows = tuple(
            tuple(float(c) for c in (r.components if isinstance(r, DataVector) else r))
            for r in self.rows
        )
        object.__setattr__(self, "rows", rows)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        if self.attribute_names is not None:
            object.__setattr__(self, "attribute_names", tuple(str(s) for s in self.attribute_names))

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def vectors(self) -> tuple[DataVector, ...]:
        return tuple(DataVector(r) for r in self.rows)

    @property
    def array(self) -> np.ndarray:
        return _frozen(self.rows)

    @property
    def classes(self) -> tuple[str, ...]:
        """Distinct labels in order of first appearance."""
        if self.labels is None:
            return ()
        return tuple(dict.fromkeys(self.labels))

    def with_rows(self, rows: Iterable[Sequence[float]]) -> "Dataset":
        return Dataset(tuple(tuple(r) for r in rows), self.labels, self.attribute_names)


def validate_dataset(raw: Dataset) -> Dataset:
    """Return ``raw`` unchanged if every invariant holds, else raise DataError."""
    if len(raw) == 0:
        raise DataError("dataset is empty")
    n = len(raw.rows[0])
    if n < 2:
        raise DataError(f"dimension {n} < 2 at row 0", row=0)
    for i, row in enumerate(raw.rows):
        if len(row) != n:
            raise DataError(f"dimension mismatch at row {i}: expected {n}, got {len(row)}", row=i)
        for j, c in enumerate(row):
            if not math.isfinite(c):
                raise DataError(f"non-finite value {c!r} at row {i}, column {j}", row=i, column=j)
    if raw.labels is not None and len(raw.labels) != len(raw):
        raise DataError(f"label count {len(raw.labels)} does not match row count {len(raw)}")
    if raw.attribute_names is not None and len(raw.attribute_names) != n:
        raise DataError(f"{len(raw.attribute_names)} attribute names for dimension {n}")
    return raw


def rescale_minmax(ds: Dataset) -> Dataset:
    """Map each attribute to [0, 1]; constant attributes become 0."""
    a = np.asarray(ds.array)
    lo = a.min(axis=0)
    span = a.max(axis=0) - lo
    span[span == 0] = 1.0
    return ds.with_rows(((a - lo) / span).tolist())


@dataclass(frozen=True, eq=False)
class CyclicPolygon:
    vertices: np.ndarray
    scheme: Scheme
    source_dimension: int

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=np.float64).reshape(-1, 2)
        if not np.all(np.isfinite(v)):
            raise DataError("polygon has non-finite coordinates")
        object.__setattr__(self, "vertices", _frozen(v))
        object.__setattr__(self, "scheme", Scheme(self.scheme))

    @property
    def k(self) -> int:
        return len(self.vertices)

    def transformed(self, scale: float, about: Sequence[float], to: Sequence[float]) -> "CyclicPolygon":
        """Scale about ``about`` and then move ``about`` onto ``to``."""
        about = np.asarray(about, dtype=np.float64)
        to = np.asarray(to, dtype=np.float64)
        return CyclicPolygon((self.vertices - about) * scale + to, self.scheme, self.source_dimension)


@dataclass(frozen=True)
class ScaleSpec:
    transform: Transform
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        object.__setattr__(self, "transform", Transform(self.transform))
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError(f"empty scale domain x=[{self.x_min}, {self.x_max}] y=[{self.y_min}, {self.y_max}]")
        if self.transform is Transform.LOG10 and (self.x_min <= 0 or self.y_min <= 0):
            raise ValueError("log10 scale needs positive lower bounds")


@dataclass(frozen=True)
class GlyphEntry:
    centroid: tuple[float, float]
    polygon: CyclicPolygon


@dataclass(frozen=True)
class GlyphLayout:
    entries: tuple[GlyphEntry, ...]
    strategy: Strategy
    scale_factor: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        if not self.scale_factor > 0:
            raise ValueError("scale_factor must be positive")
        for i, e in enumerate(self.entries):
            m = e.polygon.vertices.mean(axis=0)
            if abs(m[0] - e.centroid[0]) > 1e-9 * max(1.0, abs(m[0])) or \
                    abs(m[1] - e.centroid[1]) > 1e-9 * max(1.0, abs(m[1])):
                raise ValueError(f"glyph {i} is not centred on its centroid")

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def centroids(self) -> np.ndarray:
        return _frozen([e.centroid for e in self.entries]).reshape(-1, 2)


@dataclass(frozen=True)
class ClusterEvalReport:
    """Scores of one 2D embedding against ground-truth classes.

    ``jaccard`` is the matched-label score (k-means clusters mapped one-to-one
    onto classes, then the fraction of agreeing items); ``jaccard_pairs`` is the
    pair-counting partition similarity. ``silhouette`` uses the true labels,
    ``silhouette_kmeans`` the k-means assignment.
    """

    jaccard: float
    silhouette: float
    kmeans_labels: tuple[int, ...]
    k: int
    restarts: int
    seed: int
    jaccard_pairs: float = float("nan")
    silhouette_kmeans: float = float("nan")
    wcss: float = float("nan")
    empty_clusters: int = 0
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.jaccard <= 1.0:
            raise ValueError(f"jaccard {self.jaccard} outside [0, 1]")
        if not -1.0 <= self.silhouette <= 1.0:
            raise ValueError(f"silhouette {self.silhouette} outside [-1, 1]")
        if len(set(self.kmeans_labels)) > self.k:
            raise ValueError("more cluster labels than k")

    def to_dict(self) -> dict:
        return {
            "jaccard": self.jaccard,
            "jaccard_pairs": self.jaccard_pairs,
            "silhouette": self.silhouette,
            "silhouette_kmeans": self.silhouette_kmeans,
            "k": self.k,
            "restarts": self.restarts,
            "seed": self.seed,
            "wcss": self.wcss,
            "empty_clusters": self.empty_clusters,
            "config": dict(self.config),
            "kmeans_labels": list(self.kmeans_labels),
        }
