from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..model import Dataset

ORANGE = (5.0, 6.0, 7.0, 8.0, 9.0, 10.0)

# log-uniform range of the per-dimension factors applied to VR/VC datasets
SCALE_RANGE = (0.1, 100.0)


def gen_teaser() -> Dataset:
    """Two 6-D values: an ascending ramp and its reversal shifted down by one."""
    cyan = tuple(v - 1.0 for v in reversed(ORANGE))
    return Dataset((ORANGE, cyan), ("orange", "cyan"), tuple(f"d{j}" for j in range(6)))


class StudyKind(str, enum.Enum):
    OUTLIER_DETECTION = "od"
    VALUE_RETRIEVAL = "vr"
    VALUE_COMPARISON = "vc"


_INSERT_COUNTS = {
    StudyKind.OUTLIER_DETECTION: (0, 1),
    StudyKind.VALUE_RETRIEVAL: (1,),
    StudyKind.VALUE_COMPARISON: (2,),
}


@dataclass(frozen=True)
class StudyDatasetSpec:
    kind: StudyKind
    n: int = 10
    members: int = 10
    inserted_values: tuple[float, ...] = ()
    per_dimension_scaling: bool = False
    seed: int = 42

    def __post_init__(self):
        object.__setattr__(self, "kind", StudyKind(self.kind))
        object.__setattr__(self, "inserted_values", tuple(float(v) for v in self.inserted_values))
        if not 1 <= self.members <= 10:
            raise ValueError(f"member count {self.members} outside [1, 10]")
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if len(self.inserted_values) not in _INSERT_COUNTS[self.kind]:
            raise ValueError(f"{self.kind.value} takes {_INSERT_COUNTS[self.kind]} inserted values, "
                             f"got {len(self.inserted_values)}")
        if self.kind is StudyKind.OUTLIER_DETECTION:
            if self.per_dimension_scaling:
                raise ValueError("per-dimension scaling applies to vr/vc datasets only")
            if self.inserted_values and not 0.8 <= self.inserted_values[0] <= 1.0:
                raise ValueError("the outlier value must lie in [0.8, 1]")
        if self.kind is StudyKind.VALUE_COMPARISON and self.members * self.n < 2:
            raise ValueError("need two cells to insert two values")


@dataclass(frozen=True)
class StudyMetadata:
    kind: str
    seed: int
    insertions: tuple[dict, ...]   # {"member", "component", "value"} before scaling
    scale_factors: Optional[tuple[float, ...]] = None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "seed": self.seed,
                "insertions": [dict(i) for i in self.insertions],
                "scale_factors": list(self.scale_factors) if self.scale_factors else None}


def gen_study_dataset(spec: StudyDatasetSpec) -> tuple[Dataset, StudyMetadata]:
    """Noise datasets with planted values, for outlier/retrieval/comparison tasks."""
    rng = np.random.default_rng(spec.seed)
    shape = (spec.members, spec.n)
    if spec.kind is StudyKind.OUTLIER_DETECTION:
        data = rng.uniform(0.0, 0.8, size=shape)
        values = list(spec.inserted_values) or [float(rng.uniform(0.8, 1.0))]
    else:
        data = rng.uniform(0.0, 1.0, size=shape)
        values = list(spec.inserted_values)
    cells = rng.choice(spec.members * spec.n, size=len(values), replace=False)
    insertions = []
    for cell, value in zip(cells, values):
        m, c = divmod(int(cell), spec.n)
        data[m, c] = value
        insertions.append({"member": m, "component": c, "value": value})
    factors = None
    if spec.per_dimension_scaling:
        lo, hi = np.log10(SCALE_RANGE)
        f = 10.0 ** rng.uniform(lo, hi, size=spec.n)
        data = data * f
        factors = tuple(float(v) for v in f)
    labels = tuple(f"m{i}" for i in range(spec.members))
    ds = Dataset(tuple(map(tuple, data.tolist())), labels, tuple(f"d{j}" for j in range(spec.n)))
    return ds, StudyMetadata(spec.kind.value, spec.seed, tuple(insertions), factors)
