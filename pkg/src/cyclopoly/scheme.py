"""Cyclic pair selection: n-D vector -> sequence of 2D vertices."""
from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from .model import CyclicPolygon, DataVector, Scheme

VectorLike = Union[DataVector, Sequence[float], np.ndarray]


def _as_vector(d: VectorLike) -> DataVector:
    return d if isinstance(d, DataVector) else DataVector(tuple(d))


def select_abbc(d: VectorLike) -> CyclicPolygon:
    """Overlapping pairs: vertex j is (d[j], d[j+1 mod n]); k = n."""
    a = _as_vector(d).as_array()
    return CyclicPolygon(np.column_stack([a, np.roll(a, -1)]), Scheme.ABBC, len(a))


def select_abcd(d: VectorLike) -> CyclicPolygon:
    """Disjoint pairs: vertex j is (d[2j], d[2j+1 mod n]); k = ceil(n/2).

    For odd n the last vertex reuses d[0] as its y coordinate.
    """
    a = _as_vector(d).as_array()
    n = len(a)
    idx = np.arange(0, n, 2)
    return CyclicPolygon(np.column_stack([a[idx], a[(idx + 1) % n]]), Scheme.ABCD, n)


def select(d: VectorLike, scheme: Union[Scheme, str]) -> CyclicPolygon:
    return select_abbc(d) if Scheme(scheme) is Scheme.ABBC else select_abcd(d)


def cyclic_shift(d: VectorLike, l: int) -> DataVector:
    """(d[l mod n], ..., d[n-1+l mod n])."""
    v = _as_vector(d)
    s = l % v.n
    return DataVector(v.components[s:] + v.components[:s])
