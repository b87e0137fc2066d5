"""Measures on cyclic polygons and the polygon <-> parallel-coordinates relations."""
from __future__ import annotations

import math
from typing import Optional, Sequence, Union

import numpy as np

from .model import CyclicPolygon, DataVector, Scheme

PolygonLike = Union[CyclicPolygon, Sequence[Sequence[float]], np.ndarray]

SQRT2 = math.sqrt(2.0)

# edges whose cross product is below this fraction of |a||b| count as collinear
COLLINEAR_RTOL = 1e-12


def _vertices(p: PolygonLike) -> np.ndarray:
    if isinstance(p, CyclicPolygon):
        return p.vertices
    return np.asarray(p, dtype=np.float64).reshape(-1, 2)


def signed_area(p: PolygonLike) -> float:
    """Shoelace area; positive for counter-clockwise winding.

    Self-intersecting polygons get the winding-weighted area, so oppositely
    wound lobes cancel.
    """
    v = _vertices(p)
    if len(v) < 3:
        return 0.0
    x, y = v[:, 0], v[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return 0.5 * float(np.sum(x * yn - xn * y))


def circumference(p: PolygonLike) -> float:
    v = _vertices(p)
    if len(v) < 2:
        return 0.0
    e = np.roll(v, -1, axis=0) - v
    return float(np.sum(np.hypot(e[:, 0], e[:, 1])))


def vertex_centroid(p: PolygonLike) -> tuple[float, float]:
    v = _vertices(p)
    m = v.mean(axis=0)
    return float(m[0]), float(m[1])


def turning_angles(p: PolygonLike) -> np.ndarray:
    """Signed exterior angle at each vertex, in (-pi, pi].

    Anti-parallel edges turn +pi; vertices touching a zero-length edge turn 0.
    Edges collinear up to rounding are treated as exactly collinear.
    """
    v = _vertices(p)
    k = len(v)
    out = np.zeros(k)
    if k < 2:
        return out
    e_in = v - np.roll(v, 1, axis=0)
    e_out = np.roll(v, -1, axis=0) - v
    for j in range(k):
        a, b = e_in[j], e_out[j]
        if not (a.any() and b.any()):
            continue
        cross = a[0] * b[1] - a[1] * b[0]
        dot = a[0] * b[0] + a[1] * b[1]
        if abs(cross) <= COLLINEAR_RTOL * math.hypot(*a) * math.hypot(*b):
            out[j] = math.pi if dot < 0 else 0.0
        else:
            out[j] = math.atan2(cross, dot)
    return out


def angle_sums(p: PolygonLike) -> tuple[float, float]:
    """(sum of counter-clockwise turns, sum of |clockwise turns|), radians."""
    t = turning_angles(p)
    return float(t[t > 0].sum()), float(-t[t < 0].sum())


def diagonal_distance(v: Sequence[float]) -> float:
    """Signed distance to the main diagonal, positive above it."""
    return (float(v[1]) - float(v[0])) / SQRT2


def pcp_segment_slopes(d: Union[DataVector, Sequence[float]]) -> np.ndarray:
    """Slopes of the parallel-coordinates segments at unit axis spacing.

    The last entry is the segment wrapping from the last axis back to the first.
    """
    a = np.asarray(d.components if isinstance(d, DataVector) else d, dtype=np.float64)
    return np.roll(a, -1) - a


def edge_slope(p: CyclicPolygon, j: int) -> Optional[float]:
    """Slope of edge j -> j+1 of an ab-bc polygon; None for a vertical edge."""
    if p.scheme is not Scheme.ABBC:
        raise ValueError("edge_slope is defined for ab-bc polygons only")
    v = p.vertices
    a, b = v[j % p.k], v[(j + 1) % p.k]
    dx = b[0] - a[0]
    if dx == 0.0:
        return None
    return float((b[1] - a[1]) / dx)


def pcp_segment_of_vertex(p: CyclicPolygon, j: int) -> tuple[int, int]:
    """Axis pair (i, i+1 mod n) of the PCP segment that vertex j of ``p`` encodes."""
    n = p.source_dimension
    i = j if p.scheme is Scheme.ABBC else 2 * j
    return i % n, (i + 1) % n
