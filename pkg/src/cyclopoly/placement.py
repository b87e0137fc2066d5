"""Glyph placement: position each downscaled polygon by a 2D property of its value."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import geometry
from .model import Dataset, GlyphEntry, GlyphLayout, Scheme, Strategy, validate_dataset
from .scheme import select, select_abcd

DEFAULT_SCALE = 0.05


@dataclass(frozen=True)
class PlacementStrategy:
    variant: Strategy
    scheme: Scheme = Scheme.ABCD
    scale_factor: float = DEFAULT_SCALE

    def __post_init__(self):
        object.__setattr__(self, "variant", Strategy(self.variant))
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if not self.scale_factor > 0:
            raise ValueError("scale_factor must be positive")

    def apply(self, ds: Dataset) -> GlyphLayout:
        return place(ds, self.variant, self.scheme, self.scale_factor)


def _layout(polys, centroids, strategy, scale_factor) -> GlyphLayout:
    entries = []
    for poly, c in zip(polys, centroids):
        c = (float(c[0]), float(c[1]))
        glyph = poly.transformed(scale_factor, geometry.vertex_centroid(poly), c)
        entries.append(GlyphEntry(c, glyph))
    return GlyphLayout(tuple(entries), strategy, scale_factor)


def place_intrinsic(ds: Dataset, scheme: Union[Scheme, str] = Scheme.ABCD,
                    scale_factor: float = DEFAULT_SCALE) -> GlyphLayout:
    validate_dataset(ds)
    polys = [select(d, scheme) for d in ds.rows]
    # ab-bc centroids all sit on the diagonal, so both schemes anchor at the ab-cd centroid
    centroids = [geometry.vertex_centroid(select_abcd(d)) for d in ds.rows]
    return _layout(polys, centroids, Strategy.INTRINSIC, scale_factor)


def place_geometric(ds: Dataset, scheme: Union[Scheme, str] = Scheme.ABCD,
                    scale_factor: float = DEFAULT_SCALE) -> GlyphLayout:
    validate_dataset(ds)
    polys = [select(d, scheme) for d in ds.rows]
    centroids = [(abs(geometry.signed_area(p)), geometry.circumference(p)) for p in polys]
    return _layout(polys, centroids, Strategy.GEOMETRIC, scale_factor)


def place_angular(ds: Dataset, scheme: Union[Scheme, str] = Scheme.ABCD,
                  scale_factor: float = DEFAULT_SCALE) -> GlyphLayout:
    validate_dataset(ds)
    polys = [select(d, scheme) for d in ds.rows]
    centroids = [geometry.angle_sums(p) for p in polys]
    return _layout(polys, centroids, Strategy.ANGULAR, scale_factor)


def place_statistical(ds: Dataset, scheme: Union[Scheme, str] = Scheme.ABCD,
                      scale_factor: float = DEFAULT_SCALE) -> GlyphLayout:
    """Centroid = (mean, population std) of the components.

    ``scheme`` only picks the glyph shape; positions do not depend on it.
    """
    validate_dataset(ds)
    a = np.asarray(ds.array)
    centroids = np.column_stack([a.mean(axis=1), a.std(axis=1)])
    polys = [select(d, scheme) for d in ds.rows]
    return _layout(polys, centroids, Strategy.STATISTICAL, scale_factor)


_PLACERS = {
    Strategy.INTRINSIC: place_intrinsic,
    Strategy.GEOMETRIC: place_geometric,
    Strategy.ANGULAR: place_angular,
    Strategy.STATISTICAL: place_statistical,
}


def place(ds: Dataset, strategy: Union[Strategy, str], scheme: Union[Scheme, str] = Scheme.ABCD,
          scale_factor: float = DEFAULT_SCALE) -> GlyphLayout:
    return _PLACERS[Strategy(strategy)](ds, scheme, scale_factor)
