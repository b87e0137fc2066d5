import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclopoly.geometry import vertex_centroid
from cyclopoly.model import Dataset, Scheme, Strategy
from cyclopoly.placement import (PlacementStrategy, place, place_angular, place_geometric, place_intrinsic,
                                 place_statistical)
from cyclopoly.scheme import select, select_abcd

TEASER = Dataset(((5, 6, 7, 8, 9, 10), (9, 8, 7, 6, 5, 4)))

values = st.floats(-1e3, 1e3, allow_nan=False)
datasets = st.tuples(st.integers(2, 10), st.integers(1, 8)).flatmap(
    lambda nm: st.lists(st.lists(values, min_size=nm[0], max_size=nm[0]), min_size=nm[1], max_size=nm[1])
).map(lambda rows: Dataset(rows))


def test_teaser_geometric_abcd():
    lay = place_geometric(TEASER)
    assert lay.entries[0].centroid == pytest.approx((0.0, 8 * math.sqrt(2)))


def test_teaser_statistical_uses_population_std():
    lay = place_statistical(TEASER)
    assert lay.entries[0].centroid == pytest.approx((7.5, math.sqrt(35 / 12)))


def test_teaser_intrinsic_is_abcd_centroid():
    lay = place_intrinsic(TEASER, Scheme.ABBC)
    assert lay.entries[0].centroid == pytest.approx((7.0, 8.0))


def test_angular_k2_tie_break():
    lay = place_angular(Dataset(((1, 2, 3, 5),)))
    assert lay.entries[0].centroid == (2 * math.pi, 0.0)


@settings(max_examples=100, deadline=None)
@given(datasets, st.sampled_from(list(Strategy)), st.sampled_from(list(Scheme)))
def test_one_entry_per_vector_and_similar_glyphs(ds, strategy, scheme):
    lay = place(ds, strategy, scheme)
    assert len(lay) == len(ds)
    for row, e in zip(ds.rows, lay.entries):
        src = select(row, scheme).vertices
        glyph = e.polygon.vertices
        assert np.allclose(glyph.mean(axis=0), e.centroid, rtol=0, atol=1e-9 * max(1.0, np.abs(e.centroid).max()))
        for i, j in itertools.combinations(range(len(src)), 2):
            d_src = np.linalg.norm(src[i] - src[j])
            d_gly = np.linalg.norm(glyph[i] - glyph[j])
            assert d_gly == pytest.approx(0.05 * d_src, rel=1e-9, abs=1e-9 * max(1.0, np.abs(e.centroid).max()))


@settings(max_examples=200)
@given(datasets)
def test_intrinsic_abcd_does_not_drift(ds):
    for row, e in zip(ds.rows, place_intrinsic(ds).entries):
        expect = vertex_centroid(select_abcd(row))
        assert abs(e.centroid[0] - expect[0]) <= 1e-12 * max(1.0, abs(expect[0]))
        assert abs(e.centroid[1] - expect[1]) <= 1e-12 * max(1.0, abs(expect[1]))


@settings(max_examples=200)
@given(datasets)
def test_statistical_ignores_scheme(ds):
    a = place_statistical(ds, Scheme.ABBC).centroids
    b = place_statistical(ds, Scheme.ABCD).centroids
    assert np.array_equal(a, b)


@settings(max_examples=200)
@given(datasets, st.floats(-50, 50))
def test_geometric_abbc_area_translation_invariant(ds, c):
    a0 = place_geometric(ds, Scheme.ABBC).centroids[:, 0]
    a1 = place_geometric(ds.with_rows(np.asarray(ds.array) + c), Scheme.ABBC).centroids[:, 0]
    scale = max(1.0, float(np.abs(ds.array).max()) + abs(c)) ** 2
    assert np.allclose(a0, a1, rtol=0, atol=1e-9 * scale)


def test_strategy_object_and_custom_scale():
    lay = PlacementStrategy("geometric", "abbc", 0.1).apply(TEASER)
    assert lay.scale_factor == 0.1 and lay.strategy is Strategy.GEOMETRIC
    with pytest.raises(ValueError):
        PlacementStrategy("geometric", scale_factor=0)
    with pytest.raises(ValueError):
        PlacementStrategy("nonsense")
