import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import ellipe

from cyclopoly.datagen import (BilliardConfig, StudyDatasetSpec, gen_billiard, gen_study_dataset, gen_teaser,
                               load_bundled, load_csv, simulate_billiard, write_csv)
from cyclopoly.datagen.billiard import Ellipse, GrazingSeed, simulate_trajectory
from cyclopoly.datagen.csvio import dumps_csv, read_csv
from cyclopoly.model import DataError

# --- csv -------------------------------------------------------------------


def test_bundled_shapes():
    iris, wine = load_bundled("iris"), load_bundled("wine")
    assert (len(iris), iris.n, iris.classes) == (150, 4, ("setosa", "versicolor", "virginica"))
    assert (len(wine), wine.n, len(wine.classes)) == (178, 13, 3)
    assert iris.attribute_names[0] == "sepal_length"


def test_unknown_bundled():
    with pytest.raises(ValueError):
        load_bundled("titanic")


def test_headerless_csv():
    ds = read_csv(io.StringIO("1,2,3\n4,5,6\n"))
    assert ds.rows == ((1.0, 2.0, 3.0), (4.0, 5.0, 6.0)) and ds.labels is None


def test_ragged_row_named():
    with pytest.raises(DataError, match="ragged row 1") as e:
        read_csv(io.StringIO("a,b,class\n1,2,x\n3,y\n"))
    assert e.value.row == 1


def test_non_numeric_cell_named():
    with pytest.raises(DataError, match="row 0.*column 'b'"):
        read_csv(io.StringIO("a,b,class\n1,zz,x\n"))


def test_missing_label_column():
    with pytest.raises(DataError, match="'species' not in header"):
        read_csv(io.StringIO("a,b,class\n1,2,x\n"), label_column="species")


def test_custom_label_column_position():
    ds = read_csv(io.StringIO("kind,a,b\nx,1,2\ny,3,4\n"), label_column="kind")
    assert ds.labels == ("x", "y") and ds.attribute_names == ("a", "b")


@settings(max_examples=100)
@given(st.lists(st.lists(st.floats(-1e9, 1e9), min_size=3, max_size=3), min_size=1, max_size=10))
def test_csv_round_trip_is_exact(rows):
    from cyclopoly.model import Dataset
    ds = Dataset(rows, labels=tuple("ab"[i % 2] for i in range(len(rows))))
    back = read_csv(io.StringIO(dumps_csv(ds)))
    assert back.rows == ds.rows and back.labels == ds.labels


# --- teaser ------------------------------------------------------------------


def test_teaser_values():
    ds = gen_teaser()
    assert ds.rows == ((5, 6, 7, 8, 9, 10), (9, 8, 7, 6, 5, 4))
    assert ds.labels == ("orange", "cyan")


# --- study datasets ------------------------------------------------------------


@pytest.mark.parametrize("seed", range(10))
def test_outlier_dataset_has_one_planted_value(seed):
    ds, meta = gen_study_dataset(StudyDatasetSpec("od", n=10, members=10, seed=seed))
    a = np.asarray(ds.array)
    high = a >= 0.8
    assert high.sum() == 1 and a[high][0] <= 1.0
    assert np.all(a[~high] >= 0) and np.all(a[~high] < 0.8)
    (ins,) = meta.insertions
    assert a[ins["member"], ins["component"]] == ins["value"]


def test_value_retrieval_inserts_exact_value():
    ds, meta = gen_study_dataset(StudyDatasetSpec("vr", inserted_values=(0.42,)))
    assert 0.42 in np.asarray(ds.array)
    assert meta.insertions[0]["value"] == 0.42


def test_value_comparison_uses_distinct_cells():
    ds, meta = gen_study_dataset(StudyDatasetSpec("vc", members=1, n=2, inserted_values=(0.1, 0.9)))
    assert sorted(ds.rows[0]) == [0.1, 0.9]
    assert len({(i["member"], i["component"]) for i in meta.insertions}) == 2


def test_scaling_multiplies_each_dimension():
    plain, _ = gen_study_dataset(StudyDatasetSpec("vr", inserted_values=(0.5,), seed=3))
    scaled, meta = gen_study_dataset(StudyDatasetSpec("vr", inserted_values=(0.5,), seed=3,
                                                      per_dimension_scaling=True))
    f = np.array(meta.scale_factors)
    assert np.all((f >= 0.1) & (f <= 100))
    assert np.allclose(np.asarray(scaled.array), np.asarray(plain.array) * f, rtol=1e-15)


@pytest.mark.parametrize("kw", [
    dict(kind="od", members=0),
    dict(kind="od", members=11),
    dict(kind="od", inserted_values=(0.5,)),
    dict(kind="od", inserted_values=(0.9, 0.95)),
    dict(kind="od", per_dimension_scaling=True),
    dict(kind="vr"),
    dict(kind="vc", inserted_values=(0.3,)),
])
def test_study_spec_contract(kw):
    with pytest.raises(ValueError):
        StudyDatasetSpec(**kw)


@pytest.mark.parametrize("kind,vals", [("od", ()), ("vr", (0.3,)), ("vc", (0.2, 0.7))])
def test_study_generation_deterministic(kind, vals):
    a = gen_study_dataset(StudyDatasetSpec(kind, inserted_values=vals, seed=77))
    b = gen_study_dataset(StudyDatasetSpec(kind, inserted_values=vals, seed=77))
    assert dumps_csv(a[0]) == dumps_csv(b[0])
    assert json.dumps(a[1].to_dict()) == json.dumps(b[1].to_dict())


# --- billiard ------------------------------------------------------------------


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0, 3.7])
@pytest.mark.parametrize("t", [0.1, 1.0, 2.5, math.pi, 5.9, 2 * math.pi])
def test_circle_arclength_closed_form(r, t):
    assert Ellipse(r, r).arclength(t) == pytest.approx(r * t, rel=1e-10)


@pytest.mark.parametrize("a", [1.0, 1.1, 1.2, 3.0])
def test_perimeter_against_complete_elliptic_integral(a):
    e2 = 1 - 1 / a ** 2
    assert Ellipse(a, 1.0).perimeter == pytest.approx(4 * a * ellipe(e2), rel=1e-10)


def test_outward_heading_rejected():
    with pytest.raises(ValueError, match="leaves the table"):
        simulate_trajectory(1.0, 1.0, 0.0, 0.0, 3)


def test_tangent_heading_is_grazing():
    with pytest.raises(GrazingSeed):
        simulate_trajectory(1.0, 1.0, 0.0, 90.0, 3)


def test_grazing_seed_is_reseeded_and_recorded():
    run = simulate_billiard(BilliardConfig(a_values=(1.0,), base_position=0.0, base_heading=90.0,
                                           trajectories_per_cluster=1, reflections=3))
    assert run.adjustments == [{"cluster": 0, "trajectory": 0, "heading_deg": 90.001}]
    assert run.metadata()["adjustments"] == run.adjustments


@pytest.fixture(scope="module")
def default_run():
    return simulate_billiard(BilliardConfig())


def test_default_run_shape(default_run):
    ds = default_run.dataset
    assert (len(ds), ds.n) == (60, 100)
    assert ds.labels == tuple(str(c) for c in range(3) for _ in range(20))
    assert ds.attribute_names[:3] == ("s0", "alpha0", "s1")


def test_bounces_on_boundary(default_run):
    worst = max(Ellipse(t.a, t.b).residual(bn.point) for t in default_run.trajectories for bn in t.bounces)
    assert worst < 1e-9


def test_specular_reflection_law(default_run):
    for t in default_run.trajectories:
        table = Ellipse(t.a, t.b)
        for bn in t.bounces:
            n, tg = table.normal(bn.point), table.tangent(bn.point)
            u, w = bn.incoming, bn.outgoing
            ang_in = math.atan2(abs(u @ tg), abs(u @ n))
            ang_out = math.atan2(abs(w @ tg), abs(w @ n))
            assert abs(ang_in - ang_out) < 1e-9
            assert abs(u @ tg - w @ tg) < 1e-9          # tangential part kept
            assert abs(u @ n + w @ n) < 1e-9            # normal part flipped
            assert w @ n < 0                            # heads back inside


def test_phase_coordinates_in_range(default_run):
    for t in default_run.trajectories:
        for bn in t.bounces:
            assert 0.0 <= bn.arclength < 1.0
            assert 0.0 < bn.angle < math.pi


def test_circle_phase_angle_is_conserved():
    t = simulate_trajectory(1.0, 1.0, 10.0, 145.0, 20)
    angles = [bn.angle for bn in t.bounces]
    assert max(angles) - min(angles) < 1e-9


def test_billiard_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    cfg = BilliardConfig(trajectories_per_cluster=3, reflections=5)
    write_csv(gen_billiard(cfg), a)
    write_csv(gen_billiard(cfg), b)
    assert a.read_bytes() == b.read_bytes()
    assert load_csv(a).rows == gen_billiard(cfg).rows


@pytest.mark.parametrize("kw", [dict(a_values=()), dict(b=0), dict(reflections=0), dict(seed_step=-1)])
def test_billiard_config_validation(kw):
    with pytest.raises(ValueError):
        BilliardConfig(**kw)
