import json
import subprocess
import sys
from pathlib import Path

import pytest

from cyclopoly.cli import main
from oracles import count_class, parse_svg

GOLDEN = Path(__file__).parent / "golden" / "teaser_abbc.svg"


def error_line(capsys):
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1
    return json.loads(err[0])


def test_teaser_pipeline(tmp_path):
    csv, svg = tmp_path / "t.csv", tmp_path / "t.svg"
    assert main(["gen", "teaser", "-o", str(csv)]) == 0
    assert main(["plot", str(csv), "--view", "cpp", "--scheme", "abbc", "--out", str(svg)]) == 0
    assert svg.read_bytes() == GOLDEN.read_bytes()
    assert count_class(parse_svg(svg.read_text()), "polygon") == 2


@pytest.mark.parametrize("view", ["cpp", "pcp", "rc"])
@pytest.mark.parametrize("scale", ["linear", "log"])
def test_plot_views(tmp_path, view, scale):
    out = tmp_path / "o.svg"
    assert main(["plot", "iris", "--view", view, "--scale", scale, "--out", str(out)]) == 0
    assert out.read_text().startswith("<?xml")


def test_log_plot_with_zero_is_data_error(tmp_path, capsys):
    csv = tmp_path / "z.csv"
    csv.write_text("a,b,c\n1,2,3\n0,2,3\n", encoding="utf-8")
    assert main(["plot", str(csv), "--scale", "log", "--out", str(tmp_path / "z.svg")]) == 2
    err = error_line(capsys)
    assert err["error"] == "data" and "rows 1" in err["message"]


def test_rc_with_two_dims_is_data_error(tmp_path, capsys):
    csv = tmp_path / "two.csv"
    csv.write_text("a,b\n1,2\n3,4\n", encoding="utf-8")
    assert main(["plot", str(csv), "--view", "rc", "--out", str(tmp_path / "x.svg")]) == 2
    assert error_line(capsys)["error"] == "data"


@pytest.mark.parametrize("argv", [
    ["plot", "iris"],                                # missing --out
    ["plot", "iris", "--out", "x.svg", "--bogus"],   # unknown flag
    ["place", "iris", "--out", "x.svg"],             # missing --strategy
    ["eval", "iris", "--scheme", "abxy"],            # bad choice
    [],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 1
    assert error_line(capsys)["error"] == "usage"


def test_missing_file_is_data_error(tmp_path, capsys):
    assert main(["plot", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "o.svg")]) == 2
    assert "no such file" in error_line(capsys)["message"]


def test_eval_prints_table_and_json(capsys):
    assert main(["eval", "iris", "--strategy", "geometric", "--scheme", "abcd", "--seed", "7",
                 "--restarts", "10"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    report = json.loads(out[-1])
    assert report["seed"] == 7 and report["restarts"] == 10
    assert report["jaccard"] == pytest.approx(0.92, abs=0.05)
    assert any("silhouette" in line for line in out[:-1])
    assert {"jaccard_pairs", "silhouette_kmeans"} <= report.keys()


def test_eval_is_reproducible(capsys):
    main(["eval", "iris", "--strategy", "statistical"])
    a = capsys.readouterr().out
    main(["eval", "iris", "--strategy", "statistical"])
    assert capsys.readouterr().out == a


def test_eval_external_embedding(tmp_path, capsys):
    coords = tmp_path / "c.csv"
    assert main(["place", "iris", "--strategy", "intrinsic", "--out", str(tmp_path / "p.svg"),
                 "--coords-out", str(coords)]) == 0
    assert main(["eval", "iris", "--embedding", str(coords)]) == 0
    emb = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    main(["eval", "iris", "--strategy", "intrinsic"])
    direct = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert emb["jaccard"] == direct["jaccard"]


def test_eval_embedding_row_mismatch(tmp_path, capsys):
    coords = tmp_path / "c.csv"
    coords.write_text("\n".join(f"{i},{i}" for i in range(149)) + "\n")
    assert main(["eval", "iris", "--embedding", str(coords)]) == 2
    assert "row count 149 ≠ 150" in error_line(capsys)["message"]


def test_eval_unlabeled_is_data_error(tmp_path, capsys):
    csv = tmp_path / "u.csv"
    csv.write_text("1,2,3\n4,5,6\n")
    assert main(["eval", str(csv)]) == 2
    assert error_line(capsys)["error"] == "data"


@pytest.mark.parametrize("kind,extra", [
    ("study", ["--task", "od"]),
    ("study", ["--task", "vc", "--value", "0.2", "--value", "0.8", "--scaling"]),
    ("billiard", ["--trajectories", "2", "--reflections", "4"]),
])
def test_gen_writes_csv_and_metadata(tmp_path, kind, extra):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["gen", kind, "-o", str(a), *extra]) == 0
    assert main(["gen", kind, "-o", str(b), *extra]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.with_suffix(".json").read_text())


def test_gen_invalid_study_combination(tmp_path, capsys):
    assert main(["gen", "study", "--task", "vr", "-o", str(tmp_path / "s.csv")]) == 2
    assert error_line(capsys)["error"] == "data"


def test_place_renders_glyphs(tmp_path):
    out = tmp_path / "g.svg"
    assert main(["place", "wine", "--strategy", "angular", "--data-mode", "minmax", "--out", str(out)]) == 0
    assert count_class(parse_svg(out.read_text()), "glyph") == 178


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "cyclopoly.cli", "plot", "iris"], capture_output=True, text=True)
    assert r.returncode == 1
    assert json.loads(r.stderr.strip())["error"] == "usage"
