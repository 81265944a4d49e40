import json

import pytest

from tancone.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cone_square(capsys):
    code, out, _ = run(capsys, "cone", "--fixture", "square-at-corner")
    assert code == 0
    assert "arcs [0, 1.57079632679]" in out and "class sector" in out


def test_conv_writes_cone_spec(capsys, tmp_path):
    path = tmp_path / "cone.json"
    code, out, _ = run(capsys, "conv", "--fixture", "real-line", "--out", str(path))
    assert code == 0 and "class line" in out
    assert json.loads(path.read_text())["variant"] == "cone"


def test_dichotomy_geometric(capsys):
    code, out, _ = run(capsys, "dichotomy", "--fixture", "geometric-radial", "--ray", "0")
    assert code == 0 and out.strip() == "violation 0.50"


def test_blowup_writes_csv_and_plot_data(capsys, tmp_path):
    path = tmp_path / "b.csv"
    code, out, _ = run(capsys, "blowup", "--fixture", "annulus", "--depth", "5", "--out", str(path))
    assert code == 0 and out.startswith("diverges")
    assert path.read_text().startswith("t,d_h,bound,ratio\n")
    assert path.with_suffix(".dat").read_text().startswith("# t d_h\n")


def test_equiv_with_two_files(capsys, tmp_path):
    z, y = tmp_path / "z.json", tmp_path / "y.json"
    z.write_text(json.dumps({"variant": "cone", "vertex": [0, 0], "arcs": [[0, 0]]}))
    y.write_text(json.dumps({"variant": "cone", "vertex": [0, 0], "arcs": [[1.5707963267948966, 1.5707963267948966]]}))
    code, out, _ = run(capsys, "equiv", str(z), str(y), "--depth", "4")
    assert code == 0 and out.startswith("not-equivalent")


def test_equiv_defaults_to_the_cone(capsys):
    code, out, _ = run(capsys, "equiv", "--fixture", "parabola-star-region")
    assert code == 0 and out.startswith("equivalent")


def test_porosity_interval_spec(capsys, tmp_path):
    spec = tmp_path / "a.json"
    spec.write_text(json.dumps({"variant": "interval-set", "intervals": [[0, 0]]}))
    code, out, _ = run(capsys, "porosity", "--spec", str(spec))
    assert code == 0 and out.strip() == "porosity 1.000000"


def test_cluster(capsys):
    code, out, _ = run(capsys, "cluster", "--theta-odd", "0", "--theta-even", "3.141592653589793")
    assert code == 0 and out.strip() == "clusters 2 separation 2"


@pytest.mark.parametrize("argv", [
    ["cone"],
    ["cone", "--fixture", "nope"],
    ["cone", "--fixture", "sector", "--q", "1.5"],
    ["blowup", "--fixture", "sector", "--depth", "3"],
    ["blowup", "--fixture", "sector", "--samples", "10"],
    ["frobnicate"],
    ["cone", "--spec", "x.json", "--fixture", "sector"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_schema_errors_exit_3(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"variant": "polygon", "vertices": [[0, 0], [1, 0]]}))
    assert main(["cone", "--spec", str(bad)]) == 3
    bad.write_text("{oops")
    assert main(["cone", "--spec", str(bad)]) == 3
    assert main(["cone", "--spec", str(tmp_path / "missing.json")]) == 3


def test_same_config_gives_identical_csv(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["equiv", "--fixture", "square-at-corner", "--seed", "3", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert all(len(f.split("e")[0].replace(".", "").replace("-", "").lstrip("0")) <= 12
               for line in a.read_text().splitlines()[1:] for f in line.split(","))
