import json
import math

import numpy as np
import pytest

from fhsmooth.cli import main
from fhsmooth.copulas import CopulaSpec, copula_density, copula_values, smoothed_value
from fhsmooth.geometry import SquarePoint
from fhsmooth.radius import gaussian_band_radius

GAUSS_JSON = '{"kind":"gaussian_band","d":1.0}'
CONST_JSON = '{"kind":"constant","r0":0.2}'


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_matches_library(capsys):
    code, out, _ = run(
        capsys, "eval", "--copula", "mbar", "--radius", GAUSS_JSON,
        "--u", "0.5", "--v", "0.5",
    )
    assert code == 0
    spec = CopulaSpec("smoothed_upper", gaussian_band_radius(1.0))
    want = smoothed_value(spec, SquarePoint(0.5, 0.5))
    assert abs(float(out) - want) <= math.ulp(want)


def test_eval_repeat_is_byte_identical(capsys):
    argv = ["eval", "--copula", "mbar", "--radius", GAUSS_JSON, "--u", "0.5", "--v", "0.5"]
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


def test_eval_sharp_bounds(capsys):
    code, out, _ = run(capsys, "eval", "--copula", "m", "--u", "0.3", "--v", "0.5")
    assert code == 0 and float(out) == 0.3
    code, out, _ = run(capsys, "eval", "--copula", "w", "--u", "0.3", "--v", "0.5")
    assert code == 0 and float(out) == 0.0


def test_density_command(capsys):
    code, out, _ = run(
        capsys, "density", "--copula", "mbar", "--radius", CONST_JSON,
        "--u", "0.5", "--v", "0.5",
    )
    assert code == 0
    assert float(out) == pytest.approx(math.sqrt(2) / (math.pi * 0.2), abs=1e-13)


def test_validate_command_fail_path(capsys):
    code, out, _ = run(
        capsys, "validate", "--copula", "mbar", "--radius", CONST_JSON,
        "--grid-n", "64",
    )
    assert code == 1
    report = json.loads(out)
    assert report["containment_pass"] is False
    assert report["quadratic_pass"] is True
    assert report["verdict"] is False


def test_validate_command_pass_path(capsys):
    code, out, _ = run(
        capsys, "validate", "--copula", "mbar", "--radius", GAUSS_JSON,
        "--grid-n", "32",
    )
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_check_command(capsys):
    code, out, _ = run(capsys, "check", "--copula", "m", "--grid-n", "64")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] is True
    assert report["min_density"] is None


def test_grid_command_round_trips(capsys, tmp_path):
    out_path = tmp_path / "grid.csv"
    code, out, _ = run(
        capsys, "grid", "--copula", "mbar", "--radius", GAUSS_JSON,
        "--grid-n", "8", "--out", str(out_path),
    )
    assert code == 0 and out == ""
    lines = out_path.read_text().strip().split("\n")
    assert lines[0] == "u,v,value,density"
    assert len(lines) == 8 * 8 + 1
    data = np.array([[float(x) for x in line.split(",")] for line in lines[1:]])
    spec = CopulaSpec("smoothed_upper", gaussian_band_radius(1.0))
    want_v = copula_values(spec, data[:, 0], data[:, 1])
    want_d = copula_density(spec, data[:, 0], data[:, 1])
    assert np.array_equal(data[:, 2], want_v)
    assert np.array_equal(data[:, 3], want_d)


def test_sample_command_deterministic(capsys):
    argv = [
        "sample", "--copula", "mbar", "--radius", GAUSS_JSON,
        "--n", "50", "--seed", "9",
    ]
    code, out1, _ = run(capsys, *argv)
    assert code == 0
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2
    assert out1.startswith("u,v\n")
    assert len(out1.strip().split("\n")) == 51


def test_sample_gaussian_output(capsys):
    code, out, _ = run(
        capsys, "sample", "--copula", "mbar", "--radius", GAUSS_JSON,
        "--n", "10", "--seed", "2", "--gaussian",
    )
    assert code == 0
    assert out.startswith("x,y\n")
    rows = [line.split(",") for line in out.strip().split("\n")[1:]]
    gaps = [abs(float(y) - float(x)) for x, y in rows]
    assert max(gaps) <= 1.0 + 1e-6


def test_band_command(capsys):
    code, out, _ = run(
        capsys, "band", "--copula", "mbar",
        "--radius", '{"kind":"product","p":[0.25,0,-0.2],"epsilon":0.3}',
        "--w", "0.0",
    )
    assert code == 0
    band = json.loads(out)
    s = 0.3 * math.sqrt(2) * 0.25
    assert band["lower"] == pytest.approx(-0.25 / (1 + s), abs=1e-14)
    assert band["upper"] == pytest.approx(0.25 / (1 - s), abs=1e-14)
    assert band["kappa"] == pytest.approx((1 + s) / (1 - s), abs=1e-13)


def test_radius_from_file(capsys, tmp_path):
    path = tmp_path / "model.json"
    path.write_text(GAUSS_JSON)
    code, out, _ = run(
        capsys, "eval", "--copula", "mbar", "--radius", str(path),
        "--u", "0.5", "--v", "0.5",
    )
    assert code == 0
    code2, out2, _ = run(
        capsys, "eval", "--copula", "mbar", "--radius", GAUSS_JSON,
        "--u", "0.5", "--v", "0.5",
    )
    assert out == out2


def test_usage_errors(capsys):
    assert run(capsys, "eval", "--copula", "mbar", "--u", "0.5", "--v", "0.5")[0] == 2
    assert run(capsys, "eval", "--copula", "m", "--radius", CONST_JSON,
               "--u", "0.5", "--v", "0.5")[0] == 2
    assert run(capsys, "density", "--copula", "m", "--u", "0.5", "--v", "0.5")[0] == 2
    assert run(capsys, "band", "--copula", "wbar", "--radius", GAUSS_JSON)[0] == 2
    assert run(capsys, "nope")[0] == 2
    assert run(capsys, "eval", "--copula", "mbar", "--radius", "/no/such/file.json",
               "--u", "0.5", "--v", "0.5")[0] == 2
    assert run(capsys, "eval", "--copula", "mbar", "--radius", '{"kind":"bogus"}',
               "--u", "0.5", "--v", "0.5")[0] == 2


def test_sample_rejects_invalid_model(capsys):
    code, _, err = run(
        capsys, "sample", "--copula", "mbar", "--radius", CONST_JSON, "--n", "5",
    )
    assert code == 1
    assert "validation" in err


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert out.startswith("usage: fhsmooth")
