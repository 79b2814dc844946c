import json

import numpy as np
import pytest

from shearconvex.cli import OutputSpec, main
from shearconvex.geometry import verdict_from_increments
from shearconvex.render import render_curve_svg


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_shear_csv(capsys):
    code, out, _ = run(capsys, "shear", "--phi", "H", "--omega", "monomial:N=1",
                       "--eta", "1,0", "--r", "0.5", "--n", "64")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "theta,re_z,im_z,re_f,im_f,re_h,im_h,re_g,im_g"
    assert len(lines) == 65
    row0 = [float(x) for x in lines[1].split(",")]
    # theta = 0, z = 0.5: f0(0.5) = h0 + conj(g0) = 1.5 + 0.5
    assert row0[3] == pytest.approx(2.0, abs=1e-9)


def test_convexity_json_koebe(capsys):
    code, out, _ = run(capsys, "convexity", "--phi", "koebe", "--r", "0.5",
                       "--n", "1024")
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"] == "NON_CONVEX"
    assert rep["total_turning"] == pytest.approx(2 * np.pi, abs=1e-3)


def test_convexity_direction_flag(capsys):
    code, out, _ = run(capsys, "convexity", "--phi", "koebe", "--r", "0.999",
                       "--n", "4096", "--direction", "0.0")
    rep = json.loads(out)
    assert rep["direction"]["passed"] is True


def test_csv_roundtrip_preserves_verdict(tmp_path, capsys):
    csv_path = tmp_path / "curve.csv"
    code, out, _ = run(capsys, "convexity", "--phi", "H", "--omega", "monomial:N=1",
                       "--eta", "1,0", "--r", "0.9", "--n", "1024",
                       "--csv", str(csv_path))
    rep = json.loads(out)
    rows = csv_path.read_text().strip().splitlines()
    assert rows[0] == "theta,re,im,turning_increment"
    data = np.array([[float(v) for v in line.split(",")] for line in rows[1:]])
    re_rep = verdict_from_increments(data[:, 3], data[:, 0])
    assert re_rep.verdict == rep["verdict"]
    assert re_rep.worst_backturn == pytest.approx(rep["worst_backturn"], rel=1e-9)


def test_svg_is_pure_function_of_report(tmp_path, capsys):
    svg_path = tmp_path / "curve.svg"
    code, out, _ = run(capsys, "convexity", "--phi", "H", "--omega", "monomial:N=1",
                       "--eta", "1,0", "--r", "0.99", "--n", "512",
                       "--svg", str(svg_path), "--parabola-overlay")
    rep = json.loads(out)
    rendered = svg_path.read_bytes()
    again = render_curve_svg(rep).encode()
    assert rendered == again
    assert b"<svg" in rendered and b"polygon" in rendered


def test_probe_failure_reports_but_exits_zero(capsys):
    code, out, _ = run(capsys, "probe", "--phi", "H", "--eta", "theta=0",
                       "--family", "explicit:monomial:N=1")
    assert code == 0
    rep = json.loads(out)
    assert rep["summary"] == "FAILURE"
    assert rep["failures"][0]["omega"].startswith("monomial")


def test_probe_seed_echo(capsys):
    code, out, _ = run(capsys, "probe", "--phi", "H", "--eta", "theta=1.5707963267948966",
                       "--family", "blaschke-random:count=2,deg=1,seed=7",
                       "--seed", "9", "--radii", "0.9")
    rep = json.loads(out)
    assert rep["config"]["seed_echo"] == 9
    assert "seed=9" in rep["config"]["family"]


def test_vk_json(capsys):
    code, out, _ = run(capsys, "vk", "--phi", "H", "--k", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["member"] is True
    assert rep["max_value_over_pi"] == pytest.approx(2.0, abs=1e-9)


def test_reproduce_f0_exits_zero(capsys):
    code, out, _ = run(capsys, "reproduce", "--case", "f0")
    assert code == 0
    assert "PASS" in out
    assert "FAIL" not in out


def test_malformed_spec_exits_one(capsys):
    code, _, err = run(capsys, "vk", "--phi", "nonsense", "--k", "2")
    assert code == 1
    assert "error" in err


def test_unknown_case_exits_one(capsys):
    code, _, err = run(capsys, "reproduce", "--case", "bogus")
    assert code == 1


def test_usage_error_exits_one(capsys):
    code, _, err = run(capsys, "vk", "--phi", "H")   # missing --k
    assert code == 1


def test_outdir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SHEARCONVEX_OUTDIR", str(tmp_path))
    code, _, _ = run(capsys, "vk", "--phi", "H", "--k", "2", "--out", "report.json")
    assert code == 0
    assert (tmp_path / "report.json").exists()


def test_output_spec_validation():
    with pytest.raises(ValueError):
        OutputSpec("JSON", None, precision=3)
    with pytest.raises(ValueError):
        OutputSpec("XML", None)
