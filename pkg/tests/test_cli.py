import json
import math

import pytest

from equitc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bounds_all_markdown(capsys):
    code, out, _ = run(capsys, "bounds", "--all")
    assert code == 0
    assert "| antipodal | Σ_1 | 2n-1 | 2n | 2n+1 |" in out
    assert "| reflection | Σ_g (g≥2) | 2n+δ |  |  |" in out


def test_bounds_all_json_with_sources(capsys):
    code, out, _ = run(capsys, "bounds", "--all", "--format", "json", "--n", "2")
    data = json.loads(out)
    assert code == 0 and len(data["rows"]) == 8
    assert any(r["sources"] for g in data["records"] for r in g)


def test_bounds_single_prints_both_endpoints(capsys):
    code, out, _ = run(capsys, "bounds", "--space", "sphere", "--action", "antipodal", "--n", "2", "--param", "4")
    assert code == 0 and "5..6" in out


def test_bounds_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["bounds", "--space", "sphere"])
    assert e.value.code == 2


def test_verify_farber_exits_one(capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--planner", "farber", "--checks", "instability", "--report", str(rep))
    assert code == 1
    data = json.loads(rep.read_text())
    assert data["checks"]["instability"]["verdict"] == "unstable"


def test_verify_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--planner", "sphere-antipodal", "--checks", "section", "partition", "--samples", "50"]
    assert main(args + ["--report", str(a)]) == 0
    assert main(args + ["--report", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_seed_env_override(capsys, monkeypatch):
    _, first, _ = run(capsys, "plan", "--space", "euclid", "--n", "2", "--seed", "1")
    monkeypatch.setenv("EQUITC_SEED", "1")
    _, second, _ = run(capsys, "plan", "--space", "euclid", "--n", "2", "--seed", "99")
    assert first == second
    monkeypatch.setenv("EQUITC_SEED", "nope")
    with pytest.raises(SystemExit):
        main(["plan", "--space", "euclid"])


def test_plan_torus_equal_orbit(capsys, tmp_path):
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps([[0.0, math.pi / 2], [0.0, math.pi / 2]]))
    code, out, _ = run(capsys, "plan", "--space", "torus", "--n", "2", "--points", str(pts), "--samples", "16")
    rec = json.loads(out)
    assert code == 0
    assert rec["char_tuple"] == [0, 0] and rec["domain"] == "D_0"
    assert len(rec["paths"]) == 2 and len(rec["paths"][1]["samples"]) == 16
    for t, hx, hy, vx, vy in rec["paths"][1]["samples"]:
        assert hx >= -1e-9


def test_plan_formats(capsys, tmp_path):
    code, out, _ = run(capsys, "plan", "--space", "sphere", "--n", "3", "--format", "csv", "--samples", "4")
    assert code == 0 and out.splitlines()[0] == "path,t,c0,c1,c2" and len(out.splitlines()) == 13
    svg = tmp_path / "t.svg"
    assert main(["plan", "--space", "torus", "--n", "3", "--format", "svg", "--out", str(svg)]) == 0
    assert svg.read_text().startswith("<svg")
    with pytest.raises(SystemExit):
        main(["plan", "--space", "sphere", "--format", "svg"])


def test_export_euclid(tmp_path):
    obs = tmp_path / "o.json"
    obs.write_text(json.dumps([[1, 0, 1], [0, 1, 1]]))
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps([[2, 0, 2], [-1, 2, 3]]))
    out = tmp_path / "e.svg"
    assert main(["export", "--space", "euclid", "--points", str(pts), "--obstacles", str(obs), "--out", str(out)]) == 0
    text = out.read_text()
    assert "theta = 0.7854" in text and text.count("<circle") == 3


def test_plan_planner_error_is_usage(capsys, tmp_path):
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps([[1, 0, 0, 0], [0, 1, 0, 0]]))
    code, _, err = run(capsys, "plan", "--space", "sphere", "--action", "reflection", "--points", str(pts))
    assert code == 2 and "OddDimension" in err


def test_plan_wrong_n(tmp_path):
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps([[1, 0, 0], [0, 1, 0]]))
    with pytest.raises(SystemExit) as e:
        main(["plan", "--space", "sphere", "--n", "3", "--points", str(pts)])
    assert e.value.code == 2


def test_tolerance_range():
    with pytest.raises(SystemExit) as e:
        main(["plan", "--space", "sphere", "--tolerance", "0.1"])
    assert e.value.code == 2


def test_cuplen_certificate_with_oracle(capsys, tmp_path):
    cert = tmp_path / "c.json"
    cert.write_text(json.dumps(["w_{1} + w_{2}"]))
    code, out, _ = run(capsys, "cuplen", "--ring", "sphere(2)", "--map", "effective", "--action", "antipodal",
                       "--certificate", str(cert), "--oracle", "on")
    rep = json.loads(out)
    assert code == 0
    assert rep["factors_in_kernel"] == [True] and rep["bound"] == 2 and rep["oracle"] == 1


def test_cuplen_failing_certificate(capsys, tmp_path):
    cert = tmp_path / "c.json"
    cert.write_text(json.dumps(["w_{1}"]))
    code, out, _ = run(capsys, "cuplen", "--ring", "sphere(2)", "--map", "diagonal", "--certificate", str(cert))
    assert code == 1 and json.loads(out)["offending"] == ["w_{1}"]


def test_cuplen_builtin(capsys):
    code, out, _ = run(capsys, "cuplen", "--builtin", "surface-rotation-effective", "--param", "1", "--n", "2")
    rep = json.loads(out)
    assert code == 0 and rep["bound"] == 5 and rep["product"].startswith("4")


def test_cuplen_oracle_needs_f2(capsys):
    with pytest.raises(SystemExit):
        main(["cuplen", "--ring", "surface_Z(1)", "--oracle", "on"])
