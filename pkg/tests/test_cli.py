import json
import subprocess
import sys

from lozenge.cli import EXIT_FAIL, EXIT_OK, EXIT_SPEC, load_tiling, main
from lozenge.geometry import build_polygon
from lozenge.presets import PRESETS


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_fig4(capsys):
    code, out, _ = run(["validate", "--preset", "fig4"], capsys)
    assert code == EXIT_OK
    for line in ("N=10", "r=1", "rho=2", "sigma=4"):
        assert line in out.splitlines()


def test_validate_from_file(tmp_path, capsys):
    path = tmp_path / "hex.json"
    path.write_text(json.dumps(PRESETS["hex222"].to_dict()))
    code, out, _ = run(["validate", str(path)], capsys)
    assert code == EXIT_OK and "N=4" in out


def test_malformed_json_names_the_field(tmp_path, capsys):
    data = PRESETS["hex222"].to_dict()
    data["b0"] = "oops"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, err = run(["validate", str(path)], capsys)
    assert code == EXIT_SPEC
    assert "b0" in err


def test_broken_json_text(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, _ = run(["validate", str(path)], capsys)
    assert code == EXIT_SPEC


def test_kernel_csv(capsys):
    code, out, _ = run(["kernel", "--preset", "hex111"], capsys)
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[0] == "m,x,n,y,value_num,value_den"
    assert "0,0,1,-1,1,2" in lines


def test_qkernel_csv(capsys):
    code, out, _ = run(["qkernel", "--preset", "hex111", "--q", "1/2", "--points", "0:0;1:-1"], capsys)
    assert code == EXIT_OK and "0,0,1,-1,2,3" in out.splitlines()


def test_blue_kernel_verification(capsys):
    code, out, _ = run(["lkernel", "--preset", "hex222", "--verify-thm2"], capsys)
    assert code == EXIT_OK
    assert "max_discrepancy=0/1" in out.splitlines()


def test_enumerate_count(capsys):
    code, out, _ = run(["enumerate", "--preset", "hex222", "--count"], capsys)
    assert code == EXIT_OK and "20" in out


def test_sample_render_round_trip(tmp_path, capsys):
    t_path = tmp_path / "t.csv"
    code, _, _ = run(["sample", "--preset", "two-cut-small", "--steps", "500", "--seed", "4",
                      "--out", str(t_path)], capsys)
    assert code == EXIT_OK
    P = build_polygon(PRESETS["two-cut-small"])
    load_tiling(P, str(t_path))
    svg = tmp_path / "t.svg"
    code, _, _ = run(["render", "--preset", "two-cut-small", "--tiling", str(t_path), "--out", str(svg)], capsys)
    assert code == EXIT_OK and svg.read_text().startswith("<?xml")


def test_sample_npz(tmp_path, capsys):
    path = tmp_path / "t.npz"
    code, _, _ = run(["sample", "--preset", "hex222", "--steps", "100", "--out", str(path), "--format", "npz"], capsys)
    assert code == EXIT_OK and path.exists()


def test_tacnode_table(capsys):
    code, out, _ = run(["tacnode", "--taus", "0,1", "--thetas", "0"], capsys)
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[0] == "tau1,theta1,tau2,theta2,value,involution_residual"
    assert len(lines) == 5


def test_no_spec_is_a_spec_error(capsys):
    code, _, _ = run(["validate"], capsys)
    assert code == EXIT_SPEC


def test_negative_steps(capsys):
    code, _, _ = run(["sample", "--preset", "hex111", "--steps", "-1"], capsys)
    assert code == EXIT_SPEC


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "lozenge.cli", "validate", "--preset", "hex111"],
                         capture_output=True, text=True)
    assert res.returncode == EXIT_OK and "N=2" in res.stdout


def test_failed_verification_exits_one(monkeypatch, capsys):
    import lozenge.lkernel as lk

    monkeypatch.setattr(lk, "verify_blue_kernel", lambda *a, **k: {"checked": 1, "max_discrepancy": 1})
    code, _, _ = run(["lkernel", "--preset", "hex111", "--verify-thm2"], capsys)
    assert code == EXIT_FAIL


def test_selftest_reports_and_exits(monkeypatch, capsys):
    import lozenge.acceptance as acc

    good = acc.CriterionResult(1, "stub", True, "ok", 0.0)
    bad = acc.CriterionResult(2, "stub", False, "no", 0.0)
    monkeypatch.setattr(acc, "run_all", lambda report: [good])
    assert run(["selftest"], capsys)[0] == EXIT_OK
    monkeypatch.setattr(acc, "run_all", lambda report: [good, bad])
    code, out, _ = run(["selftest"], capsys)
    assert code == EXIT_FAIL and "1/2 criteria passed" in out
