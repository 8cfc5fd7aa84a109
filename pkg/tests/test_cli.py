import csv
import io
import json
import math

import pytest

from wirtinger import cli
from wirtinger.solver import BreakpointScan, ScanRow


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_no_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2


def test_alpha_human_output(capsys, warm):
    code, out, _ = run(capsys, ["alpha", "--p", "2", "--q", "2", "--r", "2"])
    assert code == 0
    fields = dict(line.split(None, 1) for line in out.strip().splitlines())
    assert float(fields["alpha"]) == pytest.approx(math.pi, abs=1e-9)
    assert fields["regime"] == "CLOSED_FORM_EQUALITY"


def test_alpha_json_round_trips_byte_identical(capsys, warm):
    code, out, _ = run(capsys, ["alpha", "--p", "2", "--q", "8", "--r", "2",
                                "--json"])
    assert code == 0
    line = out.strip()
    payload = json.loads(line)
    assert json.dumps(payload, sort_keys=True) == line
    assert payload["regime"] == "STRICT_INEQUALITY"
    assert payload["alpha"] < payload["alpha_qq"]


def test_alpha_accepts_infinite_q(capsys, warm):
    code, out, _ = run(capsys, ["alpha", "--p", "2", "--q", "inf", "--r", "2",
                                "--json"])
    assert code == 0
    assert json.loads(out)["alpha"] == pytest.approx(math.sqrt(6.0), rel=1e-12)


def test_alpha_parameter_errors_exit_2(capsys):
    code, _, err = run(capsys, ["alpha", "--p", "2", "--q", "inf", "--r", "3"])
    assert code == 2 and "parameter error" in err
    code, _, err = run(capsys, ["alpha", "--p", "2", "--q", "2", "--r", "2",
                                "--a", "0"])
    assert code == 2
    code, _, err = run(capsys, ["alpha", "--p", "2", "--q", "2", "--r", "2",
                                "--a", "1", "--b", "0"])
    assert code == 2


def test_alpha_rescales_to_interval(capsys, warm):
    code, out, _ = run(capsys, ["alpha", "--p", "2", "--q", "2", "--r", "2",
                                "--a", "0", "--b", str(2.0 * math.pi),
                                "--json"])
    assert code == 0
    assert json.loads(out)["alpha_rescaled"] == pytest.approx(1.0, abs=1e-9)


def test_scan_csv_shape(capsys, warm):
    code, out, _ = run(capsys, ["scan", "--p", "2", "--r", "2",
                                "--q-from", "5", "--q-to", "7", "--n", "5"])
    assert code == 0
    lines = out.strip().splitlines()
    comments = [ln for ln in lines if ln.startswith("#")]
    data = [ln for ln in lines if not ln.startswith("#")]
    assert comments and comments[-1].startswith("# q_star")
    rows = list(csv.reader(io.StringIO("\n".join(data))))
    assert rows[0] == ["p", "q", "r", "alpha", "alpha_qq", "gap", "m_star",
                       "regime", "quad_error", "error"]
    assert len(rows) == 6
    qs = [float(row[1]) for row in rows[1:]]
    assert qs == [5.0, 5.5, 6.0, 6.5, 7.0]
    for row in rows[1:]:
        assert row[9] == ""
        assert float(row[3]) > 0.0


def test_scan_json_round_trips(capsys, warm):
    code, out, _ = run(capsys, ["scan", "--p", "2", "--r", "2",
                                "--q-from", "6", "--q-to", "7", "--n", "3",
                                "--out", "json"])
    assert code == 0
    line = out.strip()
    payload = json.loads(line)
    assert json.dumps(payload, sort_keys=True) == line
    assert len(payload["rows"]) == 3
    assert payload["q_star"] is not None


def test_scan_mostly_failed_rows_exit_3(capsys, monkeypatch):
    fake = BreakpointScan(
        rows=(ScanRow(5.0, None, "synthetic failure"),
              ScanRow(6.0, None, "synthetic failure")),
        q_star=None, spacing=1.0, gap_monotone=True,
    )
    monkeypatch.setattr(cli.solver_mod, "breakpoint_scan",
                        lambda *a, **k: fake)
    code, out, err = run(capsys, ["scan", "--p", "2", "--r", "2",
                                  "--q-from", "5", "--q-to", "6", "--n", "2"])
    assert code == 3
    assert "scan rows failed" in err
    assert "synthetic failure" in out


def test_profile_csv_file(tmp_path, capsys, warm):
    dest = tmp_path / "profile.csv"
    code, _, _ = run(capsys, ["profile", "--p", "2", "--q", "2", "--r", "2",
                              "--n", "129", "--m", "1.0",
                              "--out", str(dest)])
    assert code == 0
    text = dest.read_text()
    lines = text.strip().splitlines()
    data = [ln for ln in lines if not ln.startswith("#")]
    comments = [ln for ln in lines if ln.startswith("#")]
    assert data[0] == "x,u,du"
    assert len(data) == 1 + 129
    x0, u0, du0 = (float(v) for v in data[1].split(","))
    assert (x0, u0, du0) == (-1.0, -1.0, 0.0)
    names = {ln.split("=")[0].strip("# ") for ln in comments}
    for required in ("m", "gamma", "constraint_residual", "norm_q_identity",
                     "derivative_identity", "quotient_vs_k", "euler_lagrange",
                     "evenness_defect"):
        assert required in names
    # Residual values parse as floats and are small for the classical case.
    for ln in comments:
        value = float(ln.split("=")[1])
        assert math.isfinite(value)


def test_profile_rejects_small_n(capsys):
    code, _, err = run(capsys, ["profile", "--p", "2", "--q", "2", "--r", "2",
                                "--n", "64"])
    assert code == 2 and "--n" in err


def test_verify_quick_passes(capsys, warm):
    code, out, _ = run(capsys, ["verify", "--suite", "quick"])
    assert code == 0
    lines = out.strip().splitlines()
    assert all(ln.startswith("PASS") for ln in lines[:-1])
    assert lines[-1].startswith("OK")


def test_verify_detects_broken_constants(capsys, monkeypatch, warm):
    # Corrupt the closed-form route; the cross check against quadrature
    # must flag the disagreement and exit nonzero.
    import wirtinger.cli as cli_mod
    real = cli_mod.alpha_closed_form
    monkeypatch.setattr(cli_mod, "alpha_closed_form",
                        lambda p, q: 1.001 * real(p, q))
    code, out, _ = run(capsys, ["verify", "--suite", "quick"])
    assert code == 1
    assert "FAIL" in out


def test_verify_json_shape(capsys, monkeypatch, warm):
    monkeypatch.setattr(cli, "_verify_checks", lambda suite, cfg: [
        {"name": "stub", "observed": 1.0, "expected": 1.0,
         "tolerance": 0.1, "passed": True},
    ])
    code, out, _ = run(capsys, ["verify", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["checks"][0]["name"] == "stub"
