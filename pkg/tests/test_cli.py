"""Command-line behaviour: exit status, output formats and determinism."""

import csv
import io
import json
import math

import pytest

from omegalab import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_identical_runs_give_identical_bytes(capsys):
    argv = ["verify", "main-identity", "--k", "2", "--R", "2", "--r", "1", "--alphas", "0.5+1i", "3"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    assert first[0] == 0


def test_failed_check_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "main-identity", "--k", "2", "--R", "2", "--r", "1",
                       "--alphas", "3", "--check-tol", "0")
    # Zero tolerance cannot absorb the roundoff of two separate quadratures.
    assert any(not c["passed"] for c in json.loads(out)["checks"])
    assert code == 1


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "integral", "--bogus")[0] == 2
    assert run(capsys)[0] == 2


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "trace-curve" in out and "xi,zeta,W,I" in out


def test_point_on_sphere_is_a_domain_error(capsys):
    code, out, err = run(capsys, "integral", "--k", "2", "--R", "2", "--r", "2", "--alpha", "1")
    assert code == 2
    assert out == ""
    assert "sphere" in err


def test_missing_fields_are_a_validation_error(capsys):
    code, _, err = run(capsys, "integral", "--k", "2")
    assert code == 2
    assert "invalid input" in err


def test_bounds_without_checks(capsys):
    code, out, _ = run(capsys, "dirichlet", "bounds", "--k", "2", "--delta", repr(math.pi))
    assert code == 0
    assert '"checks": []' in out
    report = json.loads(out)
    assert report["outputs"]["exact"] == pytest.approx(2.0, rel=1e-15)
    assert report["wall_time"] == 0.0


def test_timing_flag_reports_wall_time(capsys):
    _, out, _ = run(capsys, "dirichlet", "lambda-min", "--k", "2", "--delta", "2", "--timing")
    assert json.loads(out)["wall_time"] > 0


def test_trace_csv_schema(capsys):
    code, out, _ = run(capsys, "trace-curve", "--k", "2", "--R", "2", "--r", "1", "--seed", "1", "0.3", "--csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["xi", "zeta", "W", "I"]
    levels = [float(row[2]) for row in rows[1:]]
    assert max(levels) - min(levels) <= 1e-9 * levels[0]


def test_checks_csv_schema(capsys):
    _, out, _ = run(capsys, "verify", "potentials", "--k", "2", "--R", "2", "--r", "1", "--csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["name", "passed", "measured", "tolerance"]
    assert all(row[1] in ("true", "false") for row in rows[1:])


def test_sweep_keeps_grid_order(capsys):
    code, out, _ = run(capsys, "sweep", "--op", "asymptotics", "--param", "lambda", "--values", "-25", "-100",
                       "-400", "--set", "k=2", "--set", "regime=lambda_neg", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["value"] for row in rows] == ["-25", "-100", "-400"]
    assert all(row["status"] == "ok" for row in rows)


def test_sweep_flags_bad_rows_without_stopping(capsys):
    _, out, _ = run(capsys, "sweep", "--op", "integral", "--param", "r", "--values", "0.5", "2",
                    "--set", "k=2", "--set", "R=2", "--set", "alpha=1", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["status"] for row in rows] == ["ok", "error"]
    assert "sphere" in rows[1]["error"]


def test_empty_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--op", "asymptotics", "--param", "lambda",
                       "--set", "k=2", "--set", "regime=lambda_neg")
    assert code == 0
    assert json.loads(out)["command"].startswith("sweep")


def test_empty_asymptotics_grid(capsys):
    code, out, _ = run(capsys, "asymptotics", "--k", "2", "--regime", "lambda_neg", "--csv")
    assert code == 0
    assert out.count("\n") == 1


def test_negative_complex_values_use_equals_form(capsys):
    code, out, _ = run(capsys, "one-radius", "--k", "2", "--mu=-1+2i", "--nu", "0.5")
    assert code in (0, 1)
    assert json.loads(out)["inputs"]["mu"] == {"re": -1.0, "im": 2.0}


def test_bad_set_item(capsys):
    code, _, err = run(capsys, "sweep", "--op", "integral", "--param", "r", "--values", "1", "--set", "k2")
    assert code == 2
    assert "KEY=VALUE" in err
