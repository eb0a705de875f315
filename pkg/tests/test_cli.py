import io
import json
import subprocess
import sys

import pytest

from pimanifold.catalog import build_f1_example, build_para_sasaki_example
from pimanifold.cli import EXIT_HARD_RESIDUAL, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, run_command
from pimanifold.specfile import emit_spec, parse_spec


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.pim"
    code, _, _ = run("example", "--lambda", "1", "--mu", "1", "--emit", str(path))
    assert code == EXIT_OK
    return path


def test_example_emit_to_stdout_and_file(example_file):
    code, out, _ = run("example", "--lambda", "1/2", "--mu", "1/3")
    assert code == EXIT_OK
    assert "param lambda = 1/2" in out
    assert parse_spec(out) == build_para_sasaki_example(lam="1/2", mu="1/3")
    assert parse_spec(example_file.read_text()) == build_para_sasaki_example()


def test_validate(example_file):
    code, out, _ = run("validate", str(example_file))
    assert code == EXIT_OK and out.startswith("valid: example")


def test_classify_line(example_file):
    code, out, _ = run("classify", str(example_file))
    assert code == EXIT_OK
    assert out.splitlines()[0] == "class: F4, F4': yes, para-Sasaki: yes, theta(xi) = -4"


def test_connection_tables(example_file):
    code, out, _ = run("connection", str(example_file), "--param", "lambda=1/2", "--param", "mu=0")
    assert code == EXIT_OK
    lc, rest = out.split("\nfirst natural connection:\n")
    assert "  D_e1 e3 = -e0" in lc
    assert "  D_e0 e1 = 1/2*e2" in rest
    assert "D_e1" not in rest.split("torsion")[0]
    assert "  T_013 = 1" in rest
    assert "  t*_0 = 4" in rest


def test_curvature(example_file):
    code, out, _ = run("curvature", str(example_file))
    assert code == EXIT_OK
    assert "  R_0101 = 1" in out and "  rho_00 = -4" in out and "  tau = -4" in out
    assert "  rho*_13 = -3" in out and "  tau* = 0" in out
    code, out, _ = run("curvature", str(example_file), "--connection", "fnc")
    assert "  R = 0" in out and "  tau = 0" in out


def test_verify_json(example_file, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run("verify", str(example_file), "--suite", "all", "--json", str(target))
    assert code == EXIT_OK
    doc = json.loads(target.read_text())
    reports = {r["id"]: r for r in doc["reports"]}
    assert reports["thm4.2.F4"]["status"] == "holds"
    assert reports["thm4.5.F4"]["status"] == "residual"
    assert doc["params"] == {"lambda": "1", "mu": "1"}
    assert doc["classification"]["label"] == "F4"
    assert "0 hard-invariant residuals" in out


def test_verify_suites(example_file):
    _, core, _ = run("verify", str(example_file), "--suite", "core")
    _, rows, _ = run("verify", str(example_file), "--suite", "paper")
    assert "F.sym.23" in core and "thm4.2.F4" not in core
    assert "thm4.2.F4" in rows and "F.sym.23" not in rows


def test_verify_is_byte_identical(example_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("verify", str(example_file), "--json", str(a))
    run("verify", str(example_file), "--json", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_crosscheck_findings_do_not_change_exit_code(tmp_path):
    path = tmp_path / "f1.pim"
    path.write_text(emit_spec(build_f1_example()))
    code, out, _ = run("verify", str(path))
    assert code == EXIT_OK
    assert "residual paper-crosscheck lee.theta-star-phi2" in out


def test_hard_residual_exit_code(example_file, monkeypatch):
    from pimanifold import cli
    from pimanifold.verify import IdentityReport

    real = cli.run_suites

    def broken(instance, suite, analysis):
        reps = real(instance, suite, analysis)
        return reps + [IdentityReport("F.sym.23", "hard-invariant", "residual", 1, (0, 0, 0))]

    monkeypatch.setattr(cli, "run_suites", broken)
    code, _, _ = run("verify", str(example_file))
    assert code == EXIT_HARD_RESIDUAL


def test_parse_and_validation_exit_codes(tmp_path):
    bad = tmp_path / "bad.pim"
    bad.write_text("pim 1\nn = 1\nbracket[0,1] = 2*e9\n")
    code, _, err = run("validate", str(bad))
    assert code == EXIT_PARSE and "line 3, column 16" in err
    invalid = tmp_path / "invalid.pim"
    invalid.write_text("pim 1\nn = 1\nphi[1] = e1\nphi[2] = e2\nxi = e0\neta = 1 0 0\ng = diag(1, 1, 1)\n")
    code, _, err = run("classify", str(invalid))
    assert code == EXIT_VALIDATION and "trace-phi" in err
    code, _, _ = run("validate", str(tmp_path / "missing.pim"))
    assert code == EXIT_PARSE
    code, _, _ = run("frobnicate")
    assert code == EXIT_PARSE
    code, _, _ = run("example", "--param", "nu=1")
    assert code == EXIT_PARSE
    code, _, _ = run("example", "--param", "lambda")
    assert code == EXIT_PARSE


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "pimanifold", "example", "--lambda", "0", "--mu", "0"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "bracket[0,1] = lambda*e2 - e3 + mu*e4" in proc.stdout
