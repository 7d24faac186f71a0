import json
import subprocess
import sys

import pytest

from shintani.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, RunConfig, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_decompose_golden(capsys):
    code, out = run(capsys, "decompose", "-D", "5", "--machine")
    assert code == EXIT_OK
    (rec,) = records(out)
    assert rec["cones"] == [{"coefficient": 1, "vectors": [["1", "0"], ["0", "1"]]}]
    assert rec["effective"] is True
    assert list(rec) == sorted(rec)


def test_bad_units(capsys):
    code, out = run(capsys, "decompose", "-D", "5", "--units=-1,0", "--index", "2")
    assert code == EXIT_INPUT
    assert "DependentUnits" in out


def test_bad_arguments(capsys):
    assert main(["lvalue", "--preset", "bogus"]) == EXIT_INPUT
    assert main(["decompose", "-D", "7"]) == EXIT_INPUT
    capsys.readouterr()


def test_check_default_passes(capsys):
    code, out = run(capsys, "check", "-D", "5", "--trials", "20", "--machine")
    assert code == EXIT_OK
    recs = [r for r in records(out) if r["record"] == "check"]
    assert {r["suite"] for r in recs} == {"partition", "cocycle", "shintani-sum", "fundamental-identity",
                                          "norm-identity", "cone-volume"}
    assert all(r["ok"] for r in recs)


def test_check_tampered(capsys):
    code, out = run(capsys, "check", "-D", "5", "--trials", "20", "--tamper", "0",
                    "--checks", "shintani-sum", "--machine")
    assert code == EXIT_FAIL
    assert records(out)[0]["ok"] is False


def test_check_vacuous(capsys):
    code, out = run(capsys, "check", "-D", "5", "--trials", "0", "--machine")
    recs = records(out)
    assert code == EXIT_OK
    assert recs[0]["record"] == "warning"
    assert all(r["ok"] for r in recs[1:])


def test_lvalue_dedekind(capsys):
    code, out = run(capsys, "lvalue", "--preset", "dedekind", "-D", "5", "-k", "1", "--machine")
    (rec,) = records(out)
    assert code == EXIT_OK
    assert rec["value"]["text"] == "1/30" and rec["oracle_match"] and rec["integrality"] is True


def test_lvalue_riemann(capsys):
    code, out = run(capsys, "lvalue", "--preset", "riemann", "-k", "3", "-p", "5", "--machine")
    (rec,) = records(out)
    assert code == EXIT_OK
    assert rec["raw"]["text"] == str((1 - 5**4) * __import__("fractions").Fraction(1, 120))
    assert rec["oracle_match"] is True


def test_lvalue_dirichlet_and_trivial_zero(capsys):
    code, out = run(capsys, "lvalue", "--preset", "dirichlet", "--modulus", "4", "--character", "1",
                    "-k", "0", "-k", "1", "--machine")
    recs = records(out)
    assert recs[0]["value"]["text"] == "1/2" and recs[0]["oracle_match"]
    assert "error" in recs[1]
    assert code == EXIT_INPUT


def test_class_number(capsys):
    code, out = run(capsys, "--class-number", "-D", "5", "--machine")
    (rec,) = records(out)
    assert code == EXIT_OK
    assert rec["order"] == 1 and rec["ok"] is True
    assert abs(float(rec["leading"].split()[0]) + 0.24061) < 1e-5


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"preset": "genus", "disc": 12, "k": [2], "machine": True}))
    code, out = run(capsys, "lvalue", "--config", str(cfg))
    (rec,) = records(out)
    assert code == EXIT_OK and rec["value"]["text"] == "1/9" and rec["oracle_match"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"nonsense": 1}))
    assert main(["decompose", "--config", str(bad)]) == EXIT_INPUT
    capsys.readouterr()


def test_config_validation():
    with pytest.raises(Exception):
        RunConfig(k=[-1]).validate()
    assert RunConfig(disc=5).validate().trials == 20


def test_human_output(capsys):
    code, out = run(capsys, "decompose", "-D", "5")
    assert code == EXIT_OK and out.startswith("[decomposition]")


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "shintani.cli", "decompose", "-D", "8", "--machine"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["record"] == "decomposition"
