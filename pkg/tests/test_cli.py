import json
import os
import subprocess
import sys

import pytest
from click.testing import CliRunner

from qtsf.cli import cli
from qtsf.qtalgebra import Q, QTRat


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(cli, list(args), env=env, catch_exceptions=False)

    return invoke


def test_kostka_small(run):
    res = run("kostka", "--n", "2")
    assert res.exit_code == 0
    obj = json.loads(res.output)
    entry = {(tuple(e["lambda"]), tuple(e["mu"])): QTRat.from_json(e["value"]) for e in obj["entries"]}
    assert entry[((1, 1), (2,))] == Q


def test_kostka_empty_and_refusal(run):
    res = run("kostka", "--n", "0")
    assert res.exit_code == 0 and json.loads(res.output)["entries"] == []
    assert run("kostka", "--n", "12").exit_code == 2


def test_kostka_f_lambda_and_latex(run):
    res = run("kostka", "--n", "4", "--check-f-lambda")
    assert json.loads(res.output)["f_lambda_check"]["status"] == "pass"
    res = run("kostka", "--n", "3", "--format", "latex")
    assert res.exit_code == 0 and r"\begin{tabular}" in res.output


def test_determinism(run, tmp_path):
    a = run("kostka", "--n", "4").output
    b = run("kostka", "--n", "4").output
    assert a == b
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    run("bh", "--mu", "4,2,1", "--emit", str(p1))
    run("bh", "--mu", "4,2,1", "--emit", str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_verify_suites(run):
    res = run("verify", "pieri", "--n", "5")
    assert res.exit_code == 0 and json.loads(res.output)["status"] == "pass"
    res = run("verify", "modules", "--mu", "2,2")
    assert res.exit_code == 0
    dims = [r["details"]["dimension"] for r in json.loads(res.output)["reports"] if r["identity"] == "n-factorial"]
    assert dims == [24]
    res = run("verify", "dimensions", "--mu", "3,2,1", "--format", "text")
    assert res.exit_code == 0 and "three-corner-d1" in res.output


@pytest.mark.parametrize("suite", ["macdonald-basics", "sf-positivity", "bh", "butler"])
def test_other_suites_pass(run, suite):
    assert run("verify", suite, "--n", "4").exit_code == 0


def test_usage_errors(run):
    assert run("verify", "bogus").exit_code == 2
    assert run("verify", "modules", "--n", "7").exit_code == 2
    assert run("phi", "--mu", "3,x").exit_code == 2
    assert run("phi", "--mu", "3,2", "--superset", "5").exit_code == 2


def test_phi_outputs(run):
    assert run("phi", "--mu", "3,2", "--k", "2").output.strip() == "s[4] + (t + q)*s[3,1] + (q^2)*s[2,2] + (q*t)*s[2,1,1]"
    assert run("phi", "--mu", "2,2").output.strip() == "s[3] + (t + q)*s[2,1] + (q*t)*s[1,1,1]"
    res = run("phi", "--mu", "3,2,1", "--superset", "1,2", "--format", "json")
    assert json.loads(res.output)["basis"] == "s"


def test_bh_and_module(run, tmp_path):
    res = run("bh", "--mu", "3,2,1")
    assert res.exit_code == 0 and json.loads(res.output)["verdict"] == "pass"
    res = run("bh", "--mu", "2,2")
    assert json.loads(res.output)["assignment"]["m"] == 1
    out = tmp_path / "frob.json"
    res = run("module", "--mu", "3,1", "--frobenius", "--emit", str(out))
    obj = json.loads(out.read_text(encoding="utf-8"))
    assert obj["space"]["dimension"] == 24 and "frobenius" in obj
    assert "rows" not in obj["space"]["blocks"][0]
    res = run("module", "--mu", "2,1", "--full")
    assert "rows" in json.loads(res.output)["space"]["blocks"][0]


def test_cache_env_var(tmp_path):
    env = dict(os.environ, QTSF_CACHE=str(tmp_path))
    args = [sys.executable, "-m", "qtsf", "kostka", "--n", "3"]
    first = subprocess.run(args, env=env, capture_output=True, check=True)
    assert (tmp_path / "tables" / "htilde_n3.json").exists()
    second = subprocess.run(args, env=env, capture_output=True, check=True)
    assert first.stdout == second.stdout
