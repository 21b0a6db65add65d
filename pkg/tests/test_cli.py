import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from gpdcalc.cli import main

MODELS = Path(__file__).resolve().parent.parent / "models"
TSTAR = str(MODELS / "tstar.yaml")


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, [str(a) for a in args])

    return invoke


class TestBracket:
    def test_koszul_example(self, run):
        res = run("bracket", TSTAR, "--poisson", "P", "--left", "a", "--right", "b")
        assert res.exit_code == 0
        assert res.stdout.strip() == "q*p*dq"

    def test_equal_odd_forms(self, run):
        res = run("bracket", TSTAR, "--poisson", "P", "--left", "b", "--right", "b")
        assert res.stdout.strip() == "0"

    def test_unknown_name(self, run):
        res = run("bracket", TSTAR, "--poisson", "P", "--left", "a", "--right", "zz")
        assert res.exit_code == 2
        assert "object not found" in res.stderr

    def test_poisson_must_be_bivector(self, run):
        res = run("bracket", TSTAR, "--poisson", "X", "--left", "a", "--right", "b")
        assert res.exit_code == 3

    def test_schouten(self, run):
        res = run("bracket", TSTAR, "--left", "P", "--right", "P", "--schouten")
        assert res.exit_code == 0
        assert res.stdout.strip() == "0"

    def test_schouten_rejects_forms(self, run):
        assert run("bracket", TSTAR, "--left", "a", "--right", "P", "--schouten").exit_code == 3

    def test_missing_poisson(self, run):
        assert run("bracket", TSTAR, "--left", "a", "--right", "b").exit_code == 2


class TestD:
    def test_form(self, run):
        res = run("d", TSTAR, "--object", "a")
        assert res.exit_code == 0
        assert res.stdout.strip() == "-q*dq*dp"

    def test_multivector_is_a_type_error(self, run):
        assert run("d", TSTAR, "--object", "P").exit_code == 3


class TestCheck:
    def test_tangent(self, run):
        res = run("check", MODELS / "tangent-algebroid.yaml")
        assert res.exit_code == 0
        assert "status: pass" in res.stdout

    def test_anchor_violation(self, run):
        res = run("check", MODELS / "anchor-violating.yaml")
        assert res.exit_code == 1
        assert "witness.pair: (e1,e2)" in res.stdout

    def test_empty(self, run):
        assert run("check", MODELS / "empty.yaml").exit_code == 0

    def test_json(self, run):
        res = run("check", MODELS / "tstar.yaml", "--json")
        data = json.loads(res.stdout)
        assert data["status"] == "pass"
        assert all("anchor" in c for c in data["checks"])

    def test_parse_failure(self, run, tmp_path):
        bad = tmp_path / "bad.yaml"
        bad.write_text("chart: [x\n")
        res = run("check", bad)
        assert res.exit_code == 2
        assert "not valid YAML" in res.stderr


class TestVerify:
    def test_tstar_example(self, run):
        res = run("verify", "tstar-example", "--n", 1, "--trials", 50, "--seed", 7)
        assert res.exit_code == 0
        for i in range(1, 5):
            assert f"check: closing-example-line-{i} status=pass" in res.stdout

    def test_all(self, run):
        res = run("verify", "all", "--trials", 1, "--seed", 0)
        assert res.exit_code == 0, res.stdout[-2000:]
        assert "status: pass" in res.stdout

    def test_bogus_suite(self, run):
        assert run("verify", "bogus").exit_code == 2

    def test_bad_flag(self, run):
        assert run("verify", "exterior", "--trials", -1).exit_code == 2

    def test_verbatim_fails(self, run):
        res = run("verify", "tstar-example", "--n", 1, "--trials", 5, "--seed", 0, "--verbatim")
        assert res.exit_code == 1

    def test_byte_identical(self, run):
        args = ("verify", "crossed-module", "--n", 1, "--trials", 3, "--seed", 5, "--json")
        assert run(*args).stdout == run(*args).stdout

    def test_sampling_bounds(self, run):
        res = run("verify", "exterior", "--trials", 2, "--seed", 1, "--max-degree", 1, "--coeff-range", 1)
        assert res.exit_code == 0

    def test_timing(self, run):
        res = run("verify", "bialgebra", "--timing")
        assert "timing_seconds:" in res.stdout


def test_version(run):
    res = run("--version")
    assert res.exit_code == 0
