import json
from importlib import resources

import jsonschema
import pytest

from bihcheck import cli, report, tubes
from bihcheck.report import Scenario, UsageError, run_all, run_scenario


@pytest.fixture(scope="module")
def schema():
    return json.loads(resources.files("bihcheck").joinpath("schema.json").read_text())


@pytest.fixture(scope="module")
def full():
    return run_all(seed=0)


def test_every_scenario_runs(full):
    assert [c.scenario for c in full.children] == list(report.SCENARIOS)
    assert full.status == ("pass" if all(c.ok for c in full.children) else "fail")


def test_default_run_all_pass(full):
    failing = {c.scenario: [s.name for s in c.steps if not s.ok] for c in full.children if not c.ok}
    assert failing == {}


def test_only_the_printed_quartic_fails(full):
    failing = {c.scenario: [s.name for s in c.steps if not s.ok] for c in full.children if not c.ok}
    assert failing in ({}, {"thm2-nonhopf-case1": ["quartic"]})


def test_json_validates(full, schema):
    jsonschema.validate(json.loads(full.to_json()), schema)
    jsonschema.validate(json.loads(full.to_json(timings=True)), schema)
    for child in full.children:
        jsonschema.validate(child.to_dict(), schema)


def test_markdown_has_every_anchor(full):
    md = full.to_markdown()
    for child in full.children:
        for step in child.steps:
            assert step.anchor.replace("|", "\\|") in md


def test_byte_identical_reruns(full):
    assert run_all(seed=0).to_json() == full.to_json()
    assert run_all(seed=0).to_markdown() == full.to_markdown()


def test_seed_change_keeps_verdicts_and_polynomials(full):
    other = run_all(seed=3)
    assert [c.status for c in other.children] == [c.status for c in full.children]
    a = {c.scenario: c for c in full.children}["thm2-nonhopf-case2"]
    b = {c.scenario: c for c in other.children}["thm2-nonhopf-case2"]
    for sa, sb in zip(a.steps, b.steps):
        assert sa.artifact["produced"] == sb.artifact["produced"]
    samples = lambda r: next(s for s in r.steps if s.name == "d specializations").artifact["data"]["samples"]
    assert samples(a) != samples(b)


def test_mutated_multiplicities_fail_at_norm(monkeypatch):
    monkeypatch.setitem(tubes.MULTIPLICITIES, "D", lambda n: (4, 4, 2, 2))
    rep = run_scenario(Scenario("type-DE"))
    assert rep.status == "fail"
    first = next(s for s in rep.steps if not s.ok)
    assert first.name == "norm |A|^2 (D)"


def test_timings_are_opt_in(full):
    assert all(s["millis"] is None for s in full.to_dict()["steps"])
    assert all(isinstance(s["millis"], float) for s in full.to_dict(timings=True)["steps"])


@pytest.mark.parametrize("sc", [
    Scenario("nope"),
    Scenario("type-BC-sweep", n=(4,), family="C"),
    Scenario("thm-hom", n=(1,)),
    Scenario("type-DE", family="D", n=(8,)),
    Scenario("ruled", n=(1,)),
    Scenario("thm2-nonhopf-case2", d_samples=0),
])
def test_usage_errors(sc):
    with pytest.raises(UsageError):
        run_scenario(sc)


def test_tube_scenario_mapping():
    assert report.tube_scenario("A", 4, 1).id == "thm-hom"
    assert report.tube_scenario("E", 15).id == "type-DE"
    assert report.tube_scenario("C", 7).id == "type-BC-sweep"
    with pytest.raises(UsageError):
        report.tube_scenario("A", 4, 3)


class TestCli:
    def run(self, capsys, *argv):
        code = cli.main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    def test_roots_positive_radicands(self, capsys):
        code, out, _ = self.run(capsys, "roots", "--poly", "3*X^2 - 8*X + 1", "--interval", "(0,inf)")
        assert code == 0 and "real roots: 2" in out

    @pytest.mark.parametrize("poly, interval", [
        ("X^2 + 1", "(-inf,inf)"),
        ("9*X^4 - 40*X^3 + 158*X^2 - 40*X + 9", "(1,inf)"),
    ])
    def test_roots_none(self, capsys, poly, interval):
        code, out, _ = self.run(capsys, "roots", "--poly", poly, "--interval", interval)
        assert code == 0 and "real roots: 0" in out

    def test_roots_parse_error_has_position(self, capsys):
        code, _, err = self.run(capsys, "roots", "--poly", "3*X^^2")
        assert code == 2 and "position 4" in err and "^" in err

    def test_roots_bad_interval(self, capsys):
        code, _, err = self.run(capsys, "roots", "--poly", "X", "--interval", "(1;2)")
        assert code == 2

    def test_tube_and_ruled(self, capsys):
        code, out, _ = self.run(capsys, "verify", "tube", "--family", "D", "--n", "9")
        assert code == 0 and json.loads(out)["status"] == "pass"
        code, out, _ = self.run(capsys, "verify", "ruled", "--n", "5", "--format", "md")
        assert code == 0 and "## ruled: pass" in out

    def test_tube_usage_error(self, capsys):
        code, _, err = self.run(capsys, "verify", "tube", "--family", "C", "--n", "4")
        assert code == 2 and "odd n" in err
        code, _, err = self.run(capsys, "verify", "tube", "--family", "A", "--n", "4")
        assert code == 2

    def test_chain_exit_code_follows_status(self, capsys):
        for case in ("1", "2"):
            code, out, _ = self.run(capsys, "verify", "chain", "--case", case)
            assert code == (0 if json.loads(out)["status"] == "pass" else 1)

    def test_all_writes_out_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out, _ = self.run(capsys, "verify", "all", "--out", str(path))
        data = json.loads(path.read_text())
        assert out == "" and code == (0 if data["status"] == "pass" else 1)
        assert data["scenario"] == "all" and len(data["reports"]) == len(report.SCENARIOS)
