import json

import pytest

from qplane.cli import main, parse_bindings
from qplane.coefficients import C, P
from qplane.errors import MissingRule
from qplane.suites import SUITES, Check, Context, list_suites, run_check, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    for name in list(SUITES) + ["all"]:
        assert name in out
    anchors = {name: anchor for name, _, anchor in list_suites()}
    assert "AD - DA = q' CB - q'^-1 BC" in anchors["hopf-constraints"]
    assert "q' = qbar q13^-1 q11" in anchors["qij-constraints"]
    assert "Case II" in anchors["case2-planes"]


def test_glpq_rtt_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "glpq-rtt", "--output", "json")
    assert code == 0
    report = json.loads(out)
    assert sum(r["status"] == "pass" for r in report) == 16
    assert not any(r["status"] == "fail" for r in report)
    assert all(set(r) == {"name", "status", "residual", "elapsed_ms"} for r in report)


def test_diffcalc_invariance_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "diffcalc-invariance", "--output", "json")
    report = json.loads(out)
    assert code == 0
    assert len(report) == 12 and all(r["status"] == "pass" for r in report)


def test_text_report(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "delta-det")
    assert code == 0
    assert out.splitlines()[0].startswith("status")
    assert out.strip().endswith("3 passed, 0 failed, 0 reported")


def test_reports_are_deterministic(capsys, tmp_path):
    args = ("verify", "--suite", "coeff-field", "--samples", "20", "--no-timing", "--output", "json")
    first = run(capsys, *args, "--report", str(tmp_path / "a.json"))
    second = run(capsys, *args, "--seed", "20240229")
    assert first == second
    assert (tmp_path / "a.json").read_text() == first[1]


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "verify", "--suite", "ybe", "--bindings", "p=-1/q'")[0] == 2
    assert run(capsys, "verify", "--suite", "ybe", "--bindings", "p=0")[0] == 2
    assert run(capsys, "verify", "--suite", "ybe", "--bindings", "z=1")[0] == 2
    assert run(capsys, "verify", "--suite", "ybe", "--bindings", "p")[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_parse_bindings():
    assert parse_bindings("p=q, q′=2") == {"p": P("q"), "q'": C(2)}
    assert parse_bindings(None) == {}


def test_missing_rule_becomes_failing_check():
    def boom():
        raise MissingRule("D", "C")

    result = run_check(Check("broken", boom))
    assert result.status == "fail" and "D C" in result.residual


def test_fail_carries_residual():
    result = run_check(Check("quiet", lambda: ("fail", None)))
    assert result.residual


def test_failures_set_exit_status(capsys, monkeypatch):
    from qplane import suites
    fake = suites.Suite("ybe", "", "", lambda ctx: [Check("bad", lambda: ("fail", "x"))])
    monkeypatch.setitem(suites.SUITES, "ybe", fake)
    assert run(capsys, "verify", "--suite", "ybe")[0] == 1


def test_one_parameter_bindings():
    results = run_suite("all", Context.build({"p": P("q")}, samples=50), timing=False)
    failed = [r.name for r in results if r.status == "fail"]
    # the only failures are the non-confluent k-family and Case I presentations
    assert failed and all(("confluence" in n or "critical-pairs" in n)
                          and ("general" in n or "case1" in n) for n in failed)


@pytest.mark.parametrize("name", ["glq-limit", "hopf-constraints", "qij-constraints", "case1-k",
                                  "case2-planes", "coaction-invariance", "det-inverse"])
def test_suites_have_no_failures(name):
    results = run_suite(name, Context.build(), timing=False)
    assert results and not [r for r in results if r.status == "fail"]
