import pytest

from mfk import suites
from mfk.errors import BadIndex
from mfk.reports import Report, RunRecord, RunReport, failing_detail, merge_runs


def _ok(name):
    return lambda: Report(id=name).add("check", True)


def _bad(name):
    return lambda: Report(id=name).add("check", False, {"why": "forced"})


# -----------------------------
# Reports
# -----------------------------
def test_report_tally_and_alias():
    r = Report(id="r").add("a", True).add("b", False, {"x": 1})
    assert not r.passed
    data = r.to_dict()
    assert data["checks"][0] == {"name": "a", "pass": True, "detail": None}
    assert failing_detail(r) == {"checks": 2, "failed": [{"name": "b", "pass": False, "detail": {"x": 1}}]}


def test_run_report_summary():
    run = RunReport(
        suite="s",
        records=[RunRecord(id="a", passed=True, wall_ms=1.5), RunRecord(id="b", passed=False)],
    )
    assert (run.summary.total, run.summary.passed, run.summary.failed) == (2, 1, 1)
    assert not run.passed
    assert "wall_ms" not in run.to_dict(with_times=False)["records"][0]
    assert run.to_dict()["records"][0]["pass"] is True


def test_merge_runs_prefixes_ids():
    a = RunReport(suite="one", records=[RunRecord(id="x", passed=True)])
    b = RunReport(suite="two", records=[RunRecord(id="y", passed=False)])
    merged = merge_runs("all", [a, b])
    assert [r.id for r in merged.records] == ["one/x", "two/y"]
    assert merged.summary.failed == 1


# -----------------------------
# Task runner
# -----------------------------
def test_named_errors_become_failing_records():
    def boom():
        raise BadIndex("nope", {"n": 0})

    run = suites.run_tasks("t", [suites.Task("ok", _ok("ok")), suites.Task("boom", boom)])
    assert [r.passed for r in run.records] == [True, False]
    assert run.records[1].detail["error"] == "bad_index"


def test_other_exceptions_escape():
    def boom():
        raise KeyError("internal")

    with pytest.raises(KeyError):
        suites.run_tasks("t", [suites.Task("boom", boom)])


def test_order_is_independent_of_threads():
    tasks = [suites.Task(f"t{i}", _ok(f"t{i}") if i % 3 else _bad(f"t{i}")) for i in range(12)]
    one = suites.run_tasks("t", tasks, threads=1).to_dict(with_times=False)
    many = suites.run_tasks("t", tasks, threads=4).to_dict(with_times=False)
    assert one == many
    assert [r["id"] for r in many["records"]] == [f"t{i}" for i in range(12)]


def test_task_filters():
    t = suites.Task("x", _ok("x"), {"series": "D", "n": 4, "k": 2})
    assert t.matches({"series": "D", "n": None})
    assert t.matches({"n": "4"})
    assert not t.matches({"k": 3})
    assert not suites.Task("y", _ok("y")).matches({"series": "D"})


# -----------------------------
# Suites
# -----------------------------
def test_specializations_suite():
    run = suites.run_suite("specializations", threads=2, series="D", n=4)
    assert run.summary.total == 3
    assert run.passed, run.to_dict()


def test_invariants_worked_instance():
    run = suites.run_suite("invariants", series="D", n=4, k=2)
    ids = [r.id for r in run.records]
    assert "D:worked-instance" in ids and "D:n=4:k=2:invariants" in ids
    assert run.passed, run.to_dict()


def test_universal_suite():
    run = suites.run_suite("universal")
    assert run.passed, run.to_dict()


def test_decompositions_suite_for_one_rank():
    run = suites.run_suite("decompositions", n=4)
    assert [r.id for r in run.records] == ["D:n=4:k=1:decompose", "D:n=4:k=3:decompose", "D:n=4:k=4:decompose"]
    assert run.passed, run.to_dict()


def test_charts_suite_for_a_family():
    run = suites.run_suite("charts", series="A", n=5)
    assert run.summary.total == 4
    assert run.passed, run.to_dict()


def test_factorizations_suite_for_e7():
    run = suites.run_suite("factorizations", series="E7")
    assert run.summary.total == 7
    assert run.passed, run.to_dict()


def test_root_identities_random():
    report = suites._random_roots_report(trials=10, seed=7)
    assert report.passed
    assert len(report.checks) == 10


def test_all_merges_every_verify_suite():
    run = suites.run_suite("all", series="UF1")
    assert {r.id.split("/")[0] for r in run.records} == {"factorizations", "charts"}
    assert run.suite == "all" and run.passed
