import pytest

from gencore.suite import SUITE_LAWS, report_json, resolve_scope, run_case, run_suite


def test_single_case_uniqueness():
    rep = run_suite(1, 1, "T2.2")
    assert rep["summary"] == {"pass": 1, "fail": 0, "not-applicable": 0}


def test_rejects_empty_runs_and_unknown_laws():
    with pytest.raises(ValueError):
        run_suite(1, 0)
    with pytest.raises(KeyError):
        resolve_scope("T2.2,Q7")


def test_scope_parsing():
    assert resolve_scope("all") == list(SUITE_LAWS)
    assert resolve_scope(" T2.2, L2.1 ,T2.2") == ["T2.2", "L2.1"]


def test_reports_are_reproducible_and_pool_independent():
    args = (4, 2, "T2.5,T2.6,P4.2,D1.1", "both")
    a = report_json(run_suite(*args))
    assert a == report_json(run_suite(*args))
    assert a == report_json(run_suite(*args, workers=2))


def test_float_laws_only_under_conjugate_transpose():
    out = run_case(("T5.1", "transpose", 0, 0))
    assert out["status"] == "not-applicable"
    assert run_case(("T5.2", "conjugate_transpose", 0, 0))["status"] == "pass"


def test_summary_counts_every_case():
    rep = run_suite(2, 3, "T2.9,T4.4", "both")
    total = sum(rep["summary"].values())
    assert total == len(rep["results"]) == 2 * 2 * 3
    assert rep["summary"]["fail"] == 0
