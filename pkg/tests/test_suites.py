import pytest

from qholo.suites import SUITES, CheckOptions, SuiteResult, check_duality, run_suites

QUICK = CheckOptions(trials=6, seed=11, max_crossings=3)


@pytest.mark.parametrize("name", ["algebra", "diagram", "confluence", "coherence", "lattice", "reidemeister"])
def test_quick_suites_pass(name):
    result = SUITES[name](QUICK)
    assert result.trials > 0
    assert result.passed, result.failures


@pytest.mark.slow
@pytest.mark.parametrize("name", ["skein", "triple", "duality", "unknot"])
def test_pipeline_suites_pass(name):
    result = SUITES[name](CheckOptions(trials=10, seed=0, max_crossings=5))
    assert result.passed, result.failures


def test_suite_result_records_failures():
    result = SuiteResult("demo")
    result.record(True, "fine")
    result.record(False, "broken")
    assert not result.passed
    assert result.to_dict() == {"suite": "demo", "passed": False, "trials": 2, "failures": ["broken"]}


def test_run_suites_rejects_unknown_names():
    with pytest.raises(KeyError):
        run_suites(["algebra", "nope"], QUICK)


def test_run_suites_keeps_order(capsys):
    results = run_suites(["diagram", "algebra"], CheckOptions(trials=2, seed=1))
    assert [r.name for r in results] == ["diagram", "algebra"]
    assert "✅ diagram" in capsys.readouterr().err


def test_duality_checks_mirrored_braids():
    result = check_duality(QUICK, max_n=1)
    assert result.passed, result.failures
    assert result.trials == 6
