import pytest

from hecke_series.services import codec, verification
from hecke_series.services.rng import trial_seed

# Smaller orders than the suite defaults keep the test run short.
TEST_ORDERS = {
    "algebra": 40,
    "pochhammer": 1,
    "transform": 12,
    "adjoint": 24,
    "eigen": 64,
    "spectrum": 128,
    "multiplicative": 24,
}


@pytest.mark.parametrize("suite", sorted(verification.SUITES))
def test_suites_pass(suite):
    run = verification.run_suite(suite, 4, 42, TEST_ORDERS[suite], workers=1)
    assert run.passed, run.failures


def test_spectrum_grid():
    run = verification.run_suite("spectrum", 1, 7, workers=1)
    assert run.passed and run.order == 128


def test_eigen_suite_covers_every_mode():
    run = verification.run_suite("eigen", 30, 5, workers=1)
    assert run.passed, run.failures


def test_deterministic_output():
    first = verification.run_suite("transform", 5, 123, 10, workers=1)
    second = verification.run_suite("transform", 5, 123, 10, workers=1)
    assert codec.dumps(first.to_dict()) == codec.dumps(second.to_dict())


def test_failures_are_sorted_by_trial(monkeypatch):
    def flaky(t):
        if t.trial % 2:
            t.fail("odd trial", value=t.rng.next_u64())

    monkeypatch.setitem(verification.SUITES, "pochhammer", flaky)
    serial = verification.run_suite("pochhammer", 6, 9, workers=1)
    assert [f["trial"] for f in serial.failures] == [1, 3, 5]
    assert serial.failures[0]["reproduction"]["trial_seed"] == trial_seed(9, "pochhammer", 1)


def test_parallel_matches_serial():
    serial = verification.run_suite("pochhammer", 6, 9, workers=1)
    parallel = verification.run_suite("pochhammer", 6, 9, workers=2)
    assert serial.to_dict() == parallel.to_dict()


def test_exceptions_become_failures(monkeypatch):
    def broken(t):
        raise RuntimeError("boom")

    monkeypatch.setitem(verification.SUITES, "adjoint", broken)
    run = verification.run_suite("adjoint", 2, 1, workers=1)
    assert not run.passed
    assert run.failures[0]["description"] == "RuntimeError: boom"
    assert run.failures[0]["reproduction"]["suite"] == "adjoint"


def test_failure_reproduction_replays(monkeypatch):
    def fails_on_value(t):
        t.check(t.rng.below(2) == 0, "drew one")

    monkeypatch.setitem(verification.SUITES, "adjoint", fails_on_value)
    run = verification.run_suite("adjoint", 20, 3, workers=1)
    for failure in run.failures:
        replay = verification.run_trial("adjoint", 3, failure["trial"], run.order)
        assert replay == [failure]


@pytest.mark.parametrize("suite, trials", [("nope", 1), ("algebra", 0)])
def test_invalid_arguments(suite, trials):
    with pytest.raises(ValueError):
        verification.run_suite(suite, trials, 1)


def test_run_all():
    runs = verification.run_all(1, 2, order=24, workers=1)
    assert [run.suite for run in runs] == list(verification.SUITES)
