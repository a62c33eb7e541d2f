import pytest

from app.config import Settings
from app.errors import ConfigurationError
from app.services.verification_service import SUITES, Check, VerificationService


@pytest.fixture
def service():
    return VerificationService(Settings(verify_workers=2, random_samples=6))


@pytest.mark.parametrize("suite", SUITES)
def test_suites_pass_at_small_grade(service, suite):
    verdict = service.run(suite, 4, 0)
    failed = [(c.name, c.detail) for c in verdict.checks if not c.passed]
    assert verdict.passed, failed
    assert verdict.checks and all(c.cases > 0 for c in verdict.checks)


def test_all_runs_every_suite_in_registration_order(service):
    verdict = service.run("all", 2, 1)
    expected = [check.name for suite in SUITES for check in service.checks(suite, 2, 1)]
    assert [c.name for c in verdict.checks] == expected
    assert verdict.suite == "all" and verdict.seed == 1


def test_reports_are_deterministic(service):
    assert service.run("top", 3, 5) == service.run("top", 3, 5)


def test_bad_arguments(service):
    with pytest.raises(ConfigurationError):
        service.checks("bogus", 3, 0)
    with pytest.raises(ConfigurationError):
        service.checks("products", -1, 0)


def test_failures_and_crashes_are_reported(service):
    failing = service._evaluate(Check("always fails", "test", lambda: (3, "fails at y1")))
    assert not failing.passed and failing.cases == 3 and failing.detail == "fails at y1"
    crashing = service._evaluate(Check("crashes", "test", lambda: 1 // 0))
    assert not crashing.passed
    assert crashing.detail.startswith("ZeroDivisionError")


ACCEPTANCE_CHECKS = [
    ("faulhaber", 10, "H-_u H-_v = H-_(u stuffle v), nonzero"),
    ("polylog-routes", 8, "operator route equals recursive route"),
    ("polylog-routes", 8, "l_(i,j) assembly equals Li-"),
    ("faulhaber", 6, "H- agrees with nested sums and has degree (w)+|w|"),
    ("chi", 8, "chi(H-_w) = Li-_w"),
    ("kernel", 6, "ker H- = ker Li-"),
    ("kernel", 6, "w - w top 1 lies in both kernels"),
    ("faulhaber", 6, "Faulhaber quotient through extended Bernoulli polynomials"),
    ("matrices", 6, "D D^-1 = I"),
    ("character", 8, "Theta(N) coefficients are N^p"),
]


@pytest.mark.parametrize("suite,grade,name", ACCEPTANCE_CHECKS, ids=[n for _, _, n in ACCEPTANCE_CHECKS])
def test_checks_at_acceptance_bounds(suite, grade, name):
    service = VerificationService(Settings(verify_workers=1, random_samples=200))
    (check,) = [c for c in service.checks(suite, grade, 0) if c.name == name]
    outcome = service._evaluate(check)
    assert outcome.passed, outcome.detail
    assert outcome.cases > 0
