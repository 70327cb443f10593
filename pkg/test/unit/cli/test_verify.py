from fractions import Fraction
from typing import Any, Tuple

import pytest

from besselzeta.cli.verify import (
    ALL_SUITES,
    SUITES,
    CheckResult,
    VerificationRunner,
    check_contour,
    check_residues,
    printed_even_value,
)
from besselzeta.coefficients.store import CoefficientStore
from besselzeta.core.config import EvalConfig
from besselzeta.core.errors import ConsistencyError, NonConvergenceError


@pytest.fixture
def runner() -> VerificationRunner:
    return VerificationRunner(EvalConfig(precision=128), CoefficientStore())


def test_suite_names() -> None:
    assert VerificationRunner.suite_names(ALL_SUITES) == list(SUITES)
    assert VerificationRunner.suite_names("recursions") == ["recursions"]
    with pytest.raises(KeyError, match="not a registered verification suite"):
        VerificationRunner.suite_names("fast")


@pytest.mark.parametrize(
    "nu, k, expected",
    [
        (Fraction(0), 1, Fraction(1, 4)),
        (Fraction(0), 2, Fraction(1, 32)),
        (Fraction(1, 2), 1, Fraction(1, 6)),
        (Fraction(1, 2), 2, Fraction(1, 90)),
    ],
)
def test_printed_even_value(nu: Fraction, k: int, expected: Fraction) -> None:
    assert printed_even_value(nu, k) == expected


def test_printed_even_value_range() -> None:
    with pytest.raises(ValueError):
        printed_even_value(Fraction(0), 6)


@pytest.mark.asyncio
@pytest.mark.parametrize("suite", ["stolarsky", "recursions"])
async def test_run_suite(runner: VerificationRunner, suite: str) -> None:
    results = await runner.run(suite)
    assert [result.name for result in results] == list(SUITES[suite])
    assert all(result.passed for result in results), [result.detail for result in results]


@pytest.mark.asyncio
async def test_failing_checks_are_reported(runner: VerificationRunner) -> None:
    def failing(config: EvalConfig, store: CoefficientStore) -> Tuple[bool, str]:
        raise NonConvergenceError("budget exhausted")

    def inconsistent(config: EvalConfig, store: CoefficientStore) -> Tuple[bool, str]:
        raise ConsistencyError("c and d coefficients disagree")

    raised = await runner.run_check("known", "failing", failing)
    mismatched = await runner.run_check("known", "inconsistent", inconsistent)
    assert not raised.passed
    assert raised.detail == "NonConvergenceError: budget exhausted"
    assert not mismatched.passed
    assert mismatched.detail == "ConsistencyError: c and d coefficients disagree"


def test_check_result_record() -> None:
    record = CheckResult(suite="oracle", name="zeros", passed=True).to_record()
    assert record == {"suite": "oracle", "name": "zeros", "passed": True, "detail": ""}


@pytest.mark.parametrize("check", [check_contour, check_residues])
def test_known_value_checks_pass(check: Any) -> None:
    passed, detail = check(EvalConfig(precision=128), CoefficientStore())
    assert passed, detail
