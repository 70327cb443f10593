import logging
from fractions import Fraction
from typing import Any

import mpmath
import pytest

from besselzeta.coefficients.store import CoefficientStore
from besselzeta.core.config import EvalConfig
from besselzeta.core.errors import DomainError, NonConvergenceError, PoleError, RemovedPointError
from besselzeta.core.numerics import context
from besselzeta.core.order import Order
from besselzeta.zeta.classify import PointClass, PointKind
from besselzeta.zeta.hawkins import (
    HawkinsEvaluator,
    derivative,
    eval_many,
    evaluate,
    geometric_tail,
    optimal_truncation,
    recommended_split,
)
from besselzeta.zeta.result import Method

PRECISION = 256


@pytest.fixture
def store() -> CoefficientStore:
    return CoefficientStore()


@pytest.fixture
def config() -> EvalConfig:
    return EvalConfig(precision=PRECISION)


def half_order_reference(s: Any) -> Any:
    """zeta_{1/2}(s) = pi^-s zeta(s), the zeros of J_{1/2} being n pi."""
    ctx = context(PRECISION + 32)
    point = ctx.convert(s) if not isinstance(s, str) else ctx.mpc(*[ctx.mpf(part) for part in s.split(",")])
    return ctx.power(ctx.pi, -point) * ctx.zeta(point)


def half_order_slope_reference(s: Any) -> Any:
    ctx = context(PRECISION + 32)
    point = ctx.convert(s)
    return ctx.power(ctx.pi, -point) * (ctx.zeta(point, derivative=1) - ctx.ln(ctx.pi) * ctx.zeta(point))


@pytest.mark.parametrize(
    "nu, s, expected, kind",
    [
        ("0", 2, Fraction(1, 4), PointClass(PointKind.POS_EVEN, 1)),
        ("0", 0, Fraction(-1, 4), PointClass(PointKind.ORIGIN)),
        ("0", -2, Fraction(1, 16), PointClass(PointKind.NEG_EVEN, 1)),
        ("1/2", 2, Fraction(1, 6), PointClass(PointKind.POS_EVEN, 1)),
        ("1/2", -4, Fraction(0), PointClass(PointKind.NEG_EVEN, 2)),
        ("-1/2", 2, Fraction(1, 2), PointClass(PointKind.POS_EVEN, 1)),
    ],
)
def test_closed_form_values(
    store: CoefficientStore, config: EvalConfig, nu: str, s: int, expected: Fraction, kind: PointClass
) -> None:
    result = evaluate(nu, s, config, store)
    assert result.exact == expected
    assert result.classification == kind
    assert result.method is Method.CLOSED_FORM
    assert result.alpha_terms_used == result.beta_terms_used == 0


@pytest.mark.parametrize("nu", ["0", "1/4", "1/2", "1", "3/2"])
def test_origin_value(store: CoefficientStore, config: EvalConfig, nu: str) -> None:
    order = Order.parse(nu)
    assert evaluate(order, 0, config, store).exact == -(order.value + Fraction(1, 2)) / 2


@pytest.mark.parametrize("nu", ["0", "1/4", "1"])
def test_negative_even_values_match_hawkins_coefficients(store: CoefficientStore, config: EvalConfig, nu: str) -> None:
    order = Order.parse(nu)
    c_table = store.table("c", order, 12)
    for k in range(1, 7):
        assert evaluate(order, -2 * k, config, store).exact == (-1) ** k * c_table[2 * k - 1] / 2


@pytest.mark.parametrize("pole, numerator", [(1, "1"), (-1, "0.125")])
def test_poles_raise_with_residue(store: CoefficientStore, config: EvalConfig, pole: int, numerator: str) -> None:
    ctx = context(PRECISION)
    with pytest.raises(PoleError) as error:
        evaluate("0", pole, config, store)
    assert error.value.pole == pole
    assert abs(error.value.residue - ctx.mpf(numerator) / ctx.pi) < 1e-40
    with pytest.raises(PoleError):
        derivative("0", pole, config, store)


def test_removed_points(store: CoefficientStore, config: EvalConfig) -> None:
    result = evaluate("1/2", -3, config, store)
    assert result.branch == "bernoulli"
    assert result.classification == PointClass(PointKind.REMOVED_NEG_ODD, 2)
    assert abs(result.value - half_order_reference(-3)) < 1e-60
    with pytest.raises(RemovedPointError):
        evaluate("-1/2", -1, config, store)


@pytest.mark.parametrize("s", [-1, -3])
def test_removed_points_have_no_slope_at_negative_half_order(
    store: CoefficientStore, config: EvalConfig, s: int
) -> None:
    with pytest.raises(RemovedPointError, match="removed point"):
        derivative("-1/2", s, config, store)
    with pytest.raises(RemovedPointError):
        HawkinsEvaluator("-1/2", config, store).slope(s)


@pytest.mark.parametrize("s", ["0.5", "2.5", "3", "-1.5", "1.5,2"])
def test_half_order_matches_riemann_zeta(store: CoefficientStore, config: EvalConfig, s: str) -> None:
    result = evaluate("1/2", s, config, store)
    assert result.method is Method.SERIES
    assert abs(result.value - half_order_reference(s)) < 1e-30
    assert result.error_estimate < 1e-30


def test_half_order_split_invariance(store: CoefficientStore) -> None:
    ctx = context(PRECISION)
    for s in ("0.5", "2.5", "-1.5"):
        at_one = evaluate("1/2", s, EvalConfig(precision=PRECISION, split_T=1), store)
        at_two = evaluate("1/2", s, EvalConfig(precision=PRECISION, split_T=2), store)
        assert abs(at_one.value - at_two.value) < ctx.ldexp(1, 64 - PRECISION)


def test_generic_value_at_order_zero_is_self_consistent(store: CoefficientStore) -> None:
    at_one = evaluate("0", "2.5", EvalConfig(precision=128, split_T=1), store)
    at_auto = evaluate("0", "2.5", EvalConfig(precision=128, split_T="auto"), store)
    assert abs(at_one.value - at_auto.value) <= at_one.error_estimate + at_auto.error_estimate
    assert at_one.beta_terms_used >= 0
    assert at_one.alpha_terms_used >= 4


def test_fixed_truncation_error_covers_first_omitted_term(store: CoefficientStore) -> None:
    config = EvalConfig(precision=128, beta_policy="fixed", beta_terms=3, remainder="none")
    result = evaluate("0", "2.5", config, store)
    ctx = context(config.working_precision)
    s = ctx.mpf("2.5")
    # T = 1, so the omitted term is beta_4 s / (4 + s) times the prefactor
    omitted = abs(ctx.sinpi(s / 2) / ctx.pi * ctx.mpf(13) / 128 * s / (4 + s))
    assert result.beta_terms_used == 3
    assert result.error_estimate >= omitted


def test_split_point_checks(store: CoefficientStore) -> None:
    ctx = context(PRECISION)
    with pytest.raises(DomainError):
        evaluate("0", "2.5", EvalConfig(split_T=3), store)
    split = recommended_split(Order.parse("0"), PRECISION)
    assert abs(split - ctx.mpf("0.8") * ctx.mpf("2.404825557695772768621631879326")) < 1e-20
    assert recommended_split(Order.parse("3"), PRECISION) == 2
    evaluator = HawkinsEvaluator("0", EvalConfig(split_T="auto"), store)
    assert abs(evaluator.split_point() - split) < 1e-60


def test_alpha_budget_exhaustion(store: CoefficientStore) -> None:
    with pytest.raises(NonConvergenceError):
        evaluate("1/2", "2.5", EvalConfig(alpha_terms=4), store)


def test_near_dispatch_point_snaps(
    store: CoefficientStore, config: EvalConfig, caplog: pytest.LogCaptureFixture
) -> None:
    result = evaluate("0", "2.0000000000000000000000000000001", config, store)
    assert result.exact == Fraction(1, 4)
    assert "evaluating at 2" in caplog.text


@pytest.mark.parametrize("nu", ["0", "1/2", "1"])
def test_slope_at_origin(store: CoefficientStore, config: EvalConfig, nu: str) -> None:
    ctx = context(PRECISION)
    order = Order.parse(nu)
    value = order.as_mpf(ctx)
    expected = ctx.ln(ctx.power(2, value) * ctx.gamma(value + 1) / ctx.sqrt(2 * ctx.pi)) / 2
    result = derivative(order, 0, config, store)
    assert result.method is Method.CLOSED_FORM
    assert abs(result.value - expected) < 1e-40


def test_slope_matches_central_difference(store: CoefficientStore, config: EvalConfig) -> None:
    ctx = context(PRECISION)
    step = ctx.mpf("1e-12")
    for s in ("0.5", "2.5", "-1.5"):
        point = ctx.mpf(s)
        upper = evaluate("1/2", point + step, config, store).value
        lower = evaluate("1/2", point - step, config, store).value
        difference = (upper - lower) / (2 * step)
        assert abs(derivative("1/2", s, config, store).value - difference) < 1e-20


@pytest.mark.parametrize("s", [2, 4, 6, -2, -4, -6])
def test_slope_closed_forms_at_even_integers(store: CoefficientStore, config: EvalConfig, s: int) -> None:
    result = derivative("1/2", s, config, store)
    assert abs(result.value - half_order_slope_reference(s)) < 1e-30


@pytest.mark.parametrize("s", [2, 4, 6, -2, -4, -6])
def test_slope_at_even_integers_is_finite_for_order_zero(store: CoefficientStore, s: int) -> None:
    result = derivative("0", s, EvalConfig(precision=128), store)
    assert mpmath.isfinite(result.value.real)
    assert result.error_estimate < 1e-3
    assert result.classification.kind in (PointKind.POS_EVEN, PointKind.NEG_EVEN)


def test_eval_many(store: CoefficientStore, config: EvalConfig) -> None:
    results = eval_many("0", [0, 2, -2], config, store)
    assert [result.exact for result in results] == [Fraction(-1, 4), Fraction(1, 4), Fraction(1, 16)]


def test_truncation_helpers() -> None:
    magnitudes = [mpmath.mpf(value) for value in (0, 1, "0.5", "0.125", "0.25", 1)]
    assert optimal_truncation(magnitudes) == (2, mpmath.mpf("0.375"))
    assert geometric_tail(mpmath.mpf(0), mpmath.mpf(1)) == 0
    assert geometric_tail(mpmath.mpf("0.1"), mpmath.mpf("0.2")) == mpmath.mpf("0.1")
    assert geometric_tail(mpmath.mpf(2), mpmath.mpf(1)) == 2000


def test_debug_logs_truncation(store: CoefficientStore, caplog: pytest.LogCaptureFixture) -> None:
    caplog.set_level(logging.DEBUG)
    evaluate("1/2", "2.5", EvalConfig(precision=128), store)
    assert "Infinity series for nu=1/2 truncated" in caplog.text
