import pytest

from besselzeta.coefficients.store import CoefficientStore
from besselzeta.core.errors import NonConvergenceError
from besselzeta.core.numerics import context
from besselzeta.core.order import Order
from besselzeta.zeta.remainder import (
    HalfOrderRemainder,
    QuadratureRemainder,
    build_remainder,
    exponential_proxy,
    exponential_sum,
)

PRECISION = 128


@pytest.mark.parametrize("sign", [1, -1])
def test_exponential_sum_matches_direct_integral(sign: int) -> None:
    ctx = context(PRECISION)
    s = ctx.mpf("2.5")
    value, error = exponential_sum(ctx, s, ctx.one, sign)
    integral = ctx.quad(lambda x: ctx.ln(1 - sign * ctx.exp(-2 * x)) * ctx.power(x, -s - 1), [1, 4, 16, ctx.inf])
    assert abs(value - integral) < 1e-25
    assert error < 1e-30


def test_exponential_sum_signs_differ_in_leading_term() -> None:
    ctx = context(PRECISION)
    s = ctx.mpf("0.5")
    minus, _ = exponential_sum(ctx, s, ctx.one, 1)
    plus, _ = exponential_sum(ctx, s, ctx.one, -1)
    assert minus.real < 0 < plus.real


def test_exponential_proxy_bounds_leading_term() -> None:
    ctx = context(PRECISION)
    s = ctx.mpf(3)
    value, _ = exponential_sum(ctx, s, ctx.one, 1)
    proxy = exponential_proxy(ctx, s, ctx.one)
    assert proxy > 0
    assert float(abs(s * value)) == pytest.approx(float(proxy), rel=0.1)


def test_quadrature_agrees_with_closed_form_at_half_order() -> None:
    ctx = context(PRECISION)
    order = Order.parse("1/2")
    closed = HalfOrderRemainder(ctx, ctx.one, 1)
    numerical = QuadratureRemainder(order, ctx, ctx.one, 0, CoefficientStore())
    for s in (ctx.mpf("2.5"), ctx.mpf("-0.5"), ctx.mpc("0.5", 3)):
        assert abs(closed.evaluate(s).value - numerical.evaluate(s).value) < 1e-25


def test_quadrature_slope_matches_closed_form_at_half_order() -> None:
    ctx = context(PRECISION)
    closed = HalfOrderRemainder(ctx, ctx.one, 1).evaluate(ctx.mpf("1.5"), with_slope=True)
    numerical = QuadratureRemainder(Order.parse("1/2"), ctx, ctx.one, 0, CoefficientStore()).evaluate(
        ctx.mpf("1.5"), with_slope=True
    )
    assert closed.slope is not None and numerical.slope is not None
    assert abs(closed.slope - numerical.slope) < 1e-20


def test_build_remainder_dispatch() -> None:
    ctx = context(PRECISION)
    store = CoefficientStore()
    assert isinstance(build_remainder(Order.parse("1/2"), ctx, ctx.one, 0, store), HalfOrderRemainder)
    assert isinstance(build_remainder(Order.parse("-1/2"), ctx, ctx.one, 0, store), HalfOrderRemainder)
    assert isinstance(build_remainder(Order.parse("0"), ctx, ctx.one, 4, store), QuadratureRemainder)


@pytest.mark.parametrize("with_slope", [False, True])
def test_quadrature_above_tolerance_raises(with_slope: bool) -> None:
    ctx = context(PRECISION)
    remainder = QuadratureRemainder(Order.parse("0"), ctx, ctx.one, 0, CoefficientStore(), quad_degree=2)
    with pytest.raises(NonConvergenceError, match="Remainder quadrature of the value"):
        remainder.evaluate(ctx.mpf("2.5"), with_slope=with_slope)


def test_quadrature_default_degree_reaches_tolerance() -> None:
    ctx = context(PRECISION)
    remainder = QuadratureRemainder(Order.parse("0"), ctx, ctx.one, 2, CoefficientStore())
    result = remainder.evaluate(ctx.mpf("2.5"), with_slope=True)
    assert result.error < 1e-20
    assert result.slope_error is not None and result.slope_error < 1e-20
