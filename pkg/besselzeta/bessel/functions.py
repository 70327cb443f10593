from typing import Any, Tuple

from besselzeta.core.errors import DomainError
from besselzeta.core.numerics import DEFAULT_PRECISION, BigReal, context, to_mpf
from besselzeta.core.order import Order

# bits added on top of the caller's precision for every Bessel evaluation
GUARD_BITS = 16


def _checked_argument(order: Order, x: Any, precision: int) -> BigReal:
    ctx = context(precision + GUARD_BITS)
    value = to_mpf(ctx, x)
    if value < 0:
        raise DomainError(f"Bessel functions are evaluated for x >= 0 only, got {ctx.nstr(value, 15)}.")
    return value


def eval_j(order: Order, x: Any, precision: int = DEFAULT_PRECISION) -> Tuple[BigReal, BigReal]:
    """J_nu(x) and its derivative J'_nu(x).

    The derivative uses J'_nu = J_{nu-1} - (nu/x) J_nu, which is the half difference
    (J_{nu-1} - J_{nu+1})/2 after eliminating J_{nu+1} by the three term recurrence, so only
    two Bessel evaluations are needed. mpmath raises its internal precision when the ascending
    series cancels, so large x needs no separate code path.

    Args:
        order (Order): Bessel order.
        x (Any): Non-negative argument.
        precision (int, optional): Bits. Defaults to DEFAULT_PRECISION.

    Raises:
        DomainError: Raises for x < 0.

    Returns:
        Tuple[BigReal, BigReal]: (J_nu(x), J'_nu(x)).
    """
    argument = _checked_argument(order, x, precision)
    ctx = context(precision + GUARD_BITS)
    nu = order.as_mpf(ctx)
    if argument == 0:
        return _values_at_origin(ctx, nu)
    value = ctx.besselj(nu, argument)
    previous = ctx.besselj(nu - 1, argument)
    return value, previous - nu * value / argument


def _values_at_origin(ctx: Any, nu: BigReal) -> Tuple[BigReal, BigReal]:
    if nu == 0:
        return ctx.one, ctx.zero
    value = ctx.zero if nu > 0 else ctx.inf
    if nu == 1:
        return value, ctx.mpf(1) / 2
    slope = ctx.zero if nu > 1 else ctx.inf
    return value, slope


def eval_i(order: Order, x: Any, precision: int = DEFAULT_PRECISION) -> BigReal:
    """Modified Bessel function I_nu(x) from its ascending series (all terms positive).

    Raises:
        DomainError: Raises for x < 0.
    """
    argument = _checked_argument(order, x, precision)
    ctx = context(precision + GUARD_BITS)
    return ctx.besseli(order.as_mpf(ctx), argument)
