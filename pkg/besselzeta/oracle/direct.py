"""Brute-force zeta_nu(s) for Re(s) > 1 from the zeros themselves.

The first N zeros are summed directly. Beyond them the zeros are replaced by their leading
McMahon approximants (n + nu/2 - 1/4) pi, whose sum is a Hurwitz zeta value.
"""

import dataclasses
from typing import Any, Optional, Tuple

from besselzeta.bessel.zeros import ZeroFinder, mcmahon, zeros
from besselzeta.core.errors import DomainError
from besselzeta.core.numerics import DEFAULT_PRECISION, BigComplex, BigReal, context, to_mpc
from besselzeta.core.order import Order
from besselzeta.oracle.euler_maclaurin import DEFAULT_TAIL_ORDER, hurwitz_tail

MIN_TERMS = 16
# zeros used to extrapolate the McMahon residual
RESIDUAL_WINDOW = 8


@dataclasses.dataclass(frozen=True)
class OracleResult:
    """Direct sum with its tail correction.

    Args:
        value (BigComplex): Partial sum plus tail correction.
        partial_terms (int): Zeros summed directly.
        tail_estimate (BigReal): Bound on the error of the tail correction.
        tail_method (str): ``euler-maclaurin`` or ``integral-bound``.
    """

    value: BigComplex
    partial_terms: int
    tail_estimate: BigReal
    tail_method: str

    def __post_init__(self) -> None:
        if self.partial_terms < MIN_TERMS:
            raise ValueError(f"Oracle sums need at least {MIN_TERMS} zeros.")
        if self.tail_estimate < 0:
            raise ValueError("Tail estimates are non-negative.")


def _integral_tail(ctx: Any, s: BigComplex, a: BigReal) -> Tuple[BigComplex, BigReal]:
    """Midpoint integral sum_{m>=0} (m+a)^-s ~ (a-1/2)^{1-s}/(s-1) and twice its leading error."""
    start = a - ctx.mpf(1) / 2
    value = ctx.power(start, 1 - s) / (s - 1)
    error = abs(s) * ctx.power(start, -s.real - 1) / 12
    return value, error


def direct_sum(
    order: Any,
    s: Any,
    terms: int,
    precision: int = DEFAULT_PRECISION,
    tail_order: int = DEFAULT_TAIL_ORDER,
    finder: Optional[ZeroFinder] = None,
) -> OracleResult:
    """sum_{n<=N} j_{nu,n}^-s + pi^-s zeta_H(s, N + 1 + nu/2 - 1/4).

    Args:
        order (Any): Bessel order.
        s (Any): Point with Re(s) > 1.
        terms (int): N, at least 16.
        precision (int, optional): Bits for zeros and sums. Defaults to DEFAULT_PRECISION.
        tail_order (int, optional): Bernoulli corrections of the tail, 0 for the integral bound. Defaults to 8.
        finder (Optional[ZeroFinder], optional): Zero cache. Defaults to the process finder.

    Raises:
        DomainError: Raises if Re(s) <= 1 or N < 16.

    Returns:
        OracleResult: Value and tail estimate.
    """
    order = Order.of(order)
    ctx = context(precision)
    point = to_mpc(ctx, s)
    if not point.real > 1:
        raise DomainError(f"The direct sum converges only for Re(s) > 1, got {ctx.nstr(point, 10)}.")
    if terms < MIN_TERMS:
        raise DomainError(f"The direct sum needs at least {MIN_TERMS} zeros, got {terms}.")
    table = zeros(order, terms, precision, finder)
    partial = ctx.fsum(ctx.power(zero, -point) for zero in table.zeros)

    sigma = point.real
    residual_scale = ctx.zero
    for n in range(terms - RESIDUAL_WINDOW + 1, terms + 1):
        approximant = mcmahon(order, n, ctx)
        difference = abs(ctx.power(table.zero(n), -point) - ctx.power(approximant, -point))
        residual_scale = max(residual_scale, difference * ctx.power(approximant, sigma + 2))
    last_approximant = mcmahon(order, terms, ctx)
    residual = 2 * residual_scale * ctx.power(last_approximant, -sigma - 1) / (ctx.pi * (sigma + 1))

    shift = terms + 1 + order.as_mpf(ctx) / 2 - ctx.mpf(1) / 4
    if tail_order > 0:
        tail, tail_error = hurwitz_tail(point, shift, tail_order, precision)
        method = "euler-maclaurin"
    else:
        tail, tail_error = _integral_tail(ctx, point, shift)
        method = "integral-bound"
    scale = ctx.power(ctx.pi, -point)
    value = partial + scale * tail
    estimate = residual + abs(scale) * tail_error + ctx.ldexp(abs(value), 16 - precision)
    return OracleResult(value=value, partial_terms=terms, tail_estimate=estimate, tail_method=method)


def refine(
    order: Any, s: Any, terms: int, precision: int = DEFAULT_PRECISION, finder: Optional[ZeroFinder] = None
) -> Tuple[OracleResult, OracleResult]:
    """Direct sums with N and 2N zeros, for checking that the estimate covers the refinement."""
    coarse = direct_sum(order, s, terms, precision, finder=finder)
    return coarse, direct_sum(order, s, 2 * terms, precision, finder=finder)
