import math
from typing import Any, Tuple

from besselzeta.core.errors import DomainError
from besselzeta.core.numerics import DEFAULT_PRECISION, BigComplex, BigReal, bernoulli, context, to_mpc, to_mpf

DEFAULT_TAIL_ORDER = 8


def _correction(ctx: Any, s: BigComplex, shifted: BigReal, j: int) -> BigComplex:
    """B_{2j}/(2j)! (s)_{2j-1} b^{-s-2j+1}."""
    coefficient = to_mpf(ctx, bernoulli(2 * j) / math.factorial(2 * j))
    return coefficient * ctx.rf(s, 2 * j - 1) * ctx.power(shifted, -s - 2 * j + 1)


def hurwitz_tail(
    s: Any, a: Any, order: int = DEFAULT_TAIL_ORDER, precision: int = DEFAULT_PRECISION
) -> Tuple[BigComplex, BigReal]:
    """Hurwitz zeta sum_{m>=0} (m+a)^-s by Euler-Maclaurin summation.

    The first terms are summed directly until the base b = a + M is large compared with the
    correction order and |s|, then ``order`` Bernoulli corrections are applied at b.

    Args:
        s (Any): Exponent, Re(s) > 1.
        a (Any): Shift, a > 0.
        order (int, optional): Number of Bernoulli corrections. Defaults to DEFAULT_TAIL_ORDER.
        precision (int, optional): Bits. Defaults to DEFAULT_PRECISION.

    Raises:
        DomainError: Raises if Re(s) <= 1 or a <= 0.

    Returns:
        Tuple[BigComplex, BigReal]: Value and the magnitude of the first omitted correction.
    """
    ctx = context(precision)
    point = to_mpc(ctx, s)
    shift = to_mpf(ctx, a)
    if not point.real > 1:
        raise DomainError(f"Hurwitz tails need Re(s) > 1, got {ctx.nstr(point, 10)}.")
    if not shift > 0:
        raise DomainError(f"Hurwitz tails need a > 0, got {ctx.nstr(shift, 10)}.")
    direct_terms = max(0, int(ctx.ceil(2 * order + 16 + abs(point) - shift)))
    head = ctx.fsum(ctx.power(shift + m, -point) for m in range(direct_terms))
    shifted = shift + direct_terms
    value = ctx.power(shifted, 1 - point) / (point - 1) + ctx.power(shifted, -point) / 2
    value += ctx.fsum(_correction(ctx, point, shifted, j) for j in range(1, order + 1))
    error = abs(_correction(ctx, point, shifted, order + 1))
    return head + value, error
