"""Riemann zeta function as the order 1/2 case, zeta(s) = pi^s zeta_{1/2}(s).

Generic points use

    pi^{s-1} sin(s pi/2) [ sum_{n>=1} 2^{2n-1} B_{2n} s / (n (2n)! (2n-s)) + s/(s-1) - ln 2 - 1/s + s E(s) ]

whose sum converges like pi^{-2n}. E is the exponentially small correction at split point 1.
"""

import math
from fractions import Fraction
from typing import Any, Optional, Tuple

from besselzeta.core.config import EvalConfig
from besselzeta.core.errors import NonConvergenceError, PoleError
from besselzeta.core.numerics import BigComplex, BigReal, bernoulli, context, to_mpc, to_mpf
from besselzeta.zeta.classify import GENERIC, PointClass, PointKind, nearest_integer
from besselzeta.zeta.hawkins import MIN_ALPHA_TERMS, geometric_tail
from besselzeta.zeta.remainder import exponential_sum
from besselzeta.zeta.result import EvalResult, Method


def classify_riemann(s: Any, precision: int) -> PointClass:
    n = nearest_integer(s, precision // 2, precision)
    if n is None or (n > 1 and n % 2 == 1):
        return GENERIC
    if n == 0:
        return PointClass(PointKind.ORIGIN)
    if n == 1:
        return PointClass(PointKind.POLE_AT_ONE)
    if n % 2 == 0:
        return PointClass(PointKind.POS_EVEN, n // 2) if n > 0 else PointClass(PointKind.NEG_EVEN, -n // 2)
    return PointClass(PointKind.REMOVED_NEG_ODD, (1 - n) // 2)


def _branch_value(point_class: PointClass, ctx: Any) -> Tuple[Any, str]:
    k = point_class.k or 0
    if point_class.kind is PointKind.ORIGIN:
        return Fraction(-1, 2), "origin"
    if point_class.kind is PointKind.NEG_EVEN:
        return Fraction(0), "trivial-zero"
    if point_class.kind is PointKind.REMOVED_NEG_ODD:
        return -bernoulli(2 * k) / (2 * k), "bernoulli"
    sign = 1 if k % 2 == 1 else -1
    rational = sign * bernoulli(2 * k) / (2 * math.factorial(2 * k))
    return ctx.power(2 * ctx.pi, 2 * k) * to_mpf(ctx, rational), "even"


def _series(s: BigComplex, ctx: Any, tolerance: BigReal, budget: int) -> Tuple[BigComplex, BigReal, int]:
    total = ctx.mpc(0)
    previous: Optional[BigReal] = None
    for n in range(1, budget + 1):
        coefficient = Fraction(2 ** (2 * n - 1)) * bernoulli(2 * n) / (n * math.factorial(2 * n))
        term = to_mpf(ctx, coefficient) * s / (2 * n - s)
        total += term
        if previous is not None and n >= MIN_ALPHA_TERMS:
            tail = geometric_tail(abs(term), previous)
            if tail <= tolerance * max(1, abs(total)):
                return total, tail, n
        previous = abs(term)
    raise NonConvergenceError(f"Bernoulli series for the Riemann zeta function missed tolerance within {budget} terms.")


def riemann(s: Any, config: Optional[EvalConfig] = None) -> EvalResult:
    """Riemann zeta(s) with closed branches at 0, the even integers and the negative odd integers.

    Args:
        s (Any): Point.
        config (Optional[EvalConfig], optional): Precision, budget and tolerance. Defaults to EvalConfig().

    Raises:
        PoleError: Raises at s = 1 with residue 1.

    Returns:
        EvalResult: Value with ``branch`` naming the closed form used, if any.
    """
    config = config or EvalConfig()
    ctx = context(config.working_precision)
    point_class = classify_riemann(s, config.precision)
    if point_class.kind is PointKind.POLE_AT_ONE:
        raise PoleError("The Riemann zeta function has a simple pole at s = 1.", 1, ctx.one)
    if point_class.kind is not PointKind.GENERIC:
        value, branch = _branch_value(point_class, ctx)
        converted = to_mpc(ctx, value)
        return EvalResult(
            value=converted,
            error_estimate=ctx.ldexp(abs(converted), 1 - config.precision),
            classification=point_class,
            alpha_terms_used=0,
            beta_terms_used=0,
            method=Method.CLOSED_FORM,
            precision=config.precision,
            exact=value if isinstance(value, Fraction) else None,
            branch=branch,
        )
    point = to_mpc(ctx, s)
    total, tail, terms = _series(point, ctx, config.tolerance_value(ctx), config.alpha_terms)
    correction, correction_error = exponential_sum(ctx, point, ctx.one, 1)
    bracket = total + point / (point - 1) - ctx.ln2 - 1 / point + point * correction
    prefactor = ctx.power(ctx.pi, point - 1) * ctx.sinpi(point / 2)
    value = prefactor * bracket
    error = abs(prefactor) * (tail + abs(point) * correction_error)
    return EvalResult(
        value=value,
        error_estimate=error + ctx.ldexp(abs(value) + 1, 8 - config.precision),
        classification=point_class,
        alpha_terms_used=terms,
        beta_terms_used=0,
        method=Method.SERIES,
        precision=config.precision,
        split=ctx.one,
    )
