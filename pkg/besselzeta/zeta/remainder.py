"""Exponentially small remainder of the infinity expansion.

The expansion ln(2^nu Gamma(nu+1) x^-nu I_nu(x)) ~ x + beta_0 - (nu+1/2) ln x + sum beta_n x^-n
drops terms of size e^{-2x}. After truncating the sum at n = B, the remainder R_B(x) enters
zeta_nu(s) through s E_B(s) with

    E_B(s) = integral_T^inf R_B(x) x^{-s-1} dx.

At nu = +-1/2 the remainder is ln(1 -+ e^{-2x}) exactly and E_B is a sum of upper incomplete
gamma functions. For other orders E_B is integrated numerically up to a cut X with
e^{-2X} < 2^-P, beyond which the asymptotic tail is summed in closed form.
"""

import dataclasses
from typing import Any, Callable, Dict, List, Optional, Tuple

from mpmath import MPContext

from besselzeta.coefficients.store import CoefficientStore
from besselzeta.core.errors import NonConvergenceError
from besselzeta.core.numerics import BigComplex, BigReal
from besselzeta.core.order import Order

MAX_EXPONENTIAL_TERMS = 100000


@dataclasses.dataclass(frozen=True)
class RemainderValue:
    """E_B(s) and, when requested, dE_B/ds with their error estimates."""

    value: BigComplex
    error: BigReal
    slope: Optional[BigComplex] = None
    slope_error: Optional[BigReal] = None


def exponential_sum(ctx: MPContext, s: BigComplex, split: BigReal, sign: int) -> Tuple[BigComplex, BigReal]:
    """-sum_{m>=1} sign^m (2m)^s Gamma(-s, 2mT)/m, the remainder integral for R = ln(1 - sign e^{-2x}).

    Args:
        ctx (MPContext): Working context.
        s (BigComplex): Point.
        split (BigReal): Lower limit T.
        sign (int): +1 for nu = 1/2 (and the Riemann case), -1 for nu = -1/2.

    Raises:
        NonConvergenceError: Raises if the term budget is exhausted.

    Returns:
        Tuple[BigComplex, BigReal]: Value and the magnitude of the last term added.
    """
    total = ctx.mpc(0)
    threshold = ctx.eps
    for m in range(1, MAX_EXPONENTIAL_TERMS):
        term = ctx.power(2 * m, s) * ctx.gammainc(-s, 2 * m * split) / m
        if sign < 0 and m % 2 == 1:
            term = -term
        total += term
        if abs(term) <= threshold * max(1, abs(total)):
            return -total, abs(term)
    raise NonConvergenceError("Exponential remainder sum did not converge.")


def exponential_proxy(ctx: MPContext, s: BigComplex, split: BigReal) -> BigReal:
    """|s integral_T^inf e^{-2x} x^{-s-1} dx|, the size of the leading dropped remainder term."""
    return abs(s * ctx.power(2, s) * ctx.gammainc(-s, 2 * split))


class HalfOrderRemainder:
    """Closed form remainder at nu = +-1/2, where every beta_n with n >= 1 vanishes."""

    def __init__(self, ctx: MPContext, split: BigReal, sign: int):
        self._ctx = ctx
        self._split = split
        self._sign = sign

    def evaluate(self, s: BigComplex, with_slope: bool = False) -> RemainderValue:
        value, error = exponential_sum(self._ctx, s, self._split, self._sign)
        if not with_slope:
            return RemainderValue(value=value, error=error)
        slope = self._ctx.diff(lambda z: exponential_sum(self._ctx, z, self._split, self._sign)[0], s)
        return RemainderValue(value=value, error=error, slope=slope, slope_error=error * (1 + abs(s)))


class QuadratureRemainder:
    """Numerical remainder for general nu.

    Args:
        order (Order): Bessel order.
        ctx (MPContext): Working context.
        split (BigReal): Lower limit T.
        truncation (int): B, number of beta_n (n >= 1) already summed by the caller.
        store (CoefficientStore): Source of the float beta table.
        quad_degree (Optional[int]): Maximum Gauss-Legendre degree.
    """

    def __init__(
        self,
        order: Order,
        ctx: MPContext,
        split: BigReal,
        truncation: int,
        store: CoefficientStore,
        quad_degree: Optional[int] = None,
    ):
        self._ctx = ctx
        self._split = split
        self._truncation = truncation
        self._quad_degree = quad_degree
        self._nu = order.as_mpf(ctx)
        # e^{-2X} < 2^-prec
        self._cut = max(4 * split, ctx.mpf(ctx.prec) * ctx.ln2 / 2 + 4)
        self._tail_count = int(3 * self._cut) + truncation + 8
        betas = store.table("beta", order.numeric(), self._tail_count + 1, ctx.prec)
        self._betas: List[BigReal] = [ctx.convert(betas[n]) for n in betas.indices()]
        self._log_norm = self._nu * ctx.ln2 + ctx.loggamma(self._nu + 1)
        self._cache: Dict[Any, BigReal] = {}

    def _remainder(self, x: BigReal) -> BigReal:
        cached = self._cache.get(x)
        if cached is not None:
            return cached
        ctx = self._ctx
        log_x = ctx.ln(x)
        value = self._log_norm + ctx.ln(ctx.besseli(self._nu, x)) - self._nu * log_x
        value -= x + self._betas[0] - (self._nu + ctx.mpf(1) / 2) * log_x
        inverse = 1 / x
        power = inverse
        for n in range(1, self._truncation + 1):
            value -= self._betas[n] * power
            power *= inverse
        self._cache[x] = value
        return value

    def _nodes(self) -> List[BigReal]:
        nodes = [self._split]
        while nodes[-1] * 2 < self._cut:
            nodes.append(nodes[-1] * 2)
        nodes.append(self._cut)
        return nodes

    def _integrate(self, integrand: Callable[[BigReal], BigComplex]) -> Tuple[BigComplex, BigReal]:
        options: Dict[str, Any] = {"method": "gauss-legendre", "error": True}
        if self._quad_degree is not None:
            options["maxdegree"] = self._quad_degree
        value, error = self._ctx.quad(integrand, self._nodes(), **options)
        return value, abs(error)

    def _check_quadrature(self, part: str, value: BigComplex, error: BigReal) -> None:
        ctx = self._ctx
        tolerance = ctx.ldexp(1, 24 - ctx.prec) * max(1, abs(value))
        if error > tolerance:
            raise NonConvergenceError(
                f"Remainder quadrature of the {part} reached error {ctx.nstr(error, 5)} above {ctx.nstr(tolerance, 5)}."
            )

    def _tail(self, s: BigComplex, with_slope: bool) -> Tuple[BigComplex, BigComplex, BigReal]:
        """Asymptotic tail beyond the cut, stopped at its smallest term."""
        ctx = self._ctx
        log_cut = ctx.ln(self._cut)
        total = ctx.mpc(0)
        slope = ctx.mpc(0)
        smallest = None
        for n in range(self._truncation + 1, len(self._betas)):
            if self._betas[n] == 0:
                continue
            magnitude = abs(self._betas[n]) * self._cut ** (-n)
            if smallest is not None and magnitude > smallest:
                break
            term = self._betas[n] * ctx.power(self._cut, -n - s) / (n + s)
            total += term
            if with_slope:
                slope += term * (-log_cut - 1 / (n + s))
            smallest = magnitude if smallest is None else min(smallest, magnitude)
        error = (smallest or ctx.zero) * abs(ctx.power(self._cut, -s)) + ctx.exp(-2 * self._cut)
        return total, slope, error

    def evaluate(self, s: BigComplex, with_slope: bool = False) -> RemainderValue:
        ctx = self._ctx
        value, quad_error = self._integrate(lambda x: self._remainder(x) * ctx.power(x, -s - 1))
        tail, tail_slope, tail_error = self._tail(s, with_slope)
        self._check_quadrature("value", value, quad_error)
        if not with_slope:
            return RemainderValue(value=value + tail, error=quad_error + tail_error)
        slope, slope_error = self._integrate(lambda x: -self._remainder(x) * ctx.ln(x) * ctx.power(x, -s - 1))
        self._check_quadrature("slope", slope, slope_error)
        return RemainderValue(
            value=value + tail,
            error=quad_error + tail_error,
            slope=slope + tail_slope,
            slope_error=slope_error + tail_error * (1 + abs(ctx.ln(self._cut))),
        )


def build_remainder(
    order: Order,
    ctx: MPContext,
    split: BigReal,
    truncation: int,
    store: CoefficientStore,
    quad_degree: Optional[int] = None,
) -> Any:
    """Closed form remainder at nu = +-1/2, numerical remainder otherwise."""
    if order.is_half_odd:
        return HalfOrderRemainder(ctx, split, 1 if order.value > 0 else -1)
    return QuadratureRemainder(order, ctx, split, truncation, store, quad_degree)
