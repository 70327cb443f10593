"""The incomplete contour representation Z_nu(s).

Z_nu(s) = sin(s pi/2)/(2 pi) times

    sum_{n>=1} a_n 2^{1-2n} T^{2n-s}/(2n-s) + 2 T^{1-s}/(s-1) - (1+2nu) T^{-s}/s
    + (nu^2 - 1/4) sum_{n=2}^{B} d_n T^{1-n-s}/(s+n-1)

It agrees with zeta_nu at the origin, the even integers and the poles but drops the arc
contributions, so it differs from zeta_nu elsewhere, in particular in slope at the origin.
"""

from fractions import Fraction
from typing import Any, List, Optional, Tuple, Union

from besselzeta.coefficients.store import CoefficientStore
from besselzeta.core.config import EvalConfig
from besselzeta.core.errors import NonConvergenceError
from besselzeta.core.numerics import BigComplex, BigReal, to_mpc, to_mpf
from besselzeta.zeta.classify import PointClass, PointKind
from besselzeta.zeta.hawkins import MIN_ALPHA_TERMS, HawkinsEvaluator, geometric_tail, optimal_truncation
from besselzeta.zeta.result import EvalResult, Method


class ContourEvaluator(HawkinsEvaluator):
    """Evaluates Z_nu, sharing split point, classification and coefficient access with zeta_nu."""

    def _d_scale(self) -> Union[Fraction, BigReal]:
        """nu^2 - 1/4, which switches the d-series off at nu = +-1/2."""
        nu = self._order.coerce(self._config.working_precision)
        return nu * nu - self._order.rational(1, 4, self._config.working_precision)

    def _z_closed_form(self, point_class: PointClass) -> Union[Fraction, BigReal]:
        k = point_class.k or 0
        precision = self._table_precision()
        if point_class.kind is PointKind.ORIGIN:
            nu = self._order.coerce(self._config.working_precision)
            return -(nu + self._order.rational(1, 2, self._config.working_precision)) / 2
        if point_class.kind is PointKind.POS_EVEN:
            sign = 1 if k % 2 == 1 else -1
            return sign * self._store.table("a", self._order, k + 1, precision)[k] / 2 ** (2 * k + 1)
        if self._order.is_half_odd:
            return self._order.rational(0, 1, self._config.working_precision)
        sign = 1 if k % 2 == 0 else -1
        return sign * self._d_scale() * self._store.table("d", self._order, 2 * k, precision)[2 * k + 1] / 4

    def _origin_series(self, s: BigComplex, split: BigReal) -> Tuple[BigComplex, BigReal, int]:
        ctx = self._ctx
        tolerance = self._config.tolerance_value(ctx)
        budget = self._config.alpha_terms
        table = self._store.table("a", self._order.numeric(), budget + 1, self._config.working_precision)
        square = split * split
        power = ctx.power(split, -s)
        total = ctx.mpc(0)
        previous: Optional[BigReal] = None
        for n in range(1, budget + 1):
            power *= square
            term = ctx.convert(table[n]) * power * ctx.ldexp(1, 1 - 2 * n) / (2 * n - s)
            total += term
            if previous is not None and n >= MIN_ALPHA_TERMS:
                tail = geometric_tail(abs(term), previous)
                if tail <= tolerance * max(1, abs(total)):
                    return total, tail, n
            previous = abs(term)
        raise NonConvergenceError(
            f"Origin series of Z_{self._order.text} did not reach tolerance within {budget} terms."
        )

    def _d_series(self, s: BigComplex, split: BigReal) -> Tuple[BigComplex, BigReal, int]:
        """Asymptotic d-series, truncated like the infinity series; returns sum, error and last index."""
        ctx = self._ctx
        if self._order.is_half_odd:
            return ctx.mpc(0), ctx.zero, 0
        scale = to_mpf(ctx, self._d_scale())
        scan = max(int(4 * split) + 24, (self._config.beta_terms or 0) + 3)
        table = self._store.table("d", self._order.numeric(), scan + 1, self._config.working_precision)
        # position j holds the term of d_{j+1}
        terms: List[BigComplex] = [ctx.mpc(0)]
        for n in range(2, scan + 2):
            d = ctx.convert(table[n])
            terms.append(ctx.mpc(0) if d == 0 else scale * d * ctx.power(split, 1 - n - s) / (s + n - 1))
        magnitudes = [abs(term) for term in terms]
        if self._config.beta_policy == "fixed":
            # with a fixed depth B, Z is the finite sum up to d_B and carries no truncation error
            count = max(1, self._config.beta_terms or 1) - 1
            error = ctx.zero
        else:
            count, error = optimal_truncation(magnitudes)
        return ctx.fsum(terms[1 : count + 1]), error, count + 1 if count else 0

    def z_value(self, s: Any) -> EvalResult:
        """Z_nu(s).

        Raises:
            PoleError: Raises at the poles of zeta_nu, which Z_nu shares with the same residues.
        """
        point_class = self.classify(s)
        self.raise_for_pole(point_class)
        if point_class.is_dispatch_point:
            return self._closed_result(self._z_closed_form(point_class), point_class)
        ctx = self._ctx
        point = to_mpc(ctx, s)
        split = self.split_point()
        nu = self._order.as_mpf(ctx)
        origin, origin_error, origin_terms = self._origin_series(point, split)
        d_total, d_error, d_terms = self._d_series(point, split)
        bracket = origin + d_total
        bracket += 2 * ctx.power(split, 1 - point) / (point - 1) - (1 + 2 * nu) * ctx.power(split, -point) / point
        prefactor = ctx.sinpi(point / 2) / (2 * ctx.pi)
        value = prefactor * bracket
        return EvalResult(
            value=value,
            error_estimate=abs(prefactor) * (origin_error + d_error) + self._roundoff(value),
            classification=point_class,
            alpha_terms_used=origin_terms,
            beta_terms_used=d_terms,
            method=Method.SERIES,
            precision=self._config.precision,
            split=split,
        )

    def z_slope_at_origin(self) -> EvalResult:
        """Z_nu'(0) = Q(0)/4 + (1+2nu) ln T / 4 with Q the bracket without its 1/s term."""
        ctx = self._ctx
        split = self.split_point()
        nu = self._order.as_mpf(ctx)
        zero = ctx.mpc(0)
        origin, origin_error, origin_terms = self._origin_series(zero, split)
        d_total, d_error, d_terms = self._d_series(zero, split)
        regular = origin + d_total - 2 * split
        value = ctx.mpc(regular / 4 + (1 + 2 * nu) * ctx.ln(split) / 4)
        return EvalResult(
            value=value,
            error_estimate=(origin_error + d_error) / 4 + self._roundoff(value),
            classification=PointClass(PointKind.ORIGIN),
            alpha_terms_used=origin_terms,
            beta_terms_used=d_terms,
            method=Method.SERIES,
            precision=self._config.precision,
            split=split,
        )


def z_repr(
    order: Any, s: Any, config: Optional[EvalConfig] = None, store: Optional[CoefficientStore] = None
) -> EvalResult:
    return ContourEvaluator(order, config, store).z_value(s)


def z_slope_at_origin(
    order: Any, config: Optional[EvalConfig] = None, store: Optional[CoefficientStore] = None
) -> EvalResult:
    return ContourEvaluator(order, config, store).z_slope_at_origin()
