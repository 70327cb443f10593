"""Evaluation of zeta_nu(s) through the split point series.

With a split point T below the first zero, zeta_nu(s) = sin(s pi/2)/pi times the bracket

    sum_{n>=1} (-1)^{n+1} alpha_n s T^{2n-s}/(2n-s)
    + s T^{1-s}/(s-1) + beta_0 T^{-s} + sum_{n=1}^{B} beta_n s T^{-n-s}/(n+s)
    - (nu+1/2) T^{-s} (ln T + 1/s) + s E_B(s)

where E_B is the exponentially small remainder (see :mod:`besselzeta.zeta.remainder`).
The origin and the even integers are dispatched to exact closed forms.
"""

import dataclasses
import logging
from fractions import Fraction
from typing import Any, Iterable, List, Optional, Tuple, Union

from besselzeta.bessel.zeros import first_zero
from besselzeta.coefficients.store import CoefficientStore, default_store
from besselzeta.core.config import AUTO_SPLIT, EvalConfig
from besselzeta.core.errors import DomainError, NonConvergenceError, PoleError, RemovedPointError
from besselzeta.core.numerics import DEFAULT_PRECISION, BigComplex, BigReal, bernoulli, context, to_mpc, to_mpf
from besselzeta.core.order import Order
from besselzeta.zeta.classify import PointClass, PointKind, classify, classify_integer, nearest_integer
from besselzeta.zeta.remainder import build_remainder, exponential_proxy
from besselzeta.zeta.result import EvalResult, Method
from besselzeta.zeta.special import residue

# at least this many origin terms before the tail estimate is trusted
MIN_ALPHA_TERMS = 4
ALPHA_CHUNK = 64


@dataclasses.dataclass
class Bracket:
    """Bracketed series part of the representation and its s-derivative."""

    value: BigComplex
    slope: BigComplex
    error: BigReal
    slope_error: BigReal
    alpha_terms: int
    beta_terms: int


def recommended_split(order: Order, precision: int = DEFAULT_PRECISION) -> BigReal:
    """min(2, 0.8 j_{nu,1}): the origin series still converges geometrically and T^-n damps the infinity series."""
    ctx = context(precision)
    return min(ctx.mpf(2), ctx.mpf(4) / 5 * first_zero(Order.of(order), precision))


class HawkinsEvaluator:
    """Evaluates zeta_nu and its derivative for one order and configuration.

    Args:
        order (Order): Bessel order.
        config (Optional[EvalConfig], optional): Evaluation settings. Defaults to EvalConfig().
        store (Optional[CoefficientStore], optional): Coefficient store. Defaults to the process store.

    Attributes:
        _order (Order): Bessel order.
        _config (EvalConfig): Evaluation settings.
        _store (CoefficientStore): Coefficient store.
        _ctx (MPContext): Context at the working precision.
    """

    def __init__(self, order: Any, config: Optional[EvalConfig] = None, store: Optional[CoefficientStore] = None):
        self._order = Order.of(order)
        self._config = config or EvalConfig()
        self._store = store or default_store()
        self._ctx = context(self._config.working_precision)

    @property
    def order(self) -> Order:
        return self._order

    @property
    def config(self) -> EvalConfig:
        return self._config

    def split_point(self) -> BigReal:
        """Split point T, checked against the first zero of J_nu.

        Raises:
            DomainError: Raises if T >= j_{nu,1}.
        """
        if self._config.split_T == AUTO_SPLIT:
            return self._ctx.convert(recommended_split(self._order, self._config.precision))
        split = to_mpf(self._ctx, self._config.split_T)
        first = first_zero(self._order, self._config.precision)
        if split >= first:
            raise DomainError(
                f"Split point {self._ctx.nstr(split, 10)} is not below the first zero {self._ctx.nstr(first, 10)}."
            )
        return split

    # classification

    def classify(self, s: Any) -> PointClass:
        """Classify s, snapping generic points within 2^(-P/4) of the origin or an even integer."""
        point_class = classify(self._order, s, self._config.precision, self._store)
        if point_class.kind is not PointKind.GENERIC:
            return point_class
        nearby = nearest_integer(s, self._config.precision // 4, self._config.precision)
        if nearby is None:
            return point_class
        snapped = classify_integer(self._order, nearby, self._config.precision, self._store)
        if snapped.is_dispatch_point:
            logging.warning(f"s lies within 2^-{self._config.precision // 4} of {nearby}, evaluating at {nearby}.")
            return snapped
        return point_class

    def raise_for_pole(self, point_class: PointClass) -> None:
        if point_class.is_pole and point_class.pole is not None:
            pole_residue = residue(self._order, point_class.pole, self._config.precision, self._store)
            message = f"zeta_{self._order.text} has a simple pole at s = {point_class.pole}."
            raise PoleError(message, point_class.pole, pole_residue)

    # coefficient access

    def _table_precision(self) -> int:
        return self._config.precision if self._order.exact else self._config.working_precision

    def _alpha(self, k: int) -> Union[Fraction, BigReal]:
        return self._store.table("alpha", self._order, k, self._table_precision())[k]

    def _beta(self, n: int) -> Union[Fraction, BigReal]:
        return self._store.table("beta", self._order, n + 1, self._table_precision())[n]

    # closed forms

    def _closed_form(self, point_class: PointClass) -> Union[Fraction, BigReal]:
        nu = self._order.coerce(self._config.working_precision)
        k = point_class.k or 0
        if point_class.kind is PointKind.ORIGIN:
            return -(nu + self._order.rational(1, 2, self._config.working_precision)) / 2
        if point_class.kind is PointKind.POS_EVEN:
            return k * self._alpha(k)
        sign = 1 if k % 2 == 1 else -1
        return sign * k * self._beta(2 * k)

    def _closed_result(
        self, value: Union[Fraction, BigReal], point_class: PointClass, branch: Optional[str] = None
    ) -> EvalResult:
        ctx = self._ctx
        exact = value if isinstance(value, Fraction) else None
        converted = to_mpc(ctx, value)
        return EvalResult(
            value=converted,
            error_estimate=ctx.ldexp(abs(converted), 1 - self._config.precision),
            classification=point_class,
            alpha_terms_used=0,
            beta_terms_used=0,
            method=Method.CLOSED_FORM,
            precision=self._config.precision,
            exact=exact,
            branch=branch,
        )

    def _raise_for_unresolved(self, point_class: PointClass) -> None:
        """Removed points have no value or slope at nu = -1/2."""
        if point_class.kind is PointKind.REMOVED_NEG_ODD and self._order.value < 0:
            k = point_class.k or 0
            raise RemovedPointError(f"s = {1 - 2 * k} is a removed point of zeta_{self._order.text} with no fallback.")

    def _removed_point(self, point_class: PointClass) -> EvalResult:
        """Bernoulli value pi^{2k-1} (-B_{2k}/(2k)) at s = 1-2k for nu = 1/2."""
        self._raise_for_unresolved(point_class)
        k = point_class.k or 0
        ctx = self._ctx
        value = ctx.power(ctx.pi, 2 * k - 1) * to_mpf(ctx, -bernoulli(2 * k) / (2 * k))
        return self._closed_result(value, point_class, branch="bernoulli")

    # series parts

    def _alpha_series(
        self, s: BigComplex, split: BigReal, with_slope: bool, skip: Optional[int] = None
    ) -> Tuple[BigComplex, BigComplex, BigReal, BigReal, int]:
        ctx = self._ctx
        tolerance = self._config.tolerance_value(ctx)
        budget = self._config.alpha_terms
        order = self._order.numeric()
        table = self._store.table("alpha", order, min(budget, ALPHA_CHUNK), self._config.working_precision)
        log_split = ctx.ln(split)
        square = split * split
        power = ctx.power(split, -s)
        total = ctx.mpc(0)
        slope = ctx.mpc(0)
        previous: Optional[Tuple[BigReal, BigReal]] = None
        for n in range(1, budget + 1):
            if n > len(table):
                table = self._store.table("alpha", order, min(budget, 2 * len(table)), self._config.working_precision)
            power *= square
            if n == skip:
                continue
            sign = 1 if n % 2 == 1 else -1
            denominator = 2 * n - s
            weighted = sign * ctx.convert(table[n]) * power
            term = weighted * s / denominator
            slope_term = weighted * (2 * n / denominator**2 - s * log_split / denominator) if with_slope else ctx.zero
            total += term
            slope += slope_term
            current = (abs(term), abs(slope_term))
            if previous is not None and n >= MIN_ALPHA_TERMS:
                tails = [geometric_tail(now, before) for now, before in zip(current, previous)]
                scale = max(1, abs(total))
                if tails[0] <= tolerance * scale and (not with_slope or tails[1] <= tolerance * max(1, abs(slope))):
                    return total, slope, tails[0], tails[1], n
            previous = current
        raise NonConvergenceError(
            f"Origin series for zeta_{self._order.text} did not reach tolerance within {budget} terms at "
            f"T = {ctx.nstr(split, 10)}."
        )

    def _beta_series(
        self, s: BigComplex, split: BigReal, with_slope: bool, minimum: int, skip: Optional[int] = None
    ) -> Tuple[BigComplex, BigComplex, BigReal, int]:
        ctx = self._ctx
        config = self._config
        log_split = ctx.ln(split)
        scan = max(minimum + 2, int(4 * split) + 24, (config.beta_terms or 0) + 2)
        table = self._store.table("beta", self._order.numeric(), scan + 2, config.working_precision)
        inverse = 1 / split
        powers = [ctx.power(split, -s)]
        for _ in range(scan + 1):
            powers.append(powers[-1] * inverse)
        magnitudes = [ctx.zero]
        for n in range(1, scan + 1):
            beta = ctx.convert(table[n])
            # a vanishing beta_n also removes the pole of its term
            magnitudes.append(ctx.zero if n == skip or beta == 0 else abs(beta * s * powers[n] / (n + s)))
        if config.beta_policy == "fixed":
            truncation = config.beta_terms or 0
            error = magnitudes[truncation + 1] if truncation + 1 < len(magnitudes) else ctx.zero
        else:
            truncation, error = optimal_truncation(magnitudes)
        if config.remainder == "quadrature" and truncation < minimum:
            if config.beta_policy == "fixed":
                logging.warning(f"Raising fixed beta depth {truncation} to {minimum} for the remainder integral.")
            truncation = minimum
        total = ctx.mpc(0)
        slope = ctx.mpc(0)
        for n in range(1, truncation + 1):
            if n == skip:
                continue
            beta = ctx.convert(table[n])
            if beta == 0:
                continue
            total += beta * s * powers[n] / (n + s)
            if with_slope:
                slope += beta * powers[n] * (n / (n + s) ** 2 - s * log_split / (n + s))
        if config.remainder == "quadrature":
            # omitted terms are carried by the remainder integral
            error = ctx.zero
        logging.debug(f"Infinity series for nu={self._order.text} truncated after {truncation} terms.")
        return total, slope, error, truncation

    def bracket(
        self,
        s: Any,
        split: Optional[BigReal] = None,
        with_slope: bool = False,
        skip_alpha: Optional[int] = None,
        skip_beta: Optional[int] = None,
    ) -> Bracket:
        """The bracketed sum at s, optionally without one origin or infinity term.

        Args:
            s (Any): Point.
            split (Optional[BigReal], optional): Split point T. Defaults to :meth:`split_point`.
            with_slope (bool, optional): Also return the s-derivative. Defaults to False.
            skip_alpha (Optional[int], optional): Origin term index left out. Defaults to None.
            skip_beta (Optional[int], optional): Infinity term index left out. Defaults to None.

        Returns:
            Bracket: Value, slope and their error estimates.
        """
        ctx = self._ctx
        config = self._config
        point = to_mpc(ctx, s)
        split = self.split_point() if split is None else ctx.convert(split)
        nu = self._order.as_mpf(ctx)
        half_shift = nu + ctx.mpf(1) / 2
        log_split = ctx.ln(split)
        power = ctx.power(split, -point)
        minimum = max(0, int(ctx.ceil(-point.real)) + 1)

        alpha_total, alpha_slope, alpha_error, alpha_slope_error, alpha_used = self._alpha_series(
            point, split, with_slope, skip_alpha
        )
        beta_total, beta_slope, beta_error, beta_used = self._beta_series(point, split, with_slope, minimum, skip_beta)
        beta0 = ctx.convert(self._store.table("beta", self._order.numeric(), 1, config.working_precision).beta0)

        elementary = (
            point * split * power / (point - 1)
            + beta0 * power
            - half_shift * power * (log_split + 1 / point)
        )
        value = alpha_total + beta_total + elementary
        slope = alpha_slope + beta_slope
        if with_slope:
            slope += split * power * (-1 / (point - 1) ** 2 - point * log_split / (point - 1))
            slope -= beta0 * log_split * power
            slope += half_shift * power * (log_split * (log_split + 1 / point) + 1 / point**2)
        error = alpha_error + beta_error
        slope_error = alpha_slope_error + beta_error * (1 + abs(log_split))

        if config.remainder == "quadrature":
            remainder = build_remainder(self._order, ctx, split, beta_used, self._store, config.quad_degree).evaluate(
                point, with_slope
            )
            value += point * remainder.value
            error += abs(point) * remainder.error
            if with_slope:
                slope += remainder.value + point * remainder.slope
                slope_error += remainder.error + abs(point) * (remainder.slope_error or ctx.zero)
        else:
            proxy = exponential_proxy(ctx, point, split)
            error += proxy
            slope_error += proxy * (1 + abs(log_split)) / max(abs(point), ctx.eps) if with_slope else ctx.zero
        return Bracket(
            value=value,
            slope=slope,
            error=error,
            slope_error=slope_error,
            alpha_terms=alpha_used,
            beta_terms=beta_used,
        )

    def _roundoff(self, value: BigComplex) -> BigReal:
        return self._ctx.ldexp(abs(value) + 1, 8 - self._config.precision)

    # public operations

    def value(self, s: Any) -> EvalResult:
        """zeta_nu(s).

        Raises:
            PoleError: Raises at s = 1 and at s = 1-2k with non-vanishing residue.
            RemovedPointError: Raises at s = 1-2k for nu = -1/2.
            NonConvergenceError: Raises if the origin series misses tolerance within budget.
        """
        point_class = self.classify(s)
        self.raise_for_pole(point_class)
        if point_class.is_dispatch_point:
            return self._closed_result(self._closed_form(point_class), point_class)
        if point_class.kind is PointKind.REMOVED_NEG_ODD:
            return self._removed_point(point_class)
        ctx = self._ctx
        point = to_mpc(ctx, s)
        split = self.split_point()
        parts = self.bracket(point, split)
        prefactor = ctx.sinpi(point / 2) / ctx.pi
        value = prefactor * parts.value
        return EvalResult(
            value=value,
            error_estimate=abs(prefactor) * parts.error + self._roundoff(value),
            classification=point_class,
            alpha_terms_used=parts.alpha_terms,
            beta_terms_used=parts.beta_terms,
            method=Method.SERIES,
            precision=self._config.precision,
            split=split,
        )

    def slope(self, s: Any) -> EvalResult:
        """zeta_nu'(s).

        Raises:
            PoleError: Raises at the poles.
            RemovedPointError: Raises at s = 1-2k for nu = -1/2.
            NonConvergenceError: Raises if the origin series misses tolerance within budget.
        """
        point_class = self.classify(s)
        self.raise_for_pole(point_class)
        self._raise_for_unresolved(point_class)
        ctx = self._ctx
        if point_class.kind is PointKind.ORIGIN:
            beta0 = self._store.table("beta", self._order, 1, self._config.working_precision).beta0
            return self._closed_result(ctx.convert(beta0) / 2, point_class)
        split = self.split_point()
        log_split = ctx.ln(split)
        k = point_class.k or 0
        sign = 1 if k % 2 == 0 else -1
        if point_class.kind is PointKind.POS_EVEN:
            parts = self.bracket(2 * k, split, skip_alpha=k)
            alpha = to_mpf(ctx, self._alpha(k))
            value = alpha * (ctx.mpf(1) / 2 - k * log_split) + sign * parts.value / 2
            error = parts.error / 2
        elif point_class.kind is PointKind.NEG_EVEN:
            parts = self.bracket(-2 * k, split, skip_beta=2 * k)
            beta = to_mpf(ctx, self._beta(2 * k))
            value = sign * beta * (ctx.mpf(1) / 2 + k * log_split) + sign * parts.value / 2
            error = parts.error / 2
        else:
            point = to_mpc(ctx, s)
            parts = self.bracket(point, split, with_slope=True)
            half_angle = point / 2
            value = ctx.cospi(half_angle) / 2 * parts.value + ctx.sinpi(half_angle) / ctx.pi * parts.slope
            error = abs(ctx.cospi(half_angle)) / 2 * parts.error
            error += abs(ctx.sinpi(half_angle)) / ctx.pi * parts.slope_error
        value = ctx.mpc(value)
        return EvalResult(
            value=value,
            error_estimate=error + self._roundoff(value),
            classification=point_class,
            alpha_terms_used=parts.alpha_terms,
            beta_terms_used=parts.beta_terms,
            method=Method.SERIES,
            precision=self._config.precision,
            split=split,
        )


def optimal_truncation(magnitudes: List[BigReal]) -> Tuple[int, BigReal]:
    """Optimal truncation: stop before N minimizing |t_N| + |t_{N+1}|, which is also the error."""
    best_index = 1
    best_value = magnitudes[1] + magnitudes[2]
    for n in range(2, len(magnitudes) - 1):
        candidate = magnitudes[n] + magnitudes[n + 1]
        if candidate < best_value:
            best_index, best_value = n, candidate
    return best_index - 1, best_value


def geometric_tail(current: BigReal, previous: BigReal) -> BigReal:
    """Tail bound current * r / (1 - r) from the ratio of consecutive magnitudes."""
    if current == 0:
        return current
    if previous == 0:
        return current * 1000
    ratio = current / previous
    if ratio >= 1:
        return current * 1000
    return current * ratio / (1 - ratio)


def evaluate(
    order: Any, s: Any, config: Optional[EvalConfig] = None, store: Optional[CoefficientStore] = None
) -> EvalResult:
    """zeta_nu(s) with dispatch to the closed forms at the origin and the even integers."""
    return HawkinsEvaluator(order, config, store).value(s)


def derivative(
    order: Any, s: Any, config: Optional[EvalConfig] = None, store: Optional[CoefficientStore] = None
) -> EvalResult:
    """zeta_nu'(s) with dispatch to the closed forms at the origin and the even integers."""
    return HawkinsEvaluator(order, config, store).slope(s)


def eval_many(
    order: Any, points: Iterable[Any], config: Optional[EvalConfig] = None, store: Optional[CoefficientStore] = None
) -> List[EvalResult]:
    evaluator = HawkinsEvaluator(order, config, store)
    return [evaluator.value(point) for point in points]
