import dataclasses
import logging
import threading
from typing import Any, Dict, List, Optional, Tuple

from mpmath import MPContext

from besselzeta.bessel.functions import GUARD_BITS, eval_j
from besselzeta.core.errors import DomainError, NonConvergenceError
from besselzeta.core.numerics import DEFAULT_PRECISION, BigReal, context
from besselzeta.core.order import Order

MAX_REFINEMENT_STEPS = 200
MAX_SCAN_STEPS = 4096


@dataclasses.dataclass(frozen=True)
class ZeroTable:
    """First positive zeros j_{nu,1} < j_{nu,2} < ... of J_nu.

    Args:
        order (Order): Bessel order.
        zeros (Tuple[BigReal, ...]): Zeros in increasing order.
        precision (int): Bits the zeros are accurate to.

    Attributes:
        order (Order): Bessel order.
        zeros (Tuple[BigReal, ...]): Zeros in increasing order.
        precision (int): Bits the zeros are accurate to.
    """

    order: Order
    zeros: Tuple[BigReal, ...]
    precision: int

    def __post_init__(self) -> None:
        previous = 0
        for zero in self.zeros:
            if not zero > previous:
                raise ValueError("Zero tables must be positive and strictly increasing.")
            previous = zero

    def __len__(self) -> int:
        return len(self.zeros)

    def __getitem__(self, position: int) -> BigReal:
        return self.zeros[position]

    def zero(self, n: int) -> BigReal:
        """The n-th zero, counting from 1."""
        if n < 1 or n > len(self.zeros):
            raise IndexError(f"Zero {n} outside the table of {len(self.zeros)} zeros.")
        return self.zeros[n - 1]

    def residuals_ok(self) -> bool:
        """Whether every zero satisfies |J(z)| <= 2^(16-P) |J'(z)| z."""
        ctx = context(self.precision + GUARD_BITS)
        bound = ctx.ldexp(1, 16 - self.precision)
        for zero in self.zeros:
            value, slope = eval_j(self.order, zero, self.precision)
            if abs(value) > bound * abs(slope) * zero:
                return False
        return True


def mcmahon(order: Order, n: int, ctx: MPContext) -> BigReal:
    """Leading McMahon estimate (n + nu/2 - 1/4) pi of the n-th zero."""
    return (n + order.as_mpf(ctx) / 2 - ctx.mpf(1) / 4) * ctx.pi


def _sign(value: BigReal) -> int:
    return 1 if value > 0 else -1 if value < 0 else 0


def _bracket(order: Order, n: int, previous: BigReal, precision: int) -> Tuple[BigReal, BigReal]:
    """Interval containing exactly the n-th zero, given the (n-1)-th zero (0 for n = 1)."""
    ctx = context(precision + GUARD_BITS)
    quarter_pi = ctx.pi / 4
    if n >= 3:
        estimate = mcmahon(order, n, ctx)
        lower, upper = estimate - quarter_pi, estimate + quarter_pi
        # consecutive zeros are more than 7 pi/8 apart, so no zero hides in (previous, lower]
        if previous < lower < previous + 7 * ctx.pi / 8:
            lower_value, _ = eval_j(order, lower, precision)
            upper_value, _ = eval_j(order, upper, precision)
            if _sign(lower_value) * _sign(upper_value) < 0:
                return lower, upper
        logging.debug(f"McMahon bracket for zero {n} of nu={order.text} rejected, scanning.")
    step = ctx.pi / 8
    # zeros of J_nu are separated by more than pi/8 for every nu > -1
    lower = previous + step / 2 if n > 1 else ctx.ldexp(1, -32)
    lower_value, _ = eval_j(order, lower, precision)
    for _ in range(MAX_SCAN_STEPS):
        upper = lower + step
        upper_value, _ = eval_j(order, upper, precision)
        if _sign(lower_value) * _sign(upper_value) <= 0:
            return lower, upper
        lower, lower_value = upper, upper_value
    raise NonConvergenceError(f"No sign change found while scanning for zero {n} of J_{order.text}.")


def _refine(order: Order, lower: BigReal, upper: BigReal, precision: int) -> BigReal:
    """Safeguarded Newton iteration: a step leaving the bracket is replaced by bisection."""
    ctx = context(precision + GUARD_BITS)
    lower_value, _ = eval_j(order, lower, precision)
    if lower_value == 0:
        return lower
    residual_tolerance = ctx.ldexp(1, -precision)
    step_tolerance = ctx.ldexp(1, 8 - precision)
    current = (lower + upper) / 2
    for _ in range(MAX_REFINEMENT_STEPS):
        value, slope = eval_j(order, current, precision)
        if value == 0 or abs(value) <= residual_tolerance * abs(slope) * current:
            return current
        if _sign(value) == _sign(lower_value):
            lower, lower_value = current, value
        else:
            upper = current
        if slope != 0:
            candidate = current - value / slope
            # a converged Newton step is accepted even when it lands on the bracket edge
            if abs(candidate - current) < step_tolerance * current and lower <= candidate <= upper:
                return candidate
        if slope == 0 or not lower < candidate < upper:
            candidate = (lower + upper) / 2
        if not upper - lower > step_tolerance * current:
            return candidate
        current = candidate
    raise NonConvergenceError(
        f"Zero refinement for J_{order.text} failed to converge inside [{ctx.nstr(lower, 15)}, {ctx.nstr(upper, 15)}]."
    )


def _check_interlacing(order: Order, n: int, zero: BigReal, precision: int) -> None:
    ctx = context(precision)
    if n >= 3 and abs(zero - mcmahon(order, n, ctx)) >= ctx.pi / 2:
        logging.warning(f"Zero {n} of J_{order.text} lies more than pi/2 from its McMahon estimate.")


class ZeroFinder:
    """Computes and caches zero tables; tables for the same (order, precision) only ever grow.

    Args:
        lock_timeout (float, optional): Seconds to wait for the cache lock. Defaults to 60.
    """

    def __init__(self, lock_timeout: float = 60):
        self._lock = threading.Lock()
        self._lock_timeout = lock_timeout
        self._tables: Dict[Tuple[str, int], ZeroTable] = {}

    def zeros(self, order: Order, count: int, precision: int = DEFAULT_PRECISION) -> ZeroTable:
        if count < 1:
            raise DomainError(f"At least one zero must be requested, got {count}.")
        key = (order.key(), precision)
        cached = self._tables.get(key)
        if cached is not None and len(cached) >= count:
            return dataclasses.replace(cached, zeros=cached.zeros[:count])
        if not self._lock.acquire(timeout=self._lock_timeout):
            raise TimeoutError(f"Timeout acquiring zero table lock in {self._lock_timeout} seconds.")
        try:
            cached = self._tables.get(key)
            found: List[Any] = list(cached.zeros) if cached is not None else []
            previous = found[-1] if found else 0
            for n in range(len(found) + 1, count + 1):
                lower, upper = _bracket(order, n, previous, precision)
                zero = _refine(order, lower, upper, precision)
                _check_interlacing(order, n, zero, precision)
                found.append(zero)
                previous = zero
            table = ZeroTable(order=order, zeros=tuple(found), precision=precision)
            self._tables[key] = table
            logging.debug(f"Zero table for nu={order.text} extended to {len(table)} zeros.")
        finally:
            self._lock.release()
        return dataclasses.replace(table, zeros=table.zeros[:count])


_default_finder = ZeroFinder()


def zeros(
    order: Order, count: int, precision: int = DEFAULT_PRECISION, finder: Optional[ZeroFinder] = None
) -> ZeroTable:
    """First ``count`` positive zeros of J_nu at ``precision`` bits.

    Raises:
        NonConvergenceError: Raises if a bracket cannot be found or refinement stalls.
    """
    return (finder or _default_finder).zeros(order, count, precision)


def first_zero(order: Order, precision: int = DEFAULT_PRECISION) -> BigReal:
    return zeros(order, 1, precision).zero(1)
