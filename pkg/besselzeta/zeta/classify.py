import dataclasses
import enum
from fractions import Fraction
from typing import Any, Optional

from besselzeta.coefficients.store import CoefficientStore, default_store
from besselzeta.core.numerics import DEFAULT_PRECISION, BigComplex, context, to_mpc
from besselzeta.core.order import Order


class PointKind(enum.Enum):
    GENERIC = "Generic"
    ORIGIN = "Origin"
    POS_EVEN = "PosEven"
    NEG_EVEN = "NegEven"
    POLE_AT_ONE = "PoleAtOne"
    POLE_NEG_ODD = "PoleNegOdd"
    REMOVED_NEG_ODD = "RemovedNegOdd"


@dataclasses.dataclass(frozen=True)
class PointClass:
    """Where s sits relative to the special points of zeta_nu.

    Args:
        kind (PointKind): Tag of the point.
        k (Optional[int], optional): Index for the even and odd families of points. Defaults to None.
    """

    kind: PointKind
    k: Optional[int] = None

    def __str__(self) -> str:
        if self.k is None:
            return self.kind.value
        return f"{self.kind.value}({self.k})"

    @property
    def is_pole(self) -> bool:
        return self.kind in (PointKind.POLE_AT_ONE, PointKind.POLE_NEG_ODD)

    @property
    def is_dispatch_point(self) -> bool:
        """Whether the value has a closed form here (origin and even integers)."""
        return self.kind in (PointKind.ORIGIN, PointKind.POS_EVEN, PointKind.NEG_EVEN)

    @property
    def pole(self) -> Optional[int]:
        if self.kind is PointKind.POLE_AT_ONE:
            return 1
        if self.kind in (PointKind.POLE_NEG_ODD, PointKind.REMOVED_NEG_ODD):
            return 1 - 2 * (self.k or 0)
        return None


GENERIC = PointClass(PointKind.GENERIC)


def exact_integer(s: Any) -> Optional[int]:
    """The integer value of an exactly supplied integer point, otherwise None."""
    if isinstance(s, bool):
        return None
    if isinstance(s, int):
        return s
    if isinstance(s, Fraction) and s.denominator == 1:
        return int(s)
    return None


def nearest_integer(s: Any, tolerance_bits: int, precision: int = DEFAULT_PRECISION) -> Optional[int]:
    """The integer within 2^-tolerance_bits of s (real and imaginary parts), if there is one."""
    exact = exact_integer(s)
    if exact is not None:
        return exact
    if isinstance(s, Fraction):
        return None
    ctx = context(precision)
    point: BigComplex = to_mpc(ctx, s)
    candidate = int(ctx.nint(point.real))
    tolerance = ctx.ldexp(1, -tolerance_bits)
    if abs(point.imag) <= tolerance and abs(point.real - candidate) <= tolerance:
        return candidate
    return None


def classify_integer(
    order: Order, n: int, precision: int = DEFAULT_PRECISION, store: Optional[CoefficientStore] = None
) -> PointClass:
    """Classification of an integer point."""
    if n == 0:
        return PointClass(PointKind.ORIGIN)
    if n % 2 == 0:
        return PointClass(PointKind.POS_EVEN, n // 2) if n > 0 else PointClass(PointKind.NEG_EVEN, -n // 2)
    if n == 1:
        return PointClass(PointKind.POLE_AT_ONE)
    if n > 1:
        return GENERIC
    k = (1 - n) // 2
    if order.is_half_odd:
        return PointClass(PointKind.REMOVED_NEG_ODD, k)
    residue_numerator = (store or default_store()).table("c", order, 2 * k - 1, precision)[2 * k - 2]
    if residue_numerator == 0:
        # the pole cancels for this order, the series is regular here
        return GENERIC
    return PointClass(PointKind.POLE_NEG_ODD, k)


def classify(
    order: Order, s: Any, precision: int = DEFAULT_PRECISION, store: Optional[CoefficientStore] = None
) -> PointClass:
    """Classify s for zeta_nu.

    Integers supplied exactly (int or integral Fraction) are compared exactly; any other input
    counts as an integer when it lies within 2^(-P/2) of one.

    Args:
        order (Order): Bessel order.
        s (Any): Point, any scalar accepted by :func:`besselzeta.core.numerics.to_mpc`.
        precision (int, optional): Bits P. Defaults to DEFAULT_PRECISION.
        store (Optional[CoefficientStore], optional): Store for the residue coefficients.

    Returns:
        PointClass: The classification.
    """
    n = nearest_integer(s, precision // 2, precision)
    if n is None:
        return GENERIC
    return classify_integer(order, n, precision, store)
