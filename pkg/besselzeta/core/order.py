import dataclasses
from fractions import Fraction
from typing import Any, Union

from mpmath import MPContext

from besselzeta.core.errors import DomainError
from besselzeta.core.numerics import BigReal, context, is_rational_literal, parse_rational, to_mpf


@dataclasses.dataclass(frozen=True)
class Order:
    """Order nu of the Bessel function, nu > -1.

    The ``exact`` flag selects the arithmetic used for coefficient tables: rational literals
    run in exact mode, decimals in float mode. A float-mode order may still hold its value as
    a Fraction (a decimal literal is stored exactly), it is only converted when arithmetic needs it.

    Args:
        value (Union[Fraction, BigReal]): Value of nu.
        exact (bool): Whether coefficient arithmetic stays rational.
        text (str, optional): Canonical text form used for cache keys and output metadata.

    Attributes:
        value (Union[Fraction, BigReal]): Value of nu.
        exact (bool): Whether coefficient arithmetic stays rational.
        text (str): Canonical text form used for cache keys and output metadata.
    """

    value: Union[Fraction, BigReal]
    exact: bool
    text: str = ""

    def __post_init__(self) -> None:
        if self.exact and not isinstance(self.value, Fraction):
            raise DomainError("Exact orders must carry a rational value.")
        if not self.value > -1:
            raise DomainError(f"Bessel order must satisfy nu > -1, got {self.value}.")
        if not self.text:
            object.__setattr__(self, "text", str(self.value) if isinstance(self.value, Fraction) else repr(self.value))

    @classmethod
    def parse(cls, text: str) -> "Order":
        """Parse ``p/q`` or an integer (exact mode) or a decimal literal (float mode).

        Raises:
            DomainError: Raises if the literal is malformed or nu <= -1.
        """
        value = parse_rational(text)
        exact = is_rational_literal(text)
        return cls(value=value, exact=exact, text=str(value) if exact else text.strip())

    @classmethod
    def of(cls, value: Any) -> "Order":
        """Build an order from an existing Order, int, Fraction, str or floating value."""
        if isinstance(value, Order):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, (int, Fraction)):
            return cls(value=Fraction(value), exact=True)
        if isinstance(value, float):
            return cls(value=Fraction(value), exact=False, text=repr(value))
        return cls(value=value, exact=False)

    def numeric(self) -> "Order":
        """The same order in float mode."""
        if not self.exact:
            return self
        return Order(value=self.value, exact=False, text=self.text)

    def coerce(self, precision: int) -> Union[Fraction, BigReal]:
        """Value of nu in the arithmetic of this order: a Fraction or an ``mpf`` at ``precision`` bits."""
        if self.exact:
            return self.value
        return self.as_mpf(context(precision))

    def as_mpf(self, ctx: MPContext) -> BigReal:
        return to_mpf(ctx, self.value)

    def rational(self, numerator: int, denominator: int, precision: int) -> Union[Fraction, BigReal]:
        """The constant numerator/denominator in the arithmetic of this order."""
        if self.exact:
            return Fraction(numerator, denominator)
        return context(precision).mpf(numerator) / denominator

    @property
    def is_half_odd(self) -> bool:
        """Whether nu = 1/2 or nu = -1/2, where the Hawkins coefficients all vanish."""
        if isinstance(self.value, Fraction):
            return abs(self.value) == Fraction(1, 2)
        return bool(abs(self.value) == 0.5)

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "float"

    def key(self) -> str:
        """Cache key component identifying value and arithmetic mode."""
        return f"{self.text}:{self.mode}"
