from fractions import Fraction

import pytest

from besselzeta.core.errors import DomainError
from besselzeta.core.numerics import context
from besselzeta.core.order import Order


@pytest.mark.parametrize(
    "text, value, exact, canonical",
    [
        ("0", Fraction(0), True, "0"),
        ("1/2", Fraction(1, 2), True, "1/2"),
        ("2/4", Fraction(1, 2), True, "1/2"),
        ("0.25", Fraction(1, 4), False, "0.25"),
        ("-1/2", Fraction(-1, 2), True, "-1/2"),
    ],
)
def test_order_parse(text: str, value: Fraction, exact: bool, canonical: str) -> None:
    order = Order.parse(text)
    assert order.value == value
    assert order.exact is exact
    assert order.text == canonical
    assert order.mode == ("exact" if exact else "float")


@pytest.mark.parametrize("text", ["-1", "-3/2", "-7"])
def test_order_rejects_nu_at_or_below_minus_one(text: str) -> None:
    with pytest.raises(DomainError):
        Order.parse(text)


def test_order_of_accepts_every_supported_input() -> None:
    half = Order.parse("1/2")
    assert Order.of(half) is half
    assert Order.of(Fraction(1, 2)) == half
    assert Order.of(0).exact
    assert not Order.of(0.5).exact
    assert Order.of("3/2").value == Fraction(3, 2)


def test_exact_order_requires_rational_value() -> None:
    with pytest.raises(DomainError):
        Order(value=context(64).mpf("0.5"), exact=True)


def test_numeric_and_coerce() -> None:
    order = Order.parse("1/4")
    numeric = order.numeric()
    assert not numeric.exact
    assert numeric.text == order.text
    assert order.coerce(128) == Fraction(1, 4)
    assert numeric.coerce(128) == context(128).mpf(0.25)
    assert order.rational(1, 3, 128) == Fraction(1, 3)
    assert numeric.rational(1, 4, 128) == context(128).mpf(0.25)


@pytest.mark.parametrize("text, expected", [("1/2", True), ("-1/2", True), ("0.5", True), ("1", False)])
def test_is_half_odd(text: str, expected: bool) -> None:
    assert Order.parse(text).is_half_odd is expected


def test_key_distinguishes_modes() -> None:
    assert Order.parse("1/4").key() != Order.parse("0.25").key()
