import threading
from fractions import Fraction

import mpmath
import pytest

from besselzeta.core.errors import DomainError
from besselzeta.core.numerics import (
    bernoulli,
    context,
    decimal_digits,
    is_rational_literal,
    log_gamma,
    parse_complex,
    parse_rational,
    pochhammer,
    to_mpc,
    to_mpf,
)


def test_context_is_per_precision_and_leaves_global_mp_alone() -> None:
    global_precision = mpmath.mp.prec
    low, high = context(64), context(512)

    assert low.prec == 64
    assert high.prec == 512
    assert context(64) is low
    assert mpmath.mp.prec == global_precision


def test_context_is_per_thread() -> None:
    contexts = []

    def grab() -> None:
        contexts.append(context(128))

    worker = threading.Thread(target=grab)
    worker.start()
    worker.join()

    assert contexts[0] is not context(128)
    assert contexts[0].prec == 128


def test_context_rejects_low_precision() -> None:
    with pytest.raises(DomainError):
        context(24)


@pytest.mark.parametrize("precision, digits", [(53, 16), (256, 78)])
def test_decimal_digits(precision: int, digits: int) -> None:
    assert decimal_digits(precision) == digits


@pytest.mark.parametrize(
    "n, expected",
    [
        (0, Fraction(1)),
        (1, Fraction(-1, 2)),
        (2, Fraction(1, 6)),
        (4, Fraction(-1, 30)),
        (12, Fraction(-691, 2730)),
    ],
)
def test_bernoulli_values(n: int, expected: Fraction) -> None:
    assert bernoulli(n) == expected


def test_bernoulli_odd_values_vanish_and_even_signs_alternate() -> None:
    assert all(bernoulli(2 * n + 1) == 0 for n in range(1, 20))
    signs = [1 if bernoulli(2 * n) > 0 else -1 for n in range(1, 20)]
    assert all(signs[n] == -signs[n - 1] for n in range(1, len(signs)))


def test_bernoulli_rejects_negative_index() -> None:
    with pytest.raises(DomainError):
        bernoulli(-1)


@pytest.mark.parametrize(
    "x, n, expected",
    [
        (Fraction(7, 3), 0, Fraction(1)),
        (Fraction(3, 2), 2, Fraction(15, 4)),
        (1, 5, Fraction(120)),
    ],
)
def test_pochhammer_exact(x: Fraction, n: int, expected: Fraction) -> None:
    result = pochhammer(x, n)
    assert isinstance(result, Fraction)
    assert result == expected


@pytest.mark.parametrize("x", [Fraction(1, 4), Fraction(-2, 3), Fraction(9, 7)])
def test_pochhammer_splits_over_lengths(x: Fraction) -> None:
    for m in range(0, 21, 5):
        for n in range(0, 21, 4):
            assert pochhammer(x, m + n) == pochhammer(x, m) * pochhammer(x + m, n)


def test_pochhammer_floating_and_negative_length() -> None:
    ctx = context(128)
    assert abs(pochhammer(ctx.mpf("1.5"), 2, 128) - ctx.mpf("3.75")) < ctx.ldexp(1, -120)
    with pytest.raises(DomainError):
        pochhammer(Fraction(1), -1)


@pytest.mark.parametrize(
    "x, expected",
    [
        (1, mpmath.mpf(0)),
        (2, mpmath.mpf(0)),
        (Fraction(3, 2), mpmath.log(mpmath.sqrt(mpmath.pi) / 2)),
    ],
)
def test_log_gamma(x: Fraction, expected: mpmath.mpf) -> None:
    assert abs(log_gamma(x, 128) - expected) < 1e-15


def test_log_gamma_recurrence() -> None:
    ctx = context(256)
    for x in (ctx.mpf("0.1"), ctx.mpf("2.75"), ctx.mpf("9.5")):
        ratio = ctx.exp(log_gamma(x + 1, 256)) / ctx.exp(log_gamma(x, 256))
        assert abs(ratio - x) < ctx.ldexp(1, 12 - 256) * x


@pytest.mark.parametrize("x", [0, Fraction(-1, 2)])
def test_log_gamma_domain(x: Fraction) -> None:
    with pytest.raises(DomainError):
        log_gamma(x)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1/2", Fraction(1, 2)),
        ("-3", Fraction(-3)),
        ("0.25", Fraction(1, 4)),
        (" 2.5 ", Fraction(5, 2)),
    ],
)
def test_parse_rational(text: str, expected: Fraction) -> None:
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["abc", "1/0", "nan", ""])
def test_parse_rational_rejects_malformed_literals(text: str) -> None:
    with pytest.raises(DomainError):
        parse_rational(text)


@pytest.mark.parametrize(
    "text, expected",
    [("1/2", True), ("-3", True), ("0.5", False), ("1e3", False)],
)
def test_is_rational_literal(text: str, expected: bool) -> None:
    assert is_rational_literal(text) is expected


def test_parse_complex_and_conversions() -> None:
    ctx = context(128)
    point = parse_complex("1.5,2", ctx)
    assert point == ctx.mpc("1.5", 2)
    assert parse_complex("-1/2", ctx) == ctx.mpc(-0.5)
    assert to_mpc(ctx, "3,-1") == ctx.mpc(3, -1)
    assert to_mpc(ctx, Fraction(1, 4)) == ctx.mpc(0.25)
    assert to_mpf(ctx, Fraction(1, 3)) == ctx.mpf(1) / 3
