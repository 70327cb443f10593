import mpmath
import pytest

from besselzeta.core.errors import DomainError
from besselzeta.oracle.euler_maclaurin import hurwitz_tail


@pytest.mark.parametrize("s, a", [(3, "0.75"), (2, 1), ("1.5", 17), ("2,5", "0.25")])
def test_hurwitz_tail_matches_mpmath(s: object, a: object) -> None:
    value, error = hurwitz_tail(s, a, precision=256)
    with mpmath.workdps(80):
        point = mpmath.mpc(*[mpmath.mpf(part) for part in str(s).split(",")])
        expected = mpmath.zeta(point, mpmath.mpf(a))
        assert abs(value - expected) < 10 * error
    assert error < 1e-20


def test_higher_order_shrinks_error_bound() -> None:
    _, low = hurwitz_tail(3, 1, order=2)
    _, high = hurwitz_tail(3, 1, order=10)
    assert high < low


@pytest.mark.parametrize("s, a", [(1, 1), ("0.5", 1), (2, 0), (2, "-0.5")])
def test_hurwitz_tail_domain(s: object, a: object) -> None:
    with pytest.raises(DomainError):
        hurwitz_tail(s, a)


def test_higher_order_tail_reaches_tighter_tolerance() -> None:
    value, error = hurwitz_tail(3, 1, order=24, precision=256)
    with mpmath.workdps(80):
        assert abs(value - mpmath.zeta(3)) < 1e-30
    assert error < 1e-30
