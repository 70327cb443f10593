"""Precision contexts and the exact primitives shared by every other module.

Exact values are ``fractions.Fraction``. Arbitrary precision values are mpmath ``mpf``/``mpc``
numbers created by a per-thread :class:`mpmath.MPContext`, so no routine in the package ever
touches the global ``mpmath.mp`` precision.
"""

import logging
import math
import threading
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Any, Dict, List, Union

from mpmath import MPContext

from besselzeta.core.errors import DomainError

DEFAULT_PRECISION = 256

# mpmath ships without type information, its numbers are typed as Any throughout.
BigReal = Any
BigComplex = Any
Number = Union[int, Fraction, BigReal]

_thread_state = threading.local()
_bernoulli_numbers: List[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def context(precision: int) -> MPContext:
    """Return the calling thread's mpmath context working at ``precision`` bits.

    Args:
        precision (int): Working precision in bits.

    Raises:
        DomainError: Raises if precision is below double precision.

    Returns:
        MPContext: Context whose ``prec`` is fixed at ``precision``.
    """
    if precision < 53:
        raise DomainError(f"Precision of {precision} bits is below the supported minimum of 53.")
    contexts: Dict[int, MPContext] = getattr(_thread_state, "contexts", None) or {}
    if not contexts:
        _thread_state.contexts = contexts
    ctx = contexts.get(precision)
    if ctx is None:
        ctx = MPContext()
        ctx.prec = precision
        contexts[precision] = ctx
    return ctx


def decimal_digits(precision: int) -> int:
    """Number of decimal digits carried by ``precision`` bits."""
    return int(precision * math.log10(2)) + 1


def to_mpf(ctx: MPContext, value: Number) -> BigReal:
    """Convert an exact or floating value to an ``mpf`` of ``ctx``.

    Fractions are divided in the target context so the only rounding happens once, at the
    context's precision.
    """
    if isinstance(value, Fraction):
        return ctx.mpf(value.numerator) / value.denominator
    return ctx.mpf(value)


def to_mpc(ctx: MPContext, value: Any) -> BigComplex:
    """Convert any supported scalar (int, Fraction, float, complex, str, mpf, mpc) to an ``mpc`` of ``ctx``."""
    if isinstance(value, Fraction):
        return ctx.mpc(to_mpf(ctx, value))
    if isinstance(value, str):
        return ctx.mpc(parse_complex(value, ctx))
    return ctx.mpc(value)


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, an integer or a decimal literal into an exact fraction.

    Args:
        text (str): Literal to parse.

    Raises:
        DomainError: Raises if the text is not a finite rational literal.

    Returns:
        Fraction: The exact value of the literal.
    """
    cleaned = text.strip()
    try:
        if "/" in cleaned:
            return Fraction(cleaned)
        return Fraction(Decimal(cleaned))
    except (ValueError, ZeroDivisionError, InvalidOperation):
        raise DomainError(f"{text!r} is not a rational or decimal literal.")


def is_rational_literal(text: str) -> bool:
    """Whether ``text`` is written as ``p/q`` or a bare integer (as opposed to a decimal)."""
    cleaned = text.strip().lstrip("+-")
    if "/" in cleaned:
        numerator, _, denominator = cleaned.partition("/")
        return numerator.strip().isdigit() and denominator.strip().lstrip("+-").isdigit()
    return cleaned.isdigit()


def parse_complex(text: str, ctx: MPContext) -> BigComplex:
    """Parse ``re[,im]`` into an ``mpc``; each part may be rational or decimal."""
    real_text, _, imag_text = text.partition(",")
    real = to_mpf(ctx, parse_rational(real_text))
    imag = to_mpf(ctx, parse_rational(imag_text)) if imag_text.strip() else ctx.zero
    return ctx.mpc(real, imag)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n with the convention B_1 = -1/2.

    Uses the recursion sum_{k=0}^{n} C(n+1, k) B_k = 0. Values are memoized; readers never
    take the lock and extension happens under a single writer.

    Args:
        n (int): Index, must be non-negative.

    Raises:
        DomainError: Raises if n is negative.

    Returns:
        Fraction: B_n.
    """
    if n < 0:
        raise DomainError(f"Bernoulli index must be non-negative, got {n}.")
    if n < len(_bernoulli_numbers):
        return _bernoulli_numbers[n]
    with _bernoulli_lock:
        for m in range(len(_bernoulli_numbers), n + 1):
            if m > 1 and m % 2 == 1:
                _bernoulli_numbers.append(Fraction(0))
                continue
            total = sum((math.comb(m + 1, k) * _bernoulli_numbers[k] for k in range(m)), Fraction(0))
            _bernoulli_numbers.append(-total / (m + 1))
        logging.debug(f"Bernoulli table extended to B_{len(_bernoulli_numbers) - 1}.")
    return _bernoulli_numbers[n]


def pochhammer(x: Number, n: int, precision: int = DEFAULT_PRECISION) -> Number:
    """Rising factorial x (x+1) ... (x+n-1).

    Exact inputs (int, Fraction) give an exact Fraction, floating inputs an ``mpf`` at
    ``precision`` bits.

    Args:
        x (Number): Base of the product.
        n (int): Number of factors, non-negative.
        precision (int, optional): Bits for floating inputs. Defaults to DEFAULT_PRECISION.

    Raises:
        DomainError: Raises if n is negative.

    Returns:
        Number: The product, 1 for n = 0.
    """
    if n < 0:
        raise DomainError(f"Pochhammer length must be non-negative, got {n}.")
    if isinstance(x, (int, Fraction)):
        return Fraction(math.prod((Fraction(x) + k for k in range(n)), start=1))
    ctx = context(precision)
    return ctx.rf(ctx.mpf(x), n)


def log_gamma(x: Number, precision: int = DEFAULT_PRECISION) -> BigReal:
    """ln Gamma(x) for real x > 0 at ``precision`` bits.

    Raises:
        DomainError: Raises if x <= 0.
    """
    ctx = context(precision)
    value = to_mpf(ctx, x)
    if value <= 0:
        raise DomainError(f"log_gamma requires x > 0, got {ctx.nstr(value, 15)}.")
    return ctx.loggamma(value)
