"""Residues of zeta_nu and the product of the Bessel zeros."""

from typing import Any, Optional

from besselzeta.coefficients.store import CoefficientStore, default_store
from besselzeta.core.errors import ConsistencyError, DomainError
from besselzeta.core.numerics import DEFAULT_PRECISION, BigReal, context, to_mpf
from besselzeta.core.order import Order


def _residue_sign(k: int) -> int:
    return 1 if k % 2 == 0 else -1


def residue(
    order: Any, pole: int, precision: int = DEFAULT_PRECISION, store: Optional[CoefficientStore] = None
) -> BigReal:
    """Residue of zeta_nu at s = 1 or s = 1-2k.

    The residue at 1-2k is (-1)^k c_{2k-2} / pi. It is read once from the c table and once
    as c_0 d_{2k} from the d table, and the two readings must agree.

    Args:
        order (Any): Bessel order.
        pole (int): 1 or a negative odd integer.
        precision (int, optional): Bits. Defaults to DEFAULT_PRECISION.
        store (Optional[CoefficientStore], optional): Coefficient store. Defaults to the process store.

    Raises:
        DomainError: Raises if pole is not 1 or a negative odd integer.
        ConsistencyError: Raises if the c and d tables give different residues.

    Returns:
        BigReal: The residue, zero where the pole cancels.
    """
    order = Order.of(order)
    ctx = context(precision)
    if isinstance(pole, bool) or not isinstance(pole, int):
        raise DomainError(f"Poles are integers, got {pole!r}.")
    if pole == 1:
        return 1 / ctx.pi
    if pole > 0 or pole % 2 == 0:
        raise DomainError(f"zeta_nu has poles only at s = 1 and s = -1, -3, ..., got {pole}.")
    k = (1 - pole) // 2
    store = store or default_store()
    c_values = store.table("c", order, 2 * k - 1, precision)
    d_values = store.table("d", order, max(2, 2 * k - 1), precision)
    from_c = to_mpf(ctx, c_values[2 * k - 2])
    from_d = to_mpf(ctx, c_values[0]) * to_mpf(ctx, d_values[2 * k])
    if abs(from_c - from_d) > ctx.ldexp(abs(from_c) + abs(from_d), 16 - precision):
        raise ConsistencyError(
            f"Residue of zeta_{order.text} at s = {pole} differs between the c and d coefficients: "
            f"{ctx.nstr(from_c, 15)} against {ctx.nstr(from_d, 15)}."
        )
    return _residue_sign(k) * from_c / ctx.pi


def product_of_roots(order: Any, precision: int = DEFAULT_PRECISION) -> BigReal:
    """Regularized product of the zeros, exp(-zeta_nu'(0)) = sqrt(sqrt(2 pi) / (Gamma(nu+1) 2^nu))."""
    order = Order.of(order)
    ctx = context(precision)
    nu = order.as_mpf(ctx)
    return ctx.sqrt(ctx.sqrt(2 * ctx.pi) / (ctx.gamma(nu + 1) * ctx.power(2, nu)))
