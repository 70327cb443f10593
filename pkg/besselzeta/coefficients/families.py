"""The five coefficient recursions.

Each family works in the arithmetic of its order: Fractions in exact mode, ``mpf`` at the
requested precision in float mode. Gamma ratios are written as reciprocal Pochhammer products so
exact mode never leaves the rationals.
"""

import math
from typing import Any, Dict, List, Mapping, Optional, Sequence

from besselzeta.coefficients.family import CoefficientFamily
from besselzeta.coefficients.table import CoefficientTable
from besselzeta.core.numerics import BigReal, context, pochhammer
from besselzeta.core.order import Order


class HawkinsFamily(CoefficientFamily):
    """c_0 = c_1 = (nu^2 - 1/4)/2, c_{m+2} = ((m+3) c_{m+1} - sum_{k=0}^{m} c_{m-k} c_k) / 2."""

    family_name = "c"

    def extend(
        self,
        order: Order,
        known: Sequence[Any],
        count: int,
        precision: int,
        dependencies: Mapping[str, CoefficientTable],
    ) -> List[Any]:
        values = list(known[:count])
        nu = order.coerce(precision)
        seed = (nu * nu - order.rational(1, 4, precision)) / 2
        zero = order.rational(0, 1, precision)
        while len(values) < count:
            if len(values) < 2:
                values.append(seed)
                continue
            m = len(values) - 2
            convolution = sum((values[m - k] * values[k] for k in range(m + 1)), zero)
            values.append(((m + 3) * values[m + 1] - convolution) / 2)
        return values


class AsymptoticRatioFamily(CoefficientFamily):
    """d_2 = d_3 = 1, d_{m+2} = ((m+1)/2) d_{m+1} + ((1 - 4 nu^2)/16) sum_{k=0}^{m-2} d_{m-k} d_{k+2}.

    Computed for every order including nu = 1/2, where the (nu^2 - 1/4) prefactor of the series
    removes their contribution instead.
    """

    family_name = "d"

    def extend(
        self,
        order: Order,
        known: Sequence[Any],
        count: int,
        precision: int,
        dependencies: Mapping[str, CoefficientTable],
    ) -> List[Any]:
        # position i of the list holds d_{i+2}
        values = list(known[:count])
        nu = order.coerce(precision)
        one = order.rational(1, 1, precision)
        quadratic = (one - 4 * nu * nu) / 16
        zero = order.rational(0, 1, precision)
        while len(values) < count:
            m = len(values)
            if m < 2:
                values.append(one)
                continue
            convolution = sum((values[m - k - 2] * values[k] for k in range(m - 1)), zero)
            values.append(order.rational(m + 1, 2, precision) * values[m - 1] + quadratic * convolution)
        return values


class OriginRatioFamily(CoefficientFamily):
    """a_0 = nu and, for n >= 1,

    a_n = (2n + nu) w_n - sum_{k=0}^{n-1} a_k w_{n-k},  w_j = 1 / (j! (nu+1)_j).
    """

    family_name = "a"

    def extend(
        self,
        order: Order,
        known: Sequence[Any],
        count: int,
        precision: int,
        dependencies: Mapping[str, CoefficientTable],
    ) -> List[Any]:
        values = list(known[:count])
        if len(values) >= count:
            return values
        nu = order.coerce(precision)
        if not values:
            values.append(nu)
        weights = self._weights(nu, count, precision)
        zero = order.rational(0, 1, precision)
        for n in range(len(values), count):
            convolution = sum((values[k] * weights[n - k] for k in range(n)), zero)
            values.append((2 * n + nu) * weights[n] - convolution)
        return values

    @staticmethod
    def _weights(nu: Any, count: int, precision: int) -> Dict[int, Any]:
        return {j: 1 / (math.factorial(j) * pochhammer(nu + 1, j, precision)) for j in range(1, count)}


class OriginLogFamily(CoefficientFamily):
    """alpha_k = (-1)^{k+1} a_k / (k 2^{2k+1}) for k >= 1, equal to zeta_nu(2k)/k."""

    family_name = "alpha"

    def dependency_counts(self, count: int) -> Dict[str, int]:
        return {"a": count + 1}

    def extend(
        self,
        order: Order,
        known: Sequence[Any],
        count: int,
        precision: int,
        dependencies: Mapping[str, CoefficientTable],
    ) -> List[Any]:
        values = list(known[:count])
        a_table = dependencies["a"]
        for k in range(len(values) + 1, count + 1):
            sign = 1 if k % 2 == 1 else -1
            values.append(sign * a_table[k] / (k * 2 ** (2 * k + 1)))
        return values


class InfinityLogFamily(CoefficientFamily):
    """beta_0 = ln(Gamma(nu+1) 2^nu / sqrt(2 pi)) and beta_n = -c_{n-1}/n for n >= 1.

    beta_0 is held in slot 0 as an ``mpf`` even in exact mode.
    """

    family_name = "beta"

    def dependency_counts(self, count: int) -> Dict[str, int]:
        return {"c": max(1, count - 1)}

    def leading_value(self, order: Order, precision: int) -> Optional[BigReal]:
        ctx = context(precision)
        nu = order.as_mpf(ctx)
        return ctx.loggamma(nu + 1) + nu * ctx.ln2 - ctx.ln(2 * ctx.pi) / 2

    def extend(
        self,
        order: Order,
        known: Sequence[Any],
        count: int,
        precision: int,
        dependencies: Mapping[str, CoefficientTable],
    ) -> List[Any]:
        values = list(known[:count])
        if not values:
            values.append(self.leading_value(order, precision))
        c_table = dependencies["c"]
        for n in range(len(values), count):
            values.append(-c_table[n - 1] / n)
        return values
