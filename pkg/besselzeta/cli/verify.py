"""Verification suites run by ``besselzeta verify``.

Every check is a plain function of (config, store) returning (passed, detail). The runner fans
checks out to worker threads and gathers their results.
"""

import asyncio
import dataclasses
import logging
import math
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from besselzeta.bessel.zeros import zeros
from besselzeta.coefficients.store import CoefficientStore, default_store
from besselzeta.core.config import AUTO_SPLIT, EvalConfig
from besselzeta.core.errors import BesselZetaError
from besselzeta.core.numerics import bernoulli, context, pochhammer, to_mpf
from besselzeta.core.order import Order
from besselzeta.oracle.direct import direct_sum, refine
from besselzeta.zeta.contour import z_repr, z_slope_at_origin
from besselzeta.zeta.hawkins import derivative, evaluate
from besselzeta.zeta.riemann import riemann
from besselzeta.zeta.special import product_of_roots, residue

CheckOutcome = Tuple[bool, str]
Check = Callable[[EvalConfig, CoefficientStore], CheckOutcome]

EVEN_ORDERS = ("0", "1/4", "1/2", "1", "3/2")
RECURSION_ORDERS = ("0", "1/4", "1")
ORACLE_POINTS = (("0", "2.5"), ("0", "3"), ("1/2", "2.5"), ("1", "3.5"))
BRIDGE_POINTS = (-2, "-0.5", 0, "0.5", 2, "2.5", 3, 4)
CONTOUR_DEPTH = 2


@dataclasses.dataclass(frozen=True)
class CheckResult:
    """Outcome of one check.

    Args:
        suite (str): Suite the check belongs to.
        name (str): Name of the check.
        passed (bool): Whether the check passed.
        detail (str, optional): Failure description. Defaults to ''.
    """

    suite: str
    name: str
    passed: bool
    detail: str = ""

    def to_record(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


def printed_even_value(nu: Fraction, k: int) -> Fraction:
    """Tabulated closed forms of zeta_nu(2k) for k = 1..5."""
    p = [nu + j for j in range(1, 6)]
    if k == 1:
        return 1 / (4 * p[0])
    if k == 2:
        return 1 / (16 * p[0] ** 2 * p[1])
    if k == 3:
        return 1 / (32 * p[0] ** 3 * p[1] * p[2])
    if k == 4:
        return (5 * nu + 11) / (256 * p[0] ** 4 * p[1] ** 2 * p[2] * p[3])
    if k == 5:
        return (7 * nu + 19) / (512 * p[0] ** 5 * p[1] ** 2 * p[2] * p[3] * p[4])
    raise ValueError(f"No tabulated closed form for k = {k}.")


def _failures(failures: List[str]) -> CheckOutcome:
    return not failures, "; ".join(failures[:5])


def _tiny(config: EvalConfig, exponent: int = -40) -> Any:
    return context(config.precision).power(10, exponent)


# known values


def check_even_values(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    failures = []
    for text in EVEN_ORDERS:
        order = Order.parse(text)
        for k in range(1, 6):
            result = evaluate(order, 2 * k, config, store)
            if result.exact != printed_even_value(order.value, k):
                failures.append(f"nu={text} k={k}: {result.exact}")
    return _failures(failures)


def check_origin(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    failures = []
    ctx = context(config.precision)
    for text in ("0", "1/2", "1"):
        order = Order.parse(text)
        if evaluate(order, 0, config, store).exact != -(order.value + Fraction(1, 2)) / 2:
            failures.append(f"value at nu={text}")
        nu = order.as_mpf(ctx)
        expected = ctx.ln(ctx.power(2, nu) * ctx.gamma(nu + 1) / ctx.sqrt(2 * ctx.pi)) / 2
        if abs(derivative(order, 0, config, store).value - expected) > _tiny(config):
            failures.append(f"slope at nu={text}")
    return _failures(failures)


def check_negative_even(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    failures = []
    for text in RECURSION_ORDERS:
        order = Order.parse(text)
        c_values = store.table("c", order, 12, config.precision)
        for k in range(1, 7):
            expected = (-1) ** k * c_values[2 * k - 1] / 2
            if evaluate(order, -2 * k, config, store).exact != expected:
                failures.append(f"nu={text} k={k}")
    return _failures(failures)


def check_residues(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    ctx = context(config.precision)
    failures = []
    if abs(residue("1/3", 1, config.precision, store) - 1 / ctx.pi) > _tiny(config):
        failures.append("s=1")
    if abs(residue("0", -1, config.precision, store) - 1 / (8 * ctx.pi)) > _tiny(config):
        failures.append("nu=0 s=-1")
    for k in range(1, 5):
        if residue("1/2", 1 - 2 * k, config.precision, store) != 0:
            failures.append(f"nu=1/2 s={1 - 2 * k}")
    # residue raises if the c and d coefficients disagree
    for k in range(1, 6):
        residue("1/4", 1 - 2 * k, config.precision, store)
    return _failures(failures)


def check_riemann(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    ctx = context(config.precision)
    failures = []
    for k in range(1, 7):
        rational = (-1) ** (k + 1) * bernoulli(2 * k) / (2 * math.factorial(2 * k))
        expected = ctx.power(2 * ctx.pi, 2 * k) * to_mpf(ctx, rational)
        if abs(riemann(2 * k, config).value - expected) > _tiny(config) * abs(expected):
            failures.append(f"s={2 * k}")
        if riemann(1 - 2 * k, config).exact != -bernoulli(2 * k) / (2 * k):
            failures.append(f"s={1 - 2 * k}")
    if riemann(0, config).exact != Fraction(-1, 2):
        failures.append("s=0")
    for k in range(1, 5):
        if abs(riemann(-2 * k, config).value) > _tiny(config):
            failures.append(f"s={-2 * k}")
    return _failures(failures)


def check_riemann_bridge(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    ctx = context(config.precision)
    failures = []
    for point in BRIDGE_POINTS:
        bessel = evaluate("1/2", point, config, store)
        reference = riemann(point, config)
        scale = ctx.power(ctx.pi, ctx.mpf(point) if isinstance(point, str) else point)
        bound = abs(scale) * bessel.error_estimate + reference.error_estimate
        if abs(scale * bessel.value - reference.value) > bound:
            failures.append(f"s={point}")
    return _failures(failures)


def check_product_of_roots(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    ctx = context(config.precision)
    failures = []
    expectations = {"1/2": ctx.sqrt(2), "0": ctx.root(2 * ctx.pi, 4)}
    for text, expected in expectations.items():
        value = product_of_roots(text, config.precision)
        if abs(value - expected) > _tiny(config):
            failures.append(f"nu={text}")
        slope = derivative(text, 0, config, store).value
        if abs(ctx.exp(-slope) - value) > ctx.ldexp(value, 8 - config.precision):
            failures.append(f"exp(-slope) at nu={text}")
    return _failures(failures)


def check_contour(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    failures = []
    for point in (0, 2, -2, 4, -4):
        z_value = z_repr("0", point, config, store)
        value = evaluate("0", point, config, store)
        if abs(z_value.value - value.value) > z_value.error_estimate + value.error_estimate:
            failures.append(f"s={point}")
    # the d-series gives Z no truncation error at a fixed depth, and is absent at nu = 1/2
    slope_config = config.with_overrides(beta_policy="fixed", beta_terms=CONTOUR_DEPTH)
    for text in ("0", "1/2"):
        z_slope = z_slope_at_origin(text, slope_config, store)
        slope = derivative(text, 0, config, store)
        gap = abs(z_slope.value - slope.value)
        if not gap > 10 * (z_slope.error_estimate + slope.error_estimate):
            failures.append(f"slopes at the origin agree for nu={text}")
    return _failures(failures)


# recursions


def check_linear_recursion(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    failures = []
    for text in RECURSION_ORDERS:
        order = Order.parse(text)
        nu = order.value
        values = {k: evaluate(order, 2 * k, config, store).exact for k in range(1, 10)}
        for n in range(0, 9):
            left = sum(
                (-1) ** k * 4**k * values[k + 1] / (math.factorial(n - k) * pochhammer(nu + 1, n - k))
                for k in range(n + 1)
            )
            right = 1 / (4 * math.factorial(n) * pochhammer(nu + 1, n + 1))
            if left != right:
                failures.append(f"nu={text} n={n}")
    return _failures(failures)


def check_quadratic_recursion(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    failures = []
    for text in RECURSION_ORDERS:
        order = Order.parse(text)
        values = {k: evaluate(order, 2 * k, config, store).exact for k in range(1, 7)}
        for n in range(2, 7):
            right = sum(values[k] * values[n - k] for k in range(1, n))
            if values[n] * (n + order.value) != right:
                failures.append(f"nu={text} n={n}")
    return _failures(failures)


def check_cross_identities(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    failures = []
    order = Order.parse("0")
    c_values = store.table("c", order, 31, config.precision)
    d_values = store.table("d", order, 31, config.precision)
    for m in range(31):
        if d_values[m + 2] * c_values[0] != c_values[m]:
            failures.append(f"d/c m={m}")
    for text in RECURSION_ORDERS:
        a_values = store.table("a", Order.parse(text), 11, config.precision)
        for n in range(1, 11):
            zeta_value = evaluate(text, 2 * n, config, store).exact
            if a_values[n] != (-1) ** (n + 1) * 2 ** (2 * n + 1) * zeta_value:
                failures.append(f"a/zeta nu={text} n={n}")
    half = store.table("a", Order.parse("1/2"), 13, config.precision)
    for n in range(1, 13):
        if half[n] != 2 ** (4 * n) * bernoulli(2 * n) / math.factorial(2 * n):
            failures.append(f"bernoulli n={n}")
    return _failures(failures)


# oracle


def check_oracle(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    failures = []
    automatic = config.with_overrides(split_T=AUTO_SPLIT)
    for text, point in ORACLE_POINTS:
        value = evaluate(text, point, automatic, store)
        oracle = direct_sum(text, point, 400, config.precision)
        difference = abs(value.value - oracle.value)
        if difference > value.error_estimate + oracle.tail_estimate:
            failures.append(f"nu={text} s={point}")
        if text == "1/2" and difference > _tiny(config, -30):
            failures.append(f"nu=1/2 s={point} beyond 1e-30")
    return _failures(failures)


def check_oracle_refinement(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    failures = []
    for terms in (50, 100, 200):
        coarse, fine = refine("0", "2.5", terms, config.precision)
        if abs(coarse.value - fine.value) > coarse.tail_estimate:
            failures.append(f"N={terms}")
    for text in ("0", "1/2", "1", "3/2"):
        order = Order.parse(text)
        oracle = direct_sum(order, 2, 200, config.precision)
        expected = to_mpf(context(config.precision), printed_even_value(order.value, 1))
        if abs(oracle.value - expected) > oracle.tail_estimate:
            failures.append(f"closed form nu={text}")
    return _failures(failures)


def check_zeros(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    ctx = context(config.precision)
    failures = []
    for text in ("0", "1/2", "1"):
        table = zeros(Order.parse(text), 200, config.precision)
        if not table.residuals_ok():
            failures.append(f"residuals nu={text}")
    half = zeros(Order.parse("1/2"), 200, config.precision)
    if any(abs(half.zero(n) - n * ctx.pi) > _tiny(config) for n in range(1, 201)):
        failures.append("nu=1/2 zeros differ from n pi")
    return _failures(failures)


# stolarsky


def check_stolarsky(config: EvalConfig, store: CoefficientStore) -> CheckOutcome:
    ctx = context(config.precision)
    quarter = store.table("c", Order.parse("1/4"), 41, config.precision)
    zero = store.table("c", Order.parse("0"), 41, config.precision)
    target = ctx.cospi(ctx.mpf(1) / 4)
    early = abs(to_mpf(ctx, quarter[10] / zero[10]) - target)
    late = abs(to_mpf(ctx, quarter[40] / zero[40]) - target)
    return late < early, f"|c_40 ratio - cos| = {ctx.nstr(late, 5)}, |c_10 ratio - cos| = {ctx.nstr(early, 5)}"


SUITES: Dict[str, Dict[str, Check]] = {
    "known": {
        "even_values": check_even_values,
        "origin": check_origin,
        "negative_even": check_negative_even,
        "residues": check_residues,
        "riemann": check_riemann,
        "riemann_bridge": check_riemann_bridge,
        "product_of_roots": check_product_of_roots,
        "contour": check_contour,
    },
    "recursions": {
        "linear": check_linear_recursion,
        "quadratic": check_quadratic_recursion,
        "cross_identities": check_cross_identities,
    },
    "oracle": {
        "direct_sum": check_oracle,
        "refinement": check_oracle_refinement,
        "zeros": check_zeros,
    },
    "stolarsky": {
        "trend": check_stolarsky,
    },
}
ALL_SUITES = "all"


class VerificationRunner:
    """Runs verification suites concurrently.

    Args:
        config (Optional[EvalConfig], optional): Settings for every check. Defaults to EvalConfig().
        store (Optional[CoefficientStore], optional): Shared coefficient store. Defaults to the process store.
    """

    def __init__(self, config: Optional[EvalConfig] = None, store: Optional[CoefficientStore] = None):
        self._config = config or EvalConfig()
        self._store = store or default_store()

    @staticmethod
    def suite_names(suite: str) -> List[str]:
        if suite == ALL_SUITES:
            return list(SUITES)
        if suite not in SUITES:
            raise KeyError(f"{suite} not a registered verification suite.")
        return [suite]

    async def run_check(self, suite: str, name: str, check: Check) -> CheckResult:
        try:
            passed, detail = await asyncio.to_thread(check, self._config, self._store)
        except (BesselZetaError, AssertionError) as e:
            passed, detail = False, f"{e.__class__.__name__}: {e}"
        if not passed:
            logging.error(f"Verification {suite}/{name} failed: {detail}")
        return CheckResult(suite=suite, name=name, passed=passed, detail="" if passed else detail)

    async def run(self, suite: str = ALL_SUITES) -> List[CheckResult]:
        pending = [
            self.run_check(suite_name, name, check)
            for suite_name in self.suite_names(suite)
            for name, check in SUITES[suite_name].items()
        ]
        return list(await asyncio.gather(*pending))
