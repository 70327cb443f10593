"""Command line front end of besselzeta.

Every subcommand builds a :class:`CommandOutput` which is then written as json, csv or plain
text. Library errors map to exit codes: 1 usage or configuration, 2 domain (poles and removed
points included), 3 nonconvergence, inconsistent coefficients, lock timeouts or failed verification.
"""

import argparse
import asyncio
import dataclasses
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, NoReturn, Optional, Sequence

import mpmath

from besselzeta.bessel.zeros import ZeroFinder
from besselzeta.cli.cache import DEFAULT_CACHE_PATH, load_tables, store_tables
from besselzeta.cli.render import ReportRenderer, table_inputs
from besselzeta.cli.verify import ALL_SUITES, SUITES, VerificationRunner
from besselzeta.coefficients.store import CoefficientStore
from besselzeta.core.config import EvalConfig
from besselzeta.core.errors import (
    BesselZetaError,
    ConfigError,
    ConsistencyError,
    DomainError,
    NonConvergenceError,
    PoleError,
)
from besselzeta.core.numerics import decimal_digits, is_rational_literal, parse_rational
from besselzeta.core.order import Order
from besselzeta.zeta.hawkins import HawkinsEvaluator
from besselzeta.zeta.result import EvalResult
from besselzeta.zeta.riemann import riemann
from besselzeta.zeta.special import product_of_roots, residue

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_NONCONVERGENCE = 3

OUTPUT_FORMATS = ("json", "csv", "plain")
FAMILIES = ("c", "d", "a", "alpha", "beta")
RECORD_COLUMNS = [
    "nu",
    "mode",
    "s",
    "value_re",
    "value_im",
    "error_estimate",
    "classification",
    "alpha_terms_used",
    "beta_terms_used",
    "method",
    "prec",
    "split",
]


class UsageError(BesselZetaError):
    """Raised for malformed command lines."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


@dataclasses.dataclass
class CommandOutput:
    """Result of a subcommand in every output format.

    Args:
        payload (Any): Json document.
        columns (List[str]): Column names of the csv and table renderings.
        rows (List[List[Any]]): Rows of the csv and table renderings.
        title (str, optional): Title line of the table rendering. Defaults to ''.
        plain_format (str, optional): Registered format used for plain output. Defaults to ``table``.
        plain_inputs (Optional[Dict[str, Any]], optional): Inputs of ``plain_format``, defaults to the table inputs.
        exit_code (int, optional): Exit code of the command. Defaults to EXIT_OK.
    """

    payload: Any
    columns: List[str]
    rows: List[List[Any]]
    title: str = ""
    plain_format: str = "table"
    plain_inputs: Optional[Dict[str, Any]] = None
    exit_code: int = EXIT_OK


def _literal(text: str) -> str:
    try:
        parse_rational(text)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e))
    return text.strip()


def _point(text: str) -> str:
    for part in text.split(",", 1):
        _literal(part)
    return text.strip()


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer.")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}.")
    return value


def _beta(text: str) -> str:
    if text != "auto":
        try:
            if int(text) < 0:
                raise ValueError
        except ValueError:
            raise argparse.ArgumentTypeError(f"--beta takes 'auto' or a non-negative integer, got {text!r}.")
    return text


def point_value(text: str) -> Any:
    """Exact Fraction for a real rational literal, the text itself otherwise."""
    if "," not in text and is_rational_literal(text):
        return parse_rational(text)
    return text


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="YAML file overlaying the packaged evaluation defaults.")
    common.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    common.add_argument("--cache", default=DEFAULT_CACHE_PATH, help="Coefficient cache file.")
    common.add_argument("--no-cache", action="store_true", help="Neither read nor write the coefficient cache.")
    common.add_argument("--format", default="json", choices=OUTPUT_FORMATS, dest="output_format")
    common.add_argument("--prec", type=_positive, help="Precision in bits.")

    evaluation = _Parser(add_help=False)
    evaluation.add_argument("--nu", required=True, type=_literal)
    evaluation.add_argument("--s", required=True, action="append", type=_point, help="Point as re[,im], repeatable.")
    evaluation.add_argument("--split", help="Split point T or 'auto'.")
    evaluation.add_argument("--alpha-terms", type=_positive)
    evaluation.add_argument("--beta", type=_beta, help="'auto' for optimal truncation or a fixed depth.")
    evaluation.add_argument("--remainder", choices=["quadrature", "none"])

    parser = _Parser(prog="besselzeta", description="Bessel zeta function evaluation and verification.")
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("eval", parents=[common, evaluation], help="Evaluate zeta_nu(s).")
    commands.add_parser("deriv", parents=[common, evaluation], help="Evaluate zeta_nu'(s).")

    residue_parser = commands.add_parser("residue", parents=[common], help="Residue at a pole.")
    residue_parser.add_argument("--nu", required=True, type=_literal)
    residue_parser.add_argument("--pole", required=True, type=int)

    coeffs_parser = commands.add_parser("coeffs", parents=[common], help="Dump a coefficient table.")
    coeffs_parser.add_argument("--family", required=True, choices=FAMILIES)
    coeffs_parser.add_argument("--nu", required=True, type=_literal)
    coeffs_parser.add_argument("--count", required=True, type=_positive)
    coeffs_parser.add_argument("--exact", action="store_true", help="Rational arithmetic even for decimal orders.")

    zeros_parser = commands.add_parser("zeros", parents=[common], help="Positive zeros of J_nu.")
    zeros_parser.add_argument("--nu", required=True, type=_literal)
    zeros_parser.add_argument("--count", required=True, type=_positive)

    riemann_parser = commands.add_parser("riemann", parents=[common], help="Riemann zeta(s).")
    riemann_parser.add_argument("--s", required=True, action="append", type=_point)

    roots_parser = commands.add_parser("prod-roots", parents=[common], help="Regularized product of the zeros.")
    roots_parser.add_argument("--nu", required=True, type=_literal)

    verify_parser = commands.add_parser("verify", parents=[common], help="Run verification suites.")
    verify_parser.add_argument("--suite", default=ALL_SUITES, choices=[ALL_SUITES, *SUITES])
    verify_parser.add_argument("--output", help="Also write the plain report to this .txt file.")
    return parser


def build_config(args: argparse.Namespace) -> EvalConfig:
    """Packaged defaults, overlaid by ``--config`` and then by the flags."""
    overrides: Dict[str, Any] = {"precision": args.prec}
    if getattr(args, "split", None) is not None:
        overrides["split_T"] = args.split
    overrides["alpha_terms"] = getattr(args, "alpha_terms", None)
    overrides["remainder"] = getattr(args, "remainder", None)
    beta = getattr(args, "beta", None)
    if beta == "auto":
        overrides["beta_policy"] = "optimal"
    elif beta is not None:
        overrides.update(beta_policy="fixed", beta_terms=int(beta))
    return EvalConfig.load(args.config).with_overrides(**overrides)


def evaluation_record(order: Order, point: str, result: EvalResult) -> Dict[str, Any]:
    record = {"nu": order.text, "mode": order.mode, "s": point}
    record.update(result.to_record())
    return record


def _record_row(record: Dict[str, Any]) -> List[Any]:
    flat = dict(record, value_re=record["value"]["re"], value_im=record["value"]["im"])
    return ["" if flat.get(column) is None else flat[column] for column in RECORD_COLUMNS]


def _records_output(records: List[Dict[str, Any]], title: str) -> CommandOutput:
    return CommandOutput(
        payload=records if len(records) > 1 else records[0],
        columns=RECORD_COLUMNS,
        rows=[_record_row(record) for record in records],
        title=title,
        plain_format="result",
        plain_inputs={"records": records},
    )


def command_evaluate(args: argparse.Namespace, config: EvalConfig, store: CoefficientStore) -> CommandOutput:
    order = Order.parse(args.nu)
    evaluator = HawkinsEvaluator(order, config, store)
    operation = evaluator.value if args.command == "eval" else evaluator.slope
    records = [evaluation_record(order, point, operation(point_value(point))) for point in args.s]
    return _records_output(records, f"{args.command} nu={order.text}")


def command_residue(args: argparse.Namespace, config: EvalConfig, store: CoefficientStore) -> CommandOutput:
    order = Order.parse(args.nu)
    value = residue(order, args.pole, config.working_precision, store)
    text = mpmath.nstr(value, decimal_digits(config.precision))
    payload = {"nu": order.text, "mode": order.mode, "pole": args.pole, "residue": text, "prec": config.precision}
    return CommandOutput(
        payload=payload,
        columns=["nu", "pole", "residue"],
        rows=[[order.text, args.pole, text]],
        title=f"residue of zeta_{order.text}",
    )


def command_coeffs(args: argparse.Namespace, config: EvalConfig, store: CoefficientStore) -> CommandOutput:
    order = Order.parse(args.nu)
    if args.exact and not order.exact:
        order = Order(value=order.value, exact=True, text=str(order.value))
    table = store.table(args.family, order, args.count, config.precision)
    digits = decimal_digits(config.precision)

    def text(entry: Any) -> str:
        return str(entry) if isinstance(entry, Fraction) else mpmath.nstr(entry, digits)

    values = [text(entry) for entry in table.entries]
    payload: Dict[str, Any] = {
        "family": table.family,
        "nu": order.text,
        "mode": order.mode,
        "prec": table.precision,
        "first_index": table.first_index,
        "values": values,
    }
    if table.beta0 is not None:
        payload["beta0"] = text(table.beta0)
    return CommandOutput(
        payload=payload,
        columns=["index", table.family],
        rows=[[index, value] for index, value in zip(table.indices(), values)],
        title=f"{table.family} coefficients, nu={order.text} ({order.mode})",
    )


def command_zeros(args: argparse.Namespace, config: EvalConfig, store: CoefficientStore) -> CommandOutput:
    order = Order.parse(args.nu)
    table = ZeroFinder().zeros(order, args.count, config.working_precision)
    values = [mpmath.nstr(zero, decimal_digits(config.precision)) for zero in table.zeros]
    return CommandOutput(
        payload={"nu": order.text, "prec": config.precision, "zeros": values},
        columns=["n", "zero"],
        rows=[[n, value] for n, value in enumerate(values, start=1)],
        title=f"zeros of J_{order.text}",
    )


def command_riemann(args: argparse.Namespace, config: EvalConfig, store: CoefficientStore) -> CommandOutput:
    records = []
    for point in args.s:
        record = {"nu": "", "mode": "", "s": point}
        record.update(riemann(point_value(point), config).to_record())
        records.append(record)
    return _records_output(records, "riemann zeta")


def command_product_of_roots(args: argparse.Namespace, config: EvalConfig, store: CoefficientStore) -> CommandOutput:
    order = Order.parse(args.nu)
    text = mpmath.nstr(product_of_roots(order, config.working_precision), decimal_digits(config.precision))
    return CommandOutput(
        payload={"nu": order.text, "value": text, "prec": config.precision},
        columns=["nu", "product"],
        rows=[[order.text, text]],
        title="regularized product of the zeros",
    )


def command_verify(args: argparse.Namespace, config: EvalConfig, store: CoefficientStore) -> CommandOutput:
    runner = VerificationRunner(config, store)
    results = asyncio.run(runner.run(args.suite))
    checks = [result.to_record() for result in results]
    passed = sum(1 for result in results if result.passed)
    inputs = {"suite": args.suite, "checks": checks, "passed": passed, "failed": len(checks) - passed}
    if args.output:
        renderer = ReportRenderer()
        if not asyncio.run(renderer.render_to_file(args.output, inputs, "verify")):
            logging.error(f"Verification report was not written to {args.output}.")
    return CommandOutput(
        payload=inputs,
        columns=["suite", "name", "passed", "detail"],
        rows=[[check["suite"], check["name"], check["passed"], check["detail"]] for check in checks],
        plain_format="verify",
        plain_inputs=inputs,
        exit_code=EXIT_OK if passed == len(checks) else EXIT_NONCONVERGENCE,
    )


COMMANDS: Dict[str, Callable[[argparse.Namespace, EvalConfig, CoefficientStore], CommandOutput]] = {
    "eval": command_evaluate,
    "deriv": command_evaluate,
    "residue": command_residue,
    "coeffs": command_coeffs,
    "zeros": command_zeros,
    "riemann": command_riemann,
    "prod-roots": command_product_of_roots,
    "verify": command_verify,
}


def render_output(output: CommandOutput, output_format: str) -> str:
    if output_format == "json":
        return json.dumps(output.payload, indent=2)
    renderer = ReportRenderer()
    if output_format == "csv":
        rendered = renderer.render_sync("csv", {"columns": output.columns, "rows": output.rows})
    else:
        inputs = output.plain_inputs or table_inputs(output.title, output.columns, output.rows)
        rendered = renderer.render_sync(output.plain_format, inputs)
    if rendered is None:
        raise BesselZetaError(f"Could not render {output_format} output, check logs.")
    return rendered.rstrip("\n")


def error_object(error: BaseException) -> Dict[str, Any]:
    """Json error document for a failed command."""
    body: Dict[str, Any] = {"type": error.__class__.__name__, "message": str(error)}
    if isinstance(error, PoleError):
        body["pole"] = error.pole
        if error.residue is not None:
            body["residue"] = mpmath.nstr(error.residue, 20)
    return {"error": body}


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, (UsageError, ConfigError)):
        return EXIT_USAGE
    if isinstance(error, DomainError):
        return EXIT_DOMAIN
    if isinstance(error, (NonConvergenceError, ConsistencyError, TimeoutError, asyncio.TimeoutError)):
        return EXIT_NONCONVERGENCE
    return EXIT_USAGE


def _preload(store: CoefficientStore, path: str) -> None:
    if not os.path.exists(os.path.expanduser(path)):
        logging.debug(f"No coefficient cache at {path}.")
        return
    store.preload(load_tables(path))


def _persist(store: CoefficientStore, path: str) -> None:
    snapshots = store.snapshots()
    if not snapshots:
        return
    try:
        store_tables(path, snapshots)
    except OSError as e:
        logging.warning(f"Could not write coefficient cache {path}: {e}")


def _requested_format(argv: List[str]) -> str:
    """Output format named on a command line that may fail to parse."""
    for position, argument in enumerate(argv):
        if argument.startswith("--format="):
            requested = argument.partition("=")[2]
        elif argument == "--format" and position + 1 < len(argv):
            requested = argv[position + 1]
        else:
            continue
        return requested if requested in OUTPUT_FORMATS else "plain"
    return "json"


def _report_error(error: BaseException, output_format: str) -> int:
    if output_format == "json":
        print(json.dumps(error_object(error), indent=2))
    else:
        print(f"besselzeta: {error.__class__.__name__}: {error}", file=sys.stderr)
    return exit_code_for(error)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command line, printing its output.

    Args:
        argv (Optional[Sequence[str]], optional): Arguments without the program name. Defaults to sys.argv[1:].

    Returns:
        int: Exit code.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    output_format = _requested_format(argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return _report_error(e, output_format)
    except SystemExit as e:
        # --help
        return int(e.code or EXIT_OK)

    logging.basicConfig(level=getattr(logging, args.log_level), stream=sys.stderr, force=True)
    store = CoefficientStore()
    try:
        config = build_config(args)
        if not args.no_cache:
            _preload(store, args.cache)
        output = COMMANDS[args.command](args, config, store)
        print(render_output(output, args.output_format))
    except (BesselZetaError, TimeoutError, asyncio.TimeoutError) as e:
        return _report_error(e, args.output_format)
    finally:
        if not args.no_cache:
            _persist(store, args.cache)
    return output.exit_code


def main() -> None:
    sys.exit(run())
