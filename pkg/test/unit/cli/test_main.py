import csv
import json
import os
from typing import Any, List

import pytest

from besselzeta.cli import main
from besselzeta.cli.cache import load_tables
from besselzeta.cli.main import (
    COMMANDS,
    RECORD_COLUMNS,
    EXIT_DOMAIN,
    EXIT_NONCONVERGENCE,
    EXIT_OK,
    EXIT_USAGE,
    build_config,
    build_parser,
    error_object,
    point_value,
    run,
)
from besselzeta.core.errors import PoleError

TEST_EVAL_CONFIG_PATH = "test/assets/test_eval_config.yaml"
TEST_BAD_EVAL_CONFIG_PATH = "test/assets/test_bad_eval_config.yaml"


def run_json(capsys: pytest.CaptureFixture, arguments: List[str]) -> Any:
    exit_code = run([*arguments, "--no-cache"])
    return exit_code, json.loads(capsys.readouterr().out)


def test_eval_closed_form(capsys: pytest.CaptureFixture) -> None:
    exit_code, record = run_json(capsys, ["eval", "--nu", "0", "--s", "2"])
    assert exit_code == EXIT_OK
    assert record["value"]["re"] == "0.25"
    assert record["exact"] == "1/4"
    assert record["classification"] == "PosEven(1)"
    assert record["nu"] == "0" and record["mode"] == "exact"


def test_eval_several_points(capsys: pytest.CaptureFixture) -> None:
    exit_code, records = run_json(capsys, ["eval", "--nu", "1/2", "--s", "2", "--s", "0"])
    assert exit_code == EXIT_OK
    assert [record["exact"] for record in records] == ["1/6", "-1/2"]


def test_deriv_at_origin(capsys: pytest.CaptureFixture) -> None:
    exit_code, record = run_json(capsys, ["deriv", "--nu", "1/2", "--s", "0"])
    assert exit_code == EXIT_OK
    assert record["value"]["re"].startswith("-0.3465735902")


def test_residue(capsys: pytest.CaptureFixture) -> None:
    exit_code, payload = run_json(capsys, ["residue", "--nu", "1/2", "--pole", "1"])
    assert exit_code == EXIT_OK
    assert payload["residue"].startswith("0.3183098861")


def test_riemann_bernoulli_branch(capsys: pytest.CaptureFixture) -> None:
    exit_code, record = run_json(capsys, ["riemann", "--s", "-1"])
    assert exit_code == EXIT_OK
    assert record["branch"] == "bernoulli"
    assert record["exact"] == "-1/12"


def test_prod_roots(capsys: pytest.CaptureFixture) -> None:
    exit_code, payload = run_json(capsys, ["prod-roots", "--nu", "1/2", "--prec", "64"])
    assert exit_code == EXIT_OK
    assert payload["value"].startswith("1.41421356")
    assert payload["prec"] == 64


def test_coeffs(capsys: pytest.CaptureFixture) -> None:
    exit_code, payload = run_json(capsys, ["coeffs", "--family", "c", "--nu", "0", "--count", "4"])
    assert exit_code == EXIT_OK
    assert payload["values"] == ["-1/8", "-1/8", "-25/128", "-13/32"]
    assert payload["first_index"] == 0


def test_coeffs_beta_reports_leading_value(capsys: pytest.CaptureFixture) -> None:
    exit_code, payload = run_json(capsys, ["coeffs", "--family", "beta", "--nu", "1/2", "--count", "3"])
    assert exit_code == EXIT_OK
    assert payload["beta0"].startswith("-0.6931471805")
    assert payload["values"][1:] == ["0", "0"]


def test_zeros(capsys: pytest.CaptureFixture) -> None:
    exit_code, payload = run_json(capsys, ["zeros", "--nu", "0", "--count", "2", "--prec", "64"])
    assert exit_code == EXIT_OK
    assert payload["zeros"][0].startswith("2.40482555")
    assert payload["zeros"][1].startswith("5.52007811")


def test_pole_error_document(capsys: pytest.CaptureFixture) -> None:
    exit_code, payload = run_json(capsys, ["eval", "--nu", "0", "--s", "1"])
    assert exit_code == EXIT_DOMAIN
    assert payload["error"]["type"] == "PoleError"
    assert payload["error"]["pole"] == 1
    assert payload["error"]["residue"].startswith("0.3183")


def test_order_out_of_range(capsys: pytest.CaptureFixture) -> None:
    exit_code, payload = run_json(capsys, ["eval", "--nu", "-2", "--s", "2"])
    assert exit_code == EXIT_DOMAIN
    assert payload["error"]["type"] == "DomainError"


def test_nonconvergence(capsys: pytest.CaptureFixture) -> None:
    exit_code, payload = run_json(capsys, ["eval", "--nu", "1/2", "--s", "2.5", "--alpha-terms", "4"])
    assert exit_code == EXIT_NONCONVERGENCE
    assert payload["error"]["type"] == "NonConvergenceError"


@pytest.mark.parametrize(
    "arguments",
    [
        ["eval", "--nu", "0"],
        ["eval", "--nu", "abc", "--s", "2"],
        ["coeffs", "--family", "gamma", "--nu", "0", "--count", "3"],
        ["zeros", "--nu", "0", "--count", "0"],
        ["frobnicate"],
    ],
)
def test_usage_errors(capsys: pytest.CaptureFixture, arguments: List[str]) -> None:
    exit_code, payload = run_json(capsys, arguments)
    assert exit_code == EXIT_USAGE
    assert payload["error"]["type"] == "UsageError"


def test_config_error(capsys: pytest.CaptureFixture) -> None:
    exit_code, payload = run_json(capsys, ["eval", "--nu", "0", "--s", "2", "--config", TEST_BAD_EVAL_CONFIG_PATH])
    assert exit_code == EXIT_USAGE
    assert payload["error"]["type"] == "ConfigError"


def test_plain_errors_go_to_stderr(capsys: pytest.CaptureFixture) -> None:
    assert run(["eval", "--nu", "0", "--s", "1", "--format", "plain", "--no-cache"]) == EXIT_DOMAIN
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "PoleError" in captured.err


def test_csv_output(capsys: pytest.CaptureFixture) -> None:
    assert run(["eval", "--nu", "0", "--s", "2", "--s", "-2", "--format", "csv", "--no-cache"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("nu,mode,s,value_re,value_im,error_estimate,classification")
    assert lines[1].startswith("0,exact,2,0.25,0.0,")
    assert lines[2].startswith("0,exact,-2,0.0625,0.0,")



def test_csv_quotes_complex_points(capsys: pytest.CaptureFixture) -> None:
    assert run(["eval", "--nu", "1/2", "--s=1.5,2", "--s", "2", "--format", "csv", "--no-cache"]) == EXIT_OK
    rows = list(csv.reader(capsys.readouterr().out.splitlines()))
    assert rows[0] == RECORD_COLUMNS
    assert all(len(row) == len(RECORD_COLUMNS) for row in rows)
    assert rows[1][2] == "1.5,2"
    assert rows[2][2] == "2"

def test_plain_output(capsys: pytest.CaptureFixture) -> None:
    assert run(["coeffs", "--family", "d", "--nu", "0", "--count", "3", "--format", "plain", "--no-cache"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "d coefficients, nu=0 (exact)"
    assert "25/16" in out


def test_plain_result_output(capsys: pytest.CaptureFixture) -> None:
    assert run(["eval", "--nu", "0", "--s", "0", "--format=plain", "--no-cache"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "classification  Origin" in out
    assert "exact           -1/4" in out


def test_cache_is_written_and_reused(capsys: pytest.CaptureFixture, tmp_path: Any) -> None:
    cache_path = os.path.join(str(tmp_path), "cache", "coefficients.yaml")
    arguments = ["coeffs", "--family", "d", "--nu", "1", "--count", "6", "--cache", cache_path]
    assert run(arguments) == EXIT_OK
    first = capsys.readouterr().out
    assert os.path.exists(cache_path)
    assert [table.family for table in load_tables(cache_path, strict=True)] == ["d"]
    assert run(arguments) == EXIT_OK
    assert capsys.readouterr().out == first


def test_verify_writes_report(capsys: pytest.CaptureFixture, tmp_path: Any) -> None:
    report_path = os.path.join(str(tmp_path), "report.txt")
    arguments = ["verify", "--suite", "stolarsky", "--output", report_path, "--no-cache", "--prec", "128"]
    assert run(arguments) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["failed"] == 0
    with open(report_path, "r") as open_report_file:
        assert "[PASS] stolarsky/trend" in open_report_file.read()


def test_build_config_layers_flags_over_file() -> None:
    arguments = ["eval", "--nu", "0", "--s", "2", "--config", TEST_EVAL_CONFIG_PATH, "--beta", "auto", "--prec", "96"]
    config = build_config(build_parser().parse_args(arguments))
    assert config.precision == 96
    assert config.beta_policy == "optimal"
    assert config.split_T == "auto"
    fixed = build_config(build_parser().parse_args(["eval", "--nu", "0", "--s", "2", "--beta", "5"]))
    assert fixed.beta_policy == "fixed" and fixed.beta_terms == 5


def test_point_value() -> None:
    assert point_value("-1/2") == -0.5
    assert point_value("2.5") == "2.5"
    assert point_value("1,2") == "1,2"


def test_error_object_for_removed_residue() -> None:
    body = error_object(PoleError("pole", -1))["error"]
    assert body == {"type": "PoleError", "message": "pole", "pole": -1}


@pytest.mark.parametrize("nu, s", [("0", "2.5"), ("1", "3.5")])
def test_eval_generic_point_at_default_precision(capsys: pytest.CaptureFixture, nu: str, s: str) -> None:
    exit_code, payload = run_json(capsys, ["eval", "--nu", nu, "--s", s])
    assert exit_code == EXIT_OK
    assert payload["classification"] == "Generic"


def test_lock_timeout_exit_code(capsys: pytest.CaptureFixture, monkeypatch: pytest.MonkeyPatch) -> None:
    def timed_out(*_: Any) -> Any:
        raise TimeoutError("Timeout acquiring coefficient store lock in 60 seconds.")

    monkeypatch.setitem(COMMANDS, "eval", timed_out)
    exit_code, payload = run_json(capsys, ["eval", "--nu", "0", "--s", "2"])
    assert exit_code == EXIT_NONCONVERGENCE
    assert payload["error"]["type"] == "TimeoutError"
    assert main.exit_code_for(TimeoutError()) == EXIT_NONCONVERGENCE
