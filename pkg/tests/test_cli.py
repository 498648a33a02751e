import io
import json
import sys

import pandas
import pytest
from click.testing import CliRunner

from cesnorms.cli.main import cli, main

_CC_STAR_ALL_2 = 4.0 * (3.14159265358979 ** 2 / 6.0 - 1.0)


def _invoke(*args):
    runner = CliRunner(mix_stderr=False)
    return runner.invoke(cli, ["--quiet"] + list(args))


def _doc(result):
    return json.loads(result.stdout.strip().splitlines()[-1])


@pytest.fixture
def ones_list(tmp_path):
    path = tmp_path / "ones.csv"
    path.write_text("# four ones\n1\n1\n1\n1\n")
    return str(path)


def test_norm_power_pair():
    result = _invoke("norm", "--op", "cesaro", "--cone", "all", "--u", "power:0.5", "--v", "power:0.5")

    assert result.exit_code == 0
    doc = _doc(result)
    assert doc["value"] == pytest.approx(2.0)
    assert doc["status"] == "ClosedForm"
    assert doc["n_used"] == 0
    assert doc["op"] == "cesaro"
    assert doc["cone"] == "all"


def test_norm_powerpair_shorthand():
    result = _invoke("norm", "--op", "copson", "--cone", "nonincr", "--u", "powerpair:-1")

    assert result.exit_code == 0
    assert _doc(result)["value"] == "inf"


def test_norm_open_problem():
    result = _invoke(
        "norm", "--op", "copson-minus-identity", "--cone", "nonincr", "--u", "powerpair:0.5")

    assert result.exit_code == 2
    doc = _doc(result)
    assert doc["status"] == "Unsupported"
    assert "open problem" in doc["reason"]


@pytest.mark.parametrize("extra", [[], ["--generic"]])
def test_norm_list(ones_list, extra):
    result = _invoke(
        "norm", "--op", "cesaro", "--cone", "all",
        "--u", "list:" + ones_list, "--v", "list:" + ones_list, *extra)

    assert result.exit_code == 0
    doc = _doc(result)
    assert doc["value"] == pytest.approx(1.0)
    assert doc["status"] == "TruncatedConverged"
    assert doc["residual"] == 0.0


def test_norm_power_scan():
    result = _invoke(
        "norm", "--op", "cesaro", "--cone", "all",
        "--u", "power:0.5", "--v", "power:0.25", "--n-max", "1000")

    assert result.exit_code == 0
    doc = _doc(result)
    assert doc["n_used"] == 1000
    assert doc["status"] in ("TruncatedConverged", "TruncatedLowerBound", "Divergent")


@pytest.mark.parametrize("direction,cone,alpha,expected", [
    ("c-le-cstar", "all", "-1", 3.0),
    ("cstar-le-c", "nonneg", "2", 0.0),
    ("cstar-le-c", "all", "2", _CC_STAR_ALL_2)
])
def test_two_op_power(direction, cone, alpha, expected):
    result = _invoke("two-op", "--dir", direction, "--cone", cone, "--u", "powerpair:" + alpha)

    assert result.exit_code == 0
    doc = _doc(result)
    assert doc["value"] == pytest.approx(expected, rel=1e-9)
    assert doc["status"] == "ClosedForm"
    assert doc["direction"] == direction


def test_two_op_list(ones_list):
    result = _invoke(
        "two-op", "--dir", "c-le-cstar", "--cone", "all",
        "--u", "list:" + ones_list, "--v", "list:" + ones_list)

    assert result.exit_code == 0
    assert _doc(result)["status"] == "TruncatedConverged"


def _table(result):
    return pandas.read_csv(io.StringIO(result.stdout), comment="#")


def test_power_table():
    result = _invoke("power-table", "--theorem", "cesaro", "--from", "-1", "--to", "0.9", "--step", "0.1")

    assert result.exit_code == 0
    df = _table(result)
    assert list(df.columns) == ["alpha", "cone", "value", "case_label"]
    assert len(df) == 80
    assert set(df["cone"]) == {"all", "nonneg", "nonincr", "nondecr"}

    row = df[(df["cone"] == "all") & (df["alpha"] == 0.5)].iloc[0]
    assert row["value"] == pytest.approx(2.0)


def test_power_table_omitted_cone():
    result = _invoke(
        "power-table", "--theorem", "copson-minus-identity", "--from", "0.5", "--to", "1", "--step", "0.5")

    assert result.exit_code == 0
    assert result.stdout.startswith("# nonincr omitted")

    df = _table(result)
    assert "nonincr" not in set(df["cone"])
    assert list(df[df["cone"] == "nondecr"]["value"]) == [0.0, 0.0]
    assert list(df[df["cone"] == "all"]["value"]) == pytest.approx([3.0, 2.0])


def test_power_table_single_alpha():
    result = _invoke("power-table", "--theorem", "copson", "--from", "1", "--to", "1")

    assert result.exit_code == 0
    assert len(_table(result)) == 4


def test_power_table_bad_step():
    result = _invoke("power-table", "--theorem", "copson", "--from", "0", "--to", "1", "--step", "0")
    assert result.exit_code == 1


@pytest.mark.parametrize("args", [
    ["--suite", "identities"],
    ["--suite", "monotonicity"],
    ["--suite", "witness", "--n-max", "2000"],
    ["--suite", "oracle", "--trials", "50", "--n-max", "2000"],
    ["--suite", "power-consistency", "--n-max", "2000"]
])
def test_verify(args):
    result = _invoke("verify", *args)

    assert result.exit_code == 0
    reports = json.loads(result.stdout)
    assert reports
    assert all(item["passed"] for item in reports)


def test_bad_weight_spec():
    result = _invoke("norm", "--op", "cesaro", "--cone", "all", "--u", "nope", "--v", "power:1")
    assert result.exit_code == 1


def test_missing_weight():
    result = _invoke("norm", "--op", "cesaro", "--cone", "all", "--u", "power:1")
    assert result.exit_code == 1


def test_main_usage_error(monkeypatch):
    monkeypatch.setattr(sys, "argv", ["cesnorms", "norm", "--op", "bogus", "--cone", "all"])

    with pytest.raises(SystemExit) as info:
        main()

    assert info.value.code == 1


def test_norm_document_keys(ones_list):
    result = _invoke(
        "norm", "--op", "copson-shift-diagonal", "--cone", "nonneg", "--n-max", "2000",
        "--u", "list:" + ones_list, "--v", "power:0.5")

    assert result.exit_code == 0
    assert set(_doc(result).keys()) == {"op", "cone", "value", "status", "n_used", "residual"}

    result = _invoke("two-op", "--dir", "cstar-le-c", "--cone", "all", "--u", "powerpair:0.5")

    assert result.exit_code == 0
    assert set(_doc(result).keys()) == {"direction", "cone", "value", "status", "n_used", "residual"}


@pytest.mark.parametrize("args", [
    ["norm", "--op", "cesaro-minus-identity", "--cone", "nonincr",
     "--u", "power:0.3", "--v", "power:0.1", "--n-max", "3000"],
    ["power-table", "--theorem", "c-le-cstar", "--from", "-1", "--to", "0.5", "--step", "0.25"],
    ["verify", "--suite", "oracle", "--seed", "42", "--trials", "20", "--n-max", "500"]
])
def test_reruns_are_byte_identical(args):
    first = _invoke(*args)
    second = _invoke(*args)

    assert first.exit_code == 0
    assert first.stdout == second.stdout
