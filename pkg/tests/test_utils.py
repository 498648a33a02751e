import json

import numpy
import pytest

import cesnorms.config
from cesnorms.cli.table import alpha_grid
from cesnorms.cli.weights import (is_matched_pair, parse_weight_spec,
                                  read_weight_list, resolve_weights)
from cesnorms.config import ConfigVars
from cesnorms.utils import (INF, WeightSpecError, ext_real, ext_real_json,
                            run_chunks, safe_product, split_range)


def test_split_range():
    chunks = split_range(1, 10, 3)

    assert chunks[0][0] == 1
    assert chunks[-1][1] == 10
    assert all(lo <= hi for lo, hi in chunks)
    assert all(nxt[0] == prev[1] + 1 for prev, nxt in zip(chunks, chunks[1:]))


def test_split_range_marks():
    assert split_range(1, 10, 1, marks=[5]) == [(1, 4), (5, 10)]
    assert split_range(1, 10, 1, marks=[1, 11]) == [(1, 10)]
    assert split_range(3, 2, 4) == []


def test_run_chunks_order():
    chunks = split_range(0, 99, 7)
    expected = [lo + hi for lo, hi in chunks]

    assert run_chunks(lambda item: item[0] + item[1], chunks, 1) == expected
    assert run_chunks(lambda item: item[0] + item[1], chunks, 4) == expected


def test_safe_product():
    prod = safe_product([0.0, 2.0, 0.0], [INF, 3.0, 1.0])
    assert list(prod) == [0.0, 6.0, 0.0]
    assert safe_product(2.0, INF) == INF


def test_ext_real():
    assert ext_real(INF) == INF
    assert ext_real_json(INF) == "inf"
    assert ext_real_json(-INF) == "-inf"
    assert ext_real_json(None) is None
    assert ext_real_json(1.5) == 1.5

    with pytest.raises(ValueError):
        ext_real(float("nan"))


def test_env_config(monkeypatch):
    monkeypatch.setenv(ConfigVars.N_MAX.value, "500")
    monkeypatch.setenv(ConfigVars.TOL.value, "1e-6")
    monkeypatch.setenv(ConfigVars.THREADS.value, "3")

    conf = cesnorms.config.get_env_config()

    assert conf.n_max == 500
    assert conf.tol == 1e-6
    assert conf.threads == 3


@pytest.mark.parametrize("name,raw", [
    (ConfigVars.N_MAX.value, "zero"),
    (ConfigVars.N_MAX.value, "0"),
    (ConfigVars.TOL.value, "-1"),
    (ConfigVars.DIVERGENCE_THRESHOLD.value, "inf")
])
def test_env_config_fallback(monkeypatch, name, raw):
    default = cesnorms.config.get_env_config()
    monkeypatch.setenv(name, raw)

    assert cesnorms.config.get_env_config() == default


def test_parse_power_specs():
    weight, pair = parse_weight_spec("power:0.5")
    assert weight.is_power and weight.alpha == 0.5 and not pair

    weight, pair = parse_weight_spec("powerpair:-1")
    assert weight.alpha == -1.0 and pair


@pytest.mark.parametrize("spec", ["", "power", "power:abc", "power:inf", "cubic:1"])
def test_parse_invalid_specs(spec):
    with pytest.raises(WeightSpecError):
        parse_weight_spec(spec)


def test_read_weight_list(tmp_path):
    path = tmp_path / "u.csv"
    path.write_text("# weights\n0.5\n\n1.0\n0\n")

    weight = read_weight_list(str(path))

    assert not weight.is_power
    assert list(weight.values) == [0.5, 1.0, 0.0]


def test_read_weight_list_errors(tmp_path):
    wide = tmp_path / "wide.csv"
    wide.write_text("1,2\n3,4\n")

    with pytest.raises(WeightSpecError):
        read_weight_list(str(wide))

    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert read_weight_list(str(empty)).length == 0


def test_read_weight_json(tmp_path):
    path = tmp_path / "u.json"
    path.write_text(json.dumps({"kind": "list", "values": [1, 2, 3]}))

    weight, _ = parse_weight_spec("json:" + str(path))
    assert list(weight.values) == [1.0, 2.0, 3.0]

    path.write_text(json.dumps({"kind": "cubic"}))

    with pytest.raises(WeightSpecError):
        parse_weight_spec("json:" + str(path))


def test_resolve_weights():
    u, v = resolve_weights("powerpair:0.3", None)
    assert u is v
    assert is_matched_pair(u, v)

    u, v = resolve_weights("power:0.3", "power:0.4")
    assert not is_matched_pair(u, v)

    with pytest.raises(WeightSpecError):
        resolve_weights("power:0.3", None)

    with pytest.raises(WeightSpecError):
        resolve_weights(None, None)


def test_alpha_grid():
    grid = alpha_grid(-1.0, 0.9, 0.1)

    assert len(grid) == 20
    assert grid[0] == -1.0
    assert grid[-1] == 0.9
    assert 0.5 in grid
    assert alpha_grid(1.0, 1.0, 0.1) == [1.0]

    with pytest.raises(ValueError):
        alpha_grid(0.0, 1.0, 0.0)

    with pytest.raises(ValueError):
        alpha_grid(1.0, 0.0, 0.1)
