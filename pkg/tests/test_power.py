import math

import numpy
import pytest

from cesnorms.enums import Cone, OpKind, PowerTheorem
from cesnorms.power import (POWER_THEOREMS, average_limit, breakpoint_index,
                            breakpoint_s, cesaro_minus_id_power, cesaro_power,
                            copson_minus_id_power, copson_power,
                            power_closed_form, theorem_value, two_op_cc_power,
                            two_op_cstarc_power)
from cesnorms.utils import INF, OpenProblemError, UnsupportedError

_ZETA_2 = math.pi ** 2 / 6.0
_BRUTE_ROWS = 10 ** 5


@pytest.mark.parametrize("func,alpha,cone,expected", [
    (cesaro_power, 0.5, Cone.ALL, 2.0),
    (cesaro_power, 0.5, Cone.NONINCR, 2.0),
    (cesaro_power, -1.0, Cone.NONNEG, 1.0),
    (cesaro_power, 1.0, Cone.ALL, INF),
    (cesaro_power, 0.5, Cone.NONDECR, 0.0),
    (cesaro_power, -0.5, Cone.NONDECR, 1.0),
    (cesaro_minus_id_power, 0.5, Cone.ALL, 3.0),
    (cesaro_minus_id_power, 0.5, Cone.NONINCR, 2.0),
    (cesaro_minus_id_power, -1.0, Cone.NONNEG, 1.0),
    (cesaro_minus_id_power, 1.0, Cone.NONINCR, INF),
    (copson_minus_id_power, 2.0, Cone.ALL, 1.5),
    (copson_minus_id_power, 0.5, Cone.NONNEG, 2.0),
    (copson_minus_id_power, 3.0, Cone.NONNEG, 1.0),
    (copson_minus_id_power, -1.0, Cone.ALL, INF),
    (copson_power, 0.0, Cone.ALL, INF),
    (copson_power, 2.0, Cone.NONDECR, 0.0),
    (two_op_cc_power, -1.0, Cone.ALL, 3.0),
    (two_op_cc_power, 0.5, Cone.ALL, 3.0),
    (two_op_cc_power, -1.0, Cone.NONNEG, 1.0),
    (two_op_cc_power, 0.5, Cone.NONNEG, 2.0),
    (two_op_cc_power, 1.0, Cone.NONNEG, INF),
    (two_op_cstarc_power, 0.5, Cone.NONNEG, 2.0),
    (two_op_cstarc_power, 0.5, Cone.ALL, 3.0),
    (two_op_cstarc_power, 2.0, Cone.NONNEG, 0.0),
    (two_op_cstarc_power, 0.0, Cone.ALL, INF)
])
def test_closed_forms(func, alpha, cone, expected):
    value = func(alpha, cone).value

    if expected == INF:
        assert value == INF
    else:
        assert value == pytest.approx(expected, rel=1e-9)


def test_zeta_branch():
    res = copson_power(1.0, Cone.NONNEG)

    assert abs(res.value - _ZETA_2) <= 1e-10
    assert res.special_values == {"zeta_arg": 2.0}


def test_m_alpha_branch():
    res = two_op_cstarc_power(2.0, Cone.ALL)

    assert abs(res.value - 4.0 * (_ZETA_2 - 1.0)) <= 1e-10
    assert res.value == pytest.approx(2.5797362, abs=1e-7)
    assert res.special_values["M_alpha"] == pytest.approx(_ZETA_2 - 1.0, abs=1e-12)


@pytest.mark.parametrize("alpha", [-3.0, -2.0, -1.0, -0.6, -0.3, -0.1])
def test_breakpoint_matches_brute_force(alpha):
    ns = numpy.arange(1, _BRUTE_ROWS + 1, dtype=float)
    vals = numpy.exp((alpha - 1.0) * numpy.log(ns)) * (ns - 1.0)
    best = int(numpy.argmax(vals)) + 1

    res = cesaro_minus_id_power(alpha, Cone.NONINCR)
    m = res.special_values["m_breakpoint"]

    assert m == breakpoint_index(alpha)
    assert best == m + 1
    assert abs(res.value - vals[best - 1]) <= 1e-12
    assert breakpoint_s(m) < alpha <= breakpoint_s(m + 1)


@pytest.mark.parametrize("m", range(2, 11))
def test_breakpoint_continuity(m):
    alpha = breakpoint_s(m)
    value = cesaro_minus_id_power(alpha, Cone.NONINCR).value
    left = math.exp((alpha - 1.0) * math.log(m)) * (m - 1)
    right = math.exp((alpha - 1.0) * math.log(m + 1)) * m

    assert abs(left - right) <= 1e-12
    assert abs(value - left) <= 1e-12


def test_breakpoint_edges():
    assert breakpoint_s(1) == -INF
    assert breakpoint_s(2) < breakpoint_s(3) < 0
    assert breakpoint_index(-10.0) == 1

    with pytest.raises(ValueError):
        breakpoint_index(0.0)

    with pytest.raises(ValueError):
        breakpoint_s(0)


def test_average_limit():
    assert average_limit(0.5) == pytest.approx(2.0)
    assert average_limit(-1.0) == pytest.approx(0.5)
    assert average_limit(1.0) == INF


def test_case_labels():
    assert cesaro_power(0.5, Cone.ALL).case_label == "0 <= alpha < 1"
    assert cesaro_minus_id_power(-0.1, Cone.NONINCR).case_label == "s_10 < alpha <= s_11"
    assert two_op_cstarc_power(2.0, Cone.ALL).case_label == "alpha > 1"


def test_copson_minus_identity_cones():
    with pytest.raises(OpenProblemError):
        copson_minus_id_power(1.0, Cone.NONINCR)

    with pytest.raises(UnsupportedError) as excinfo:
        copson_minus_id_power(1.0, Cone.NONDECR)

    assert not isinstance(excinfo.value, OpenProblemError)


def test_two_operator_cones():
    with pytest.raises(ValueError):
        two_op_cc_power(0.5, Cone.NONINCR)

    with pytest.raises(ValueError):
        two_op_cstarc_power(0.5, Cone.NONDECR)


def test_non_finite_alpha():
    with pytest.raises(ValueError):
        cesaro_power(INF, Cone.ALL)


def test_theorem_value():
    assert set(POWER_THEOREMS.keys()) == set(PowerTheorem)
    assert theorem_value("c-le-cstar", -1.0, Cone.ALL).value == pytest.approx(3.0)
    assert theorem_value(PowerTheorem.COPSON, 1.0, Cone.ALL).value == pytest.approx(_ZETA_2)


def test_power_closed_form():
    assert power_closed_form(OpKind.CMINUS_SSTAR, Cone.NONINCR, -1.0) == \
        two_op_cc_power(-1.0, Cone.NONNEG)
    assert power_closed_form(OpKind.CMINUS_SSTAR, Cone.ALL, 0.5).value == pytest.approx(3.0)
    assert power_closed_form(OpKind.C, Cone.NONINCR, 0.5).value == pytest.approx(2.0)
    assert power_closed_form(OpKind.CSTAR_SD, Cone.ALL, 1.0) is None
    assert power_closed_form(OpKind.CSTAR_MINUS_I, Cone.NONINCR, 1.0) is None
