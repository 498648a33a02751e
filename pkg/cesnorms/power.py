"""
Closed-form best constants for the matched power weights
u_k = k^(-alpha), v_n = n^alpha.

Every result carries a case label naming the branch that produced it, with
the branch edges written exactly as they are tested.
"""

import collections
import logging
import math

from cesnorms.enums import Cone, OpKind, PowerTheorem
from cesnorms.special import m_alpha, zeta
from cesnorms.utils import INF, OpenProblemError, UnsupportedError

_logger = logging.getLogger(__name__)

PowerCaseResult = collections.namedtuple(
    "PowerCaseResult",
    [
        "value",
        "case_label",
        "special_values"
    ])

PowerCaseResult.__new__.__defaults__ = (None,)


def _check_alpha(alpha):
    if not math.isfinite(alpha):
        raise ValueError("Parameter 'alpha' should be finite (got {})".format(alpha))


def _check_cones(cone, allowed):
    cone = Cone(cone)

    if cone not in allowed:
        raise ValueError("Parameter 'cone' should be one of {} (got {})".format(
            [item.value for item in allowed], cone.value))

    return cone


def average_limit(alpha):
    """The limit of n^(alpha-1) sum_{k<=n} k^(-alpha): the integral of x^(-alpha) on (0, 1)."""

    _check_alpha(alpha)
    return 1.0 / (1.0 - alpha) if alpha < 1 else INF


def breakpoint_s(m):
    """s_m = 1 + log(1 - 1/m) / log(1 + 1/m), with s_1 = -inf."""

    if int(m) != m or m < 1:
        raise ValueError("Parameter 'm' should be an integer >= 1")

    if m == 1:
        return -INF

    return 1.0 + math.log1p(-1.0 / m) / math.log1p(1.0 / m)


def breakpoint_index(alpha):
    """The m >= 1 with s_m < alpha <= s_{m+1}, for alpha < 0."""

    _check_alpha(alpha)

    if not alpha < 0:
        raise ValueError("Parameter 'alpha' should be < 0 (got {})".format(alpha))

    lo, hi = 1, 2

    while breakpoint_s(hi + 1) < alpha:
        lo, hi = hi, hi * 2

    # s_{hi+1} >= alpha from here on
    while hi - lo > 1:
        mid = (lo + hi) // 2

        if breakpoint_s(mid + 1) < alpha:
            lo = mid
        else:
            hi = mid

    return hi if breakpoint_s(lo + 1) < alpha else lo


def cesaro_power(alpha, cone):
    _check_alpha(alpha)
    cone = Cone(cone)

    if cone is Cone.NONDECR:
        if alpha <= 0:
            return PowerCaseResult(1.0, "alpha <= 0")

        return PowerCaseResult(0.0, "alpha > 0")

    if alpha < 0:
        return PowerCaseResult(1.0, "alpha < 0")

    if alpha < 1:
        return PowerCaseResult(average_limit(alpha), "0 <= alpha < 1")

    return PowerCaseResult(INF, "alpha >= 1")


def copson_power(alpha, cone):
    _check_alpha(alpha)
    cone = Cone(cone)

    if cone is Cone.NONDECR:
        return PowerCaseResult(0.0, "nondecreasing cone")

    if alpha <= 0:
        return PowerCaseResult(INF, "alpha <= 0")

    certified = zeta(alpha + 1.0)

    return PowerCaseResult(
        certified.value,
        "alpha > 0",
        {"zeta_arg": alpha + 1.0})


def _breakpoint_case(alpha):
    m = breakpoint_index(alpha)
    value = math.exp((alpha - 1.0) * math.log(m + 1.0)) * m

    return PowerCaseResult(
        value,
        "s_{} < alpha <= s_{}".format(m, m + 1),
        {"m_breakpoint": m})


def cesaro_minus_id_power(alpha, cone):
    _check_alpha(alpha)
    cone = Cone(cone)

    if cone is Cone.NONDECR:
        if alpha <= 0:
            return PowerCaseResult(1.0, "alpha <= 0")

        return PowerCaseResult(0.0, "alpha > 0")

    if alpha >= 1:
        return PowerCaseResult(INF, "alpha >= 1")

    if cone is Cone.ALL:
        return PowerCaseResult((2.0 - alpha) / (1.0 - alpha), "alpha < 1")

    if alpha >= 0:
        return PowerCaseResult(average_limit(alpha), "0 <= alpha < 1")

    if cone is Cone.NONNEG:
        return PowerCaseResult(1.0, "alpha < 0")

    return _breakpoint_case(alpha)


def copson_minus_id_power(alpha, cone):
    _check_alpha(alpha)
    cone = Cone(cone)

    if cone is Cone.NONINCR:
        raise OpenProblemError(
            "The norm of C*-I on nonincreasing sequences is an open problem",
            op=OpKind.CSTAR_MINUS_I, cone=cone)

    if cone is Cone.NONDECR:
        raise UnsupportedError(
            "No power table for C*-I on nondecreasing sequences: its rows have infinite sums",
            op=OpKind.CSTAR_MINUS_I, cone=cone)

    if alpha <= 0:
        return PowerCaseResult(INF, "alpha <= 0")

    if cone is Cone.ALL:
        return PowerCaseResult(1.0 + 1.0 / alpha, "alpha > 0")

    if alpha < 1:
        return PowerCaseResult(1.0 / alpha, "0 < alpha < 1")

    return PowerCaseResult(1.0, "alpha >= 1")


def two_op_cc_power(alpha, cone):
    """Best constant of ||Cx|| <= A ||C*x||."""

    _check_alpha(alpha)
    cone = _check_cones(cone, (Cone.ALL, Cone.NONNEG))

    if alpha >= 1:
        return PowerCaseResult(INF, "alpha >= 1")

    if cone is Cone.ALL:
        if alpha <= 0:
            return PowerCaseResult(1.0 + math.exp(-alpha * math.log(2.0)), "alpha <= 0")

        return PowerCaseResult((2.0 - alpha) / (1.0 - alpha), "0 < alpha < 1")

    if alpha <= 0:
        return PowerCaseResult(1.0, "alpha <= 0")

    return PowerCaseResult(average_limit(alpha), "0 < alpha < 1")


def two_op_cstarc_power(alpha, cone):
    """Best constant of ||C*x|| <= A ||Cx||."""

    _check_alpha(alpha)
    cone = _check_cones(cone, (Cone.ALL, Cone.NONNEG))

    if alpha <= 0:
        return PowerCaseResult(INF, "alpha <= 0")

    if alpha <= 1:
        if cone is Cone.ALL:
            return PowerCaseResult(1.0 + 1.0 / alpha, "0 < alpha <= 1")

        return PowerCaseResult(1.0 / alpha, "0 < alpha <= 1")

    if cone is Cone.NONNEG:
        return PowerCaseResult(0.0, "alpha > 1")

    certified = m_alpha(alpha)

    return PowerCaseResult(
        math.exp(alpha * math.log(2.0)) * certified.value,
        "alpha > 1",
        {"M_alpha": certified.value})


POWER_THEOREMS = {
    PowerTheorem.CESARO: cesaro_power,
    PowerTheorem.COPSON: copson_power,
    PowerTheorem.CESARO_MINUS_IDENTITY: cesaro_minus_id_power,
    PowerTheorem.COPSON_MINUS_IDENTITY: copson_minus_id_power,
    PowerTheorem.CC_STAR: two_op_cc_power,
    PowerTheorem.CSTAR_C: two_op_cstarc_power
}

assert set(POWER_THEOREMS.keys()) == set(PowerTheorem)


def theorem_value(theorem, alpha, cone):
    return POWER_THEOREMS[PowerTheorem(theorem)](alpha, cone)


_OP_TABLES = {
    (OpKind.C, Cone.ALL): (cesaro_power, Cone.ALL),
    (OpKind.C, Cone.NONNEG): (cesaro_power, Cone.NONNEG),
    (OpKind.C, Cone.NONINCR): (cesaro_power, Cone.NONINCR),
    (OpKind.C, Cone.NONDECR): (cesaro_power, Cone.NONDECR),
    (OpKind.CSTAR, Cone.ALL): (copson_power, Cone.ALL),
    (OpKind.CSTAR, Cone.NONNEG): (copson_power, Cone.NONNEG),
    (OpKind.CSTAR, Cone.NONINCR): (copson_power, Cone.NONINCR),
    (OpKind.CSTAR, Cone.NONDECR): (copson_power, Cone.NONDECR),
    (OpKind.CMINUS_I, Cone.ALL): (cesaro_minus_id_power, Cone.ALL),
    (OpKind.CMINUS_I, Cone.NONNEG): (cesaro_minus_id_power, Cone.NONNEG),
    (OpKind.CMINUS_I, Cone.NONINCR): (cesaro_minus_id_power, Cone.NONINCR),
    (OpKind.CMINUS_I, Cone.NONDECR): (cesaro_minus_id_power, Cone.NONDECR),
    (OpKind.CSTAR_MINUS_I, Cone.ALL): (copson_minus_id_power, Cone.ALL),
    (OpKind.CSTAR_MINUS_I, Cone.NONNEG): (copson_minus_id_power, Cone.NONNEG),
    (OpKind.CMINUS_SSTAR, Cone.ALL): (two_op_cc_power, Cone.ALL),
    (OpKind.CMINUS_SSTAR, Cone.NONINCR): (two_op_cc_power, Cone.NONNEG)
}


def power_closed_form(kind, cone, alpha):
    """Closed form of the operator norm for a matched power pair, None when unknown.

    C - S* shares its tables with ||Cx|| <= A ||C*x||: on all sequences
    directly and on nonincreasing sequences through the nonnegative case."""

    entry = _OP_TABLES.get((OpKind(kind), Cone(cone)))

    if entry is None:
        return None

    func, table_cone = entry
    return func(alpha, table_cone)
