"""
Best constants in ||Cx|| <= A ||C*x|| and ||C*x|| <= A ||Cx||.

Each two-operator constant equals the norm of a single operator on a cone:

    C <= C*   all sequences       C - S*       with u      on all sequences
    C <= C*   nonnegative         C - S*       with u      on nonincreasing
    C* <= C   all sequences       (C* - S) D   with w      on all sequences
    C* <= C   nonnegative         (C* - S) D   with w      on nondecreasing

where w_k = k u_k. The witnesses behind these reductions are rebuilt here so
that a ratio of the original inequality can be evaluated directly.
"""

import collections
import logging

import numpy

from cesnorms.enums import Cone, Direction, OpKind
from cesnorms.formulas import matched_alpha, scan_norm
from cesnorms.operators import (Operator, apply, copson_preimage,
                                summation_preimage)
from cesnorms.power import two_op_cc_power, two_op_cstarc_power
from cesnorms.sequences import (SeqWindow, Weight, envelope_down, envelope_up,
                                quotient_norm_weighted, sup_norm_weighted)
from cesnorms.utils import INF, VerificationError

_logger = logging.getLogger(__name__)

TwoOpQuery = collections.namedtuple(
    "TwoOpQuery",
    [
        "direction",
        "cone",
        "u",
        "v",
        "cfg"
    ])

ReducedQuery = collections.namedtuple(
    "ReducedQuery",
    [
        "op",
        "u",
        "cone"
    ])

_TWO_OP_CONES = (Cone.ALL, Cone.NONNEG)
_REBUILD_RTOL = 1e-12

_POWER_TABLES = {
    Direction.C_LE_CSTAR: two_op_cc_power,
    Direction.CSTAR_LE_C: two_op_cstarc_power
}


def _check_query(direction, cone):
    direction = Direction(direction)
    cone = Cone(cone)

    if cone not in _TWO_OP_CONES:
        raise ValueError(
            "Parameter 'cone' should be one of {} (got {})".format(
                [item.value for item in _TWO_OP_CONES], cone.value))

    return direction, cone


def reduced_query(q):
    """The single-operator problem the two-operator constant reduces to."""

    direction, cone = _check_query(q.direction, q.cone)

    if direction is Direction.C_LE_CSTAR:
        reduced_cone = Cone.ALL if cone is Cone.ALL else Cone.NONINCR
        return ReducedQuery(Operator(OpKind.CMINUS_SSTAR), q.u, reduced_cone)

    reduced_cone = Cone.ALL if cone is Cone.ALL else Cone.NONDECR
    return ReducedQuery(Operator(OpKind.CSTAR_SD), q.u.times_index(), reduced_cone)


def best_constant(q):
    direction, cone = _check_query(q.direction, q.cone)
    reduced = reduced_query(q)
    alpha = matched_alpha(q.u, q.v)
    closed_form = _POWER_TABLES[direction](alpha, cone) if alpha is not None else None

    _logger.debug("Two-operator query %s on %s reduced to %s", direction.value, cone.value, reduced)

    return scan_norm(reduced.op, reduced.u, q.v, reduced.cone, q.cfg, closed_form=closed_form)


def w_envelope(u, K):
    """(w↑)_k = inf_{j>=k} j u_j for k <= K."""

    return envelope_up(u.times_index(), K)


def _check_lists(u, v):
    if u.is_power or v.is_power:
        raise ValueError("Witness ratios need list weights")


def _padded(values, length):
    return numpy.append(values, numpy.zeros(max(length - len(values), 0)))[:length]


def _ratio(num, den):
    return 0.0 if num == 0 else num / den


def _check_rebuilt(got, want, label):
    """Raises unless the rebuilt image matches the witness it came from.

    Norms are then taken on the witness itself, so rounding in the image
    never lands on a zero weight."""

    dev = float(numpy.max(numpy.abs(got - want))) if len(want) else 0.0
    scale = max(1.0, float(numpy.max(numpy.abs(want))) if len(want) else 0.0)

    if dev > _REBUILD_RTOL * scale:
        raise VerificationError(
            "{} misses its witness by {}".format(label, dev))


def _c_le_cstar_ratio(cone, u, v, n):
    y = numpy.zeros(max(u.length, n + 1))

    if cone is Cone.ALL:
        vals = _padded(u.values, len(y))
        y[:n] = vals[:n]
        y[n] = -vals[n]
    else:
        y[:n] = envelope_down(u, n)

    ywin = SeqWindow(y)
    x = copson_preimage(ywin)
    cstar_x = apply(OpKind.CSTAR, x, len(y))
    _check_rebuilt(cstar_x.values, y, "C* of the Copson preimage")

    cx = apply(OpKind.C, x, v.length)

    return _ratio(sup_norm_weighted(cx, v), quotient_norm_weighted(ywin, u))


def _held_quotient(z, w):
    """sup_k |z_k| / w_k with w held at w_L beyond L."""

    held = w.values[-1]
    extended = Weight.from_values(
        numpy.append(w.values, numpy.full(max(len(z) - w.length, 0), held)))
    best = quotient_norm_weighted(SeqWindow(z.values), extended)

    if z.tail == 0:
        return best

    return max(best, abs(z.tail) / held if held else INF)


def _cstar_le_c_ratio(cone, u, v, n):
    w = u.times_index()
    z = numpy.zeros(max(w.length, n))

    if cone is Cone.ALL:
        vals = _padded(w.values, len(z))
        z[n - 1:] = vals[n - 1:]

        if n >= 2:
            z[n - 2] = -vals[n - 2]

        zwin = SeqWindow(z)
        cx_norm = quotient_norm_weighted(zwin, w)
    else:
        env = envelope_up(w, len(z))
        z[n - 1:] = env[n - 1:]
        zwin = SeqWindow(z, tail=env[-1])
        cx_norm = _held_quotient(zwin, w)

    x = summation_preimage(zwin)
    ks = numpy.arange(1, len(z) + 1, dtype=float)
    cx = apply(OpKind.C, x, len(z))
    _check_rebuilt(cx.values, z / ks, "C of the summation preimage")

    cstar_x = apply(OpKind.CSTAR, x, v.length)

    return _ratio(sup_norm_weighted(cstar_x, v), cx_norm)


def witness_ratio(direction, cone, u, v, n):
    """||Cx|| / ||C*x|| (or its dual) at the extremal witness of row n.

    x is rebuilt from the witness through the Copson or summation preimage,
    so both reduction steps are exercised. List weights only; on nonnegative
    sequences the C* <= C problem holds k u_k at L u_L beyond L."""

    direction, cone = _check_query(direction, cone)
    _check_lists(u, v)

    if int(n) != n or n < 1:
        raise ValueError("Parameter 'n' should be an integer >= 1")

    if not u.length or not v.length:
        return 0.0

    if direction is Direction.C_LE_CSTAR:
        return _c_le_cstar_ratio(cone, u, v, n)

    return _cstar_le_c_ratio(cone, u, v, n)
