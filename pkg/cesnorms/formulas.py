"""
Norm formulas on the four cones with a truncated outer supremum.

All cones read a single row functional of a nonnegative sequence:

    All         |B| u
    Nonneg      max(B+ u, B- u)
    Nonincr     B+ (u↓)     rows with positives before negatives, sum >= 0
    Nondecr     B+ (u↑)     rows with negatives before positives, sum >= 0

and the norm is sup_n v_n times that functional. Inner sums are exact:
finite sums for lists, analytic tails for powers. Only the supremum over n
is truncated, at n_max, and its status says how far the scan can be trusted.

norm_general reads the functional off the operator's row terms. The
specialized evaluators write it out per operator and cone instead, from
prefix sums, point values and tails of u, u↓ or u↑.
"""

import collections
import functools
import logging

import numpy

import cesnorms.config
from cesnorms.enums import Cone, OpKind, Status
from cesnorms.operators import (Part, as_operator, has_infinite_row,
                                preprocessed, require_cone, row_values)
from cesnorms.power import power_closed_form
from cesnorms.sequences import domain_view, target_weights
from cesnorms.utils import (INF, OpenProblemError, run_chunks, safe_product,
                            split_range)

_MIN_CHUNK = 4096
_MIN_BRACKET_ROWS = 8
_BRACKET_FACTOR = 2.0
_FLAT_SLACK = 1e-14

_logger = logging.getLogger(__name__)

TruncConfig = collections.namedtuple(
    "TruncConfig",
    [
        "n_max",
        "tol",
        "divergence_threshold",
        "workers"
    ])

TruncConfig.__new__.__defaults__ = (None,)

NormResult = collections.namedtuple(
    "NormResult",
    [
        "value",
        "status",
        "n_used",
        "residual_estimate",
        "n_star"
    ])

NormResult.__new__.__defaults__ = (None,)


def default_trunc_config(conf=None):
    conf = conf or cesnorms.config.get_env_config()

    return TruncConfig(
        n_max=conf.n_max,
        tol=conf.tol,
        divergence_threshold=conf.divergence_threshold,
        workers=conf.threads)


def _check_config(cfg):
    if int(cfg.n_max) != cfg.n_max or cfg.n_max < 1:
        raise ValueError("Parameter 'n_max' should be an integer >= 1")

    if not cfg.tol > 0:
        raise ValueError("Parameter 'tol' should be > 0")

    if not cfg.divergence_threshold > 0:
        raise ValueError("Parameter 'divergence_threshold' should be > 0")


def _workers(cfg):
    return cfg.workers or cesnorms.config.get_env_config().threads


def matched_alpha(u, v):
    """The exponent of a matched power pair, None otherwise."""

    if u.is_power and v.is_power and u.alpha == v.alpha:
        return u.alpha

    return None


def _functional(op, view, ns, cone):
    if cone is Cone.ALL:
        return row_values(op, view, ns, Part.ABS)

    if cone is Cone.NONNEG:
        return numpy.maximum(
            row_values(op, view, ns, Part.POS),
            row_values(op, view, ns, Part.NEG))

    return row_values(op, view, ns, Part.POS)


def row_norms(op, u, v, cone, ns):
    """v_n times the cone's row functional for the rows ns."""

    op = as_operator(op)
    cone = Cone(cone)
    ns = numpy.asarray(ns, dtype=numpy.int64)
    size = int(ns.max()) + 2 if ns.size else 2
    view = domain_view(u, cone, size)
    weights = target_weights(v, ns)
    vals = _functional(op, view, ns, cone)

    return safe_product(weights, vals)


def _combine(cone, first, second):
    if cone is Cone.ALL:
        return first + second

    if cone is Cone.NONNEG:
        return numpy.maximum(first, second)

    raise ValueError("Cone {} has no two-part functional".format(cone.value))


def _cesaro_rows(view, ns, fns, cone):
    return view.prefix(ns) / fns


def _copson_rows(view, ns, fns, cone):
    return view.tail_harmonic(ns)


def _cesaro_minus_id_rows(view, ns, fns, cone):
    head = view.prefix(ns - 1)
    point = (fns - 1.0) * view.at(ns)

    if cone is Cone.NONINCR:
        return head / fns

    if cone is Cone.NONDECR:
        return point / fns

    return _combine(cone, point, head) / fns


def _copson_minus_id_rows(view, ns, fns, cone):
    point = (fns - 1.0) / fns * view.at(ns)
    return _combine(cone, point, view.tail_harmonic(ns + 1))


def _c_minus_sstar_rows(view, ns, fns, cone):
    average = view.prefix(ns) / fns
    following = view.at(ns + 1)

    if cone is Cone.NONINCR:
        return average

    if cone is Cone.NONDECR:
        return following

    return _combine(cone, average, following)


def _cstarsd_rows(view, ns, fns, cone):
    tail = view.tail_telescoping(ns)

    if cone is Cone.NONDECR:
        return tail

    # u_0 = 0, so row 1 has no point term
    previous = view.at(ns - 1) / fns

    if cone is Cone.NONINCR:
        return numpy.where(ns == 1, tail, previous)

    return _combine(cone, previous, tail)


_COROLLARY_ROWS = {
    OpKind.C: _cesaro_rows,
    OpKind.CSTAR: _copson_rows,
    OpKind.CMINUS_I: _cesaro_minus_id_rows,
    OpKind.CSTAR_MINUS_I: _copson_minus_id_rows,
    OpKind.CMINUS_SSTAR: _c_minus_sstar_rows,
    OpKind.CSTAR_SD: _cstarsd_rows
}

_NONDECR_ZERO_KINDS = {OpKind.CSTAR, OpKind.CSTAR_MINUS_I}


def corollary_row_norms(kind, u, v, cone, ns):
    """v_n times the written-out row functional of kind on cone for the rows ns."""

    kind = OpKind(kind)
    cone = Cone(cone)
    ns = numpy.asarray(ns, dtype=numpy.int64)
    size = int(ns.max()) + 2 if ns.size else 2
    view = domain_view(u, cone, size)
    vals = _COROLLARY_ROWS[kind](view, ns, ns.astype(float), cone)

    return safe_product(target_weights(v, ns), vals)


def _scan_chunk(rows_func, chunk):
    lo, hi = chunk
    vals = rows_func(numpy.arange(lo, hi + 1))
    idx = int(numpy.argmax(vals))

    return float(vals[idx]), lo + idx


def tail_bracket(quarter, half, full):
    """Estimated distance from the partial sup at N to the full sup.

    quarter, half and full are the partial sups at N/4, N/2 and N. The
    increments are extrapolated as a geometric series and the estimate is
    widened by a constant factor; it is infinite when they do not shrink."""

    first = half - quarter
    second = full - half

    if second <= _FLAT_SLACK * max(1.0, abs(full)):
        return 0.0

    if first <= second:
        return INF

    return _BRACKET_FACTOR * second * second / (first - second)


def _scan(rows_func, n_rows, workers):
    quarter_end, half_end = n_rows // 4, n_rows // 2
    parts = max(min(workers, n_rows // _MIN_CHUNK), 1)
    chunks = split_range(1, n_rows, parts, marks=[quarter_end + 1, half_end + 1])

    _logger.debug("Scanning %s rows in %s chunks", n_rows, len(chunks))

    func = functools.partial(_scan_chunk, rows_func)
    results = run_chunks(func, chunks, workers)

    best, n_star, quarter, half = 0.0, 1, 0.0, 0.0

    for (lo, _), (val, arg) in zip(chunks, results):
        if lo <= quarter_end:
            quarter = max(quarter, val)

        if lo <= half_end:
            half = max(half, val)

        if val > best:
            best, n_star = val, arg

    if n_rows < _MIN_BRACKET_ROWS:
        residual = 0.0 if best == half else INF
    else:
        residual = tail_bracket(quarter, half, best)

    return best, n_star, residual


def _truncated_sup(rows_func, label, v, cfg, closed_form):
    if closed_form is not None and closed_form.value == INF:
        return NormResult(
            value=INF,
            status=Status.DIVERGENT,
            n_used=0,
            residual_estimate=0.0,
            n_star=None)

    exact = not v.is_power and v.length <= cfg.n_max
    n_rows = v.length if exact else int(cfg.n_max)

    if n_rows == 0:
        return NormResult(
            value=0.0,
            status=Status.TRUNCATED_CONVERGED,
            n_used=0,
            residual_estimate=0.0,
            n_star=None)

    best, n_star, bracket = _scan(rows_func, n_rows, _workers(cfg))

    if best == INF or best > cfg.divergence_threshold:
        _logger.warning(
            "Partial supremum of %s exceeds %s: Reporting divergence",
            label, cfg.divergence_threshold)

        return NormResult(
            value=INF,
            status=Status.DIVERGENT,
            n_used=n_rows,
            residual_estimate=0.0,
            n_star=n_star)

    if exact:
        residual = 0.0
    elif closed_form is not None:
        residual = max(closed_form.value - best, 0.0)
    else:
        residual = bracket

    status = Status.TRUNCATED_CONVERGED if residual <= cfg.tol \
        else Status.TRUNCATED_LOWER_BOUND

    return NormResult(
        value=best,
        status=status,
        n_used=n_rows,
        residual_estimate=residual,
        n_star=n_star)


_ZERO_RESULT = NormResult(
    value=0.0,
    status=Status.CLOSED_FORM,
    n_used=0,
    residual_estimate=0.0,
    n_star=None)


def scan_norm(op, u, v, cone, cfg, closed_form=None):
    """Evaluates the cone formula for op and reports how the scan ended.

    closed_form, when given, is the known value of the full supremum and
    replaces the tail bracket."""

    op = as_operator(op)
    cone = Cone(cone)
    _check_config(cfg)
    require_cone(op, cone)

    if cone is Cone.NONDECR and has_infinite_row(op):
        return _ZERO_RESULT

    rows_func = functools.partial(row_norms, op, u, v, cone)
    label = "{} on {}".format(op, cone.value)

    return _truncated_sup(rows_func, label, v, cfg, closed_form)


def _closed_form(kind, u, v, cone, certify):
    alpha = matched_alpha(u, v)

    if not certify or alpha is None:
        return None

    return power_closed_form(kind, cone, alpha)


def norm_general(op, u, v, cone, cfg, certify=True):
    """Cone formula for op exactly as given; no row preprocessing.

    With certify unset a matched power pair is scanned like any other pair,
    so the status and residual come from the scan alone."""

    op = as_operator(op)
    closed_form = _closed_form(op.kind, u, v, cone, certify)

    return scan_norm(op, u, v, cone, cfg, closed_form=closed_form)


def _evaluate(kind, u, v, cone, cfg, certify=True):
    cone = Cone(cone)
    op = preprocessed(as_operator(kind), cone)
    closed_form = _closed_form(kind, u, v, cone, certify)

    return scan_norm(op, u, v, cone, cfg, closed_form=closed_form)


def _specialized(kind, u, v, cone, cfg, certify):
    cone = Cone(cone)
    _check_config(cfg)

    if kind is OpKind.CSTAR_MINUS_I and cone is Cone.NONINCR:
        raise OpenProblemError(
            "The norm of C*-I on nonincreasing sequences is an open problem",
            op=OpKind.CSTAR_MINUS_I, cone=Cone.NONINCR)

    if cone is Cone.NONDECR and kind in _NONDECR_ZERO_KINDS:
        return _ZERO_RESULT

    rows_func = functools.partial(corollary_row_norms, kind, u, v, cone)
    label = "{} on {}".format(kind.value, cone.value)

    return _truncated_sup(rows_func, label, v, cfg, _closed_form(kind, u, v, cone, certify))


def norm_cesaro(u, v, cone, cfg, certify=True):
    """sup_n (v_n / n) sum_{k<=n} u_k, with u↓ or u↑ on the monotone cones."""

    return _specialized(OpKind.C, u, v, cone, cfg, certify)


def norm_copson(u, v, cone, cfg, certify=True):
    """sup_n v_n sum_{k>=n} u_k / k; zero on nondecreasing sequences."""

    return _specialized(OpKind.CSTAR, u, v, cone, cfg, certify)


def dist_cesaro_identity(u, v, cone, cfg, certify=True):
    return _specialized(OpKind.CMINUS_I, u, v, cone, cfg, certify)


def dist_copson_identity(u, v, cone, cfg, certify=True):
    return _specialized(OpKind.CSTAR_MINUS_I, u, v, cone, cfg, certify)


def norm_c_minus_sstar(u, v, cone, cfg, certify=True):
    """C - S*, read as S* - C on nondecreasing sequences."""

    return _specialized(OpKind.CMINUS_SSTAR, u, v, cone, cfg, certify)


def norm_cstarsd(u, v, cone, cfg, certify=True):
    """(C* - S) D.

    On nonincreasing sequences rows n >= 2 are read as (S - C*) D while row 1,
    which has no negative entry, is kept."""

    return _specialized(OpKind.CSTAR_SD, u, v, cone, cfg, certify)


SPECIALIZED = {
    OpKind.C: norm_cesaro,
    OpKind.CSTAR: norm_copson,
    OpKind.CMINUS_I: dist_cesaro_identity,
    OpKind.CSTAR_MINUS_I: dist_copson_identity,
    OpKind.CMINUS_SSTAR: norm_c_minus_sstar,
    OpKind.CSTAR_SD: norm_cstarsd
}

assert set(SPECIALIZED.keys()) == set(_COROLLARY_ROWS.keys())


def norm(kind, u, v, cone, cfg, certify=True):
    """Dispatches to the specialized evaluator, or to the generic engine
    with row preprocessing for the helper operators."""

    kind = OpKind(kind)

    if kind in SPECIALIZED:
        return SPECIALIZED[kind](u, v, cone, cfg, certify=certify)

    return _evaluate(kind, u, v, cone, cfg, certify=certify)
