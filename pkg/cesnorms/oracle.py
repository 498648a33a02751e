"""
Independent lower bounds for the norm formulas.

Both paths work from explicit matrix entries. The extremal path evaluates
the operator on the witness sequences that make each cone formula sharp, one
row at a time. The random path draws sequences from the cone, multiplies them
by the truncated matrix and keeps the best observed ratio. Neither path
touches the row functionals the formulas are built from.
"""

import collections
import functools
import logging
import math

import numpy

from cesnorms.enums import Cone, MonotoneFact, Trend
from cesnorms.formulas import SPECIALIZED, norm_general
from cesnorms.operators import (Operator, as_operator, classify_row,
                                last_index, preprocessed, representative_rows,
                                require_cone, row_entries, row_tail_sum)
from cesnorms.sequences import envelope_down, envelope_up, target_weights
from cesnorms.special import hurwitz_tails, power_terms, shifted_tails
from cesnorms.utils import INF, run_chunks, split_range

_DEFAULT_POWER_ROWS = 1000
_BATCH = 64
_MAX_RESAMPLE = 8
_MONOTONE_SLACK = 1e-12
_EXTREMAL_RTOL = 1e-12
_RANDOM_SLACK = 1e-9

_logger = logging.getLogger(__name__)

VerifyReport = collections.namedtuple(
    "VerifyReport",
    [
        "formula_value",
        "extremal_value",
        "random_best",
        "gap_extremal",
        "gap_random",
        "passed",
        "seed",
        "trials",
        "n"
    ])


def _check_rows(N):
    if int(N) != N or N < 1:
        raise ValueError("Parameter 'N' should be an integer >= 1")


def _row_count(v, N):
    return min(int(N), v.length) if not v.is_power else int(N)


def _domain_values(u, K):
    """u_1..u_K in the domain role, zero beyond a list."""

    if u.is_power:
        return power_terms(u.alpha, numpy.arange(1, K + 1))

    return numpy.append(u.values, numpy.zeros(max(K - u.length, 0)))[:K]


def _has_infinite_row(op):
    return any(not classify_row(op, n).finite_sum for n in representative_rows(op))


def _witness_base(u, cone, K):
    if cone in (Cone.ALL, Cone.NONNEG):
        return _domain_values(u, K)

    if cone is Cone.NONINCR:
        return envelope_down(u, K)

    return envelope_up(u, K)


def _extremal_row(op, cone, base, n):
    K = len(base)
    row = row_entries(op, n, K)

    if cone is Cone.ALL:
        return abs(numpy.dot(row, numpy.sign(row) * base))

    if cone is Cone.NONNEG:
        pos = numpy.dot(row, numpy.where(row > 0, base, 0.0))
        neg = numpy.dot(row, numpy.where(row < 0, base, 0.0))
        return max(abs(pos), abs(neg))

    if cone is Cone.NONINCR:
        last = last_index(op, n, 1)
        stop = K if last == INF else min(int(last), K)
        return abs(numpy.dot(row[:stop], base[:stop]))

    last = last_index(op, n, -1)

    if last == INF:
        return 0.0

    cap = base[-1]
    start = int(last)
    head = numpy.dot(row[start:], base[start:])
    tail = cap * row_tail_sum(op, n, K + 1) if cap else 0.0

    return abs(head + tail)


def extremal_lower_bound(B, u, v, cone, N):
    """max over rows n <= N of v_n |(B x)_n| at the sharp witness of row n.

    Witnesses live on 1..K with K beyond both N and the length of u; on
    nondecreasing sequences they are held at the cap P = u↑_K beyond K."""

    _check_rows(N)
    cone = Cone(cone)
    op = preprocessed(as_operator(B), cone)
    require_cone(op, cone)

    if cone is Cone.NONDECR and _has_infinite_row(op):
        return 0.0

    rows = _row_count(v, N)

    if rows == 0:
        return 0.0

    K = max(rows, u.length or 0) + 2
    base = _witness_base(u, cone, K)
    weights = target_weights(v, numpy.arange(1, rows + 1))
    best = 0.0

    for n in range(1, rows + 1):
        if weights[n - 1] == 0:
            continue

        val = weights[n - 1] * _extremal_row(op, cone, base, n)

        if val > best:
            best = val

    _logger.debug("Extremal bound for %s on %s over %s rows: %s", op, cone.value, rows, best)

    return float(best)


def _sample(rng, cone, env):
    K = len(env)

    if cone is Cone.ALL:
        return rng.uniform(-1.0, 1.0, K) * env, 0.0

    if cone is Cone.NONNEG:
        return numpy.abs(rng.uniform(-1.0, 1.0, K)) * env, 0.0

    if cone is Cone.NONINCR:
        draws = numpy.sort(rng.uniform(0.0, 1.0, K))[::-1]
        return numpy.minimum(env[0] * draws, env), 0.0

    draws = numpy.maximum.accumulate(rng.uniform(0.0, 1.0, K))
    vals = numpy.minimum(draws * env.max(), env)

    return vals, vals[-1]


def _nonzero_sample(child, cone, env):
    rng = numpy.random.default_rng(child)

    for _ in range(_MAX_RESAMPLE):
        vals, tail = _sample(rng, cone, env)

        if numpy.any(vals != 0):
            return vals, tail

    return numpy.zeros(len(env)), 0.0


def _random_chunk(matrix, cone, env, dom, weights, children, chunk):
    lo, hi = chunk
    samples = [_nonzero_sample(child, cone, env) for child in children[lo:hi + 1]]
    xs = numpy.array([item[0] for item in samples])
    tails = numpy.array([item[1] for item in samples])

    pad = matrix.shape[1] - xs.shape[1]

    if pad > 0:
        xs_ext = numpy.hstack([xs, numpy.repeat(tails[:, None], pad, axis=1)])
    else:
        xs_ext = xs

    images = xs_ext @ matrix.T
    nums = numpy.max(numpy.abs(images) * weights, axis=-1)

    absx = numpy.abs(xs)

    with numpy.errstate(divide="ignore", invalid="ignore"):
        quots = numpy.where(absx == 0, 0.0, absx / dom)

    dens = numpy.max(quots, axis=-1)
    ratios = numpy.where(dens == 0, 0.0, nums / numpy.where(dens == 0, 1.0, dens))

    return float(numpy.max(ratios))


def random_lower_bound(B, u, v, cone, N, trials, seed, workers=1):
    """Best observed ||Bx|| / ||x|| over random x in the cone.

    Trial i always draws from the i-th child of SeedSequence(seed), so the
    result does not depend on how trials are spread over workers."""

    _check_rows(N)

    if int(trials) != trials or trials < 1:
        raise ValueError("Parameter 'trials' should be an integer >= 1")

    op = as_operator(B)
    cone = Cone(cone)

    if cone is Cone.NONDECR and _has_infinite_row(op):
        return 0.0

    rows = _row_count(v, N)
    K = u.length if not u.is_power else rows + 1

    if rows == 0 or K == 0:
        return 0.0

    env = _witness_base(u, cone, K)

    if not numpy.any(env > 0):
        return 0.0

    dom = _domain_values(u, K)
    weights = target_weights(v, numpy.arange(1, rows + 1))
    # rows n <= N with finite support reach no further than column N + 1
    width = max(K, rows + 2)
    matrix = numpy.array([row_entries(op, n, width) for n in range(1, rows + 1)])
    children = numpy.random.SeedSequence(seed).spawn(int(trials))
    chunks = split_range(0, int(trials) - 1, math.ceil(trials / _BATCH))
    func = functools.partial(_random_chunk, matrix, cone, env, dom, weights, children)

    return max(run_chunks(func, chunks, workers))


def _formula(op, u, v, cone, cfg):
    if op == Operator(op.kind) and op.kind in SPECIALIZED:
        return SPECIALIZED[op.kind](u, v, cone, cfg)

    return norm_general(preprocessed(op, cone), u, v, cone, cfg)


def _gap(upper, lower):
    if upper == INF and lower == INF:
        return 0.0

    return upper - lower


def verify(B, u, v, cone, cfg, trials, seed, N=None):
    """Runs the formula, extremal and random paths and checks they agree."""

    op = as_operator(B)
    cone = Cone(cone)
    result = _formula(op, u, v, cone, cfg)

    if N is None:
        N = v.length if not v.is_power else min(cfg.n_max, _DEFAULT_POWER_ROWS)

    N = max(min(int(N), int(cfg.n_max)), 1)
    extremal = extremal_lower_bound(op, u, v, cone, N)
    random_best = random_lower_bound(op, u, v, cone, N, trials, seed, workers=cfg.workers)

    formula = result.value
    tight = _EXTREMAL_RTOL * abs(formula) if formula != INF else 0.0
    loose = _RANDOM_SLACK * max(1.0, abs(formula)) if formula != INF else 0.0
    exact = not u.is_power and not v.is_power

    passed = random_best <= formula + loose and extremal <= formula + tight

    if exact:
        passed = passed and abs(_gap(formula, extremal)) <= tight

    report = VerifyReport(
        formula_value=formula,
        extremal_value=extremal,
        random_best=random_best,
        gap_extremal=_gap(formula, extremal),
        gap_random=max(_gap(formula, random_best), 0.0),
        passed=bool(passed),
        seed=seed,
        trials=trials,
        n=N)

    _logger.debug("Verify %s on %s: %s", op, cone.value, report)

    return report


_FACT_DOMAINS = {
    MonotoneFact.CESARO_AVERAGE: -INF,
    MonotoneFact.STRICT_CESARO_AVERAGE: -INF,
    MonotoneFact.COPSON_TAIL: 0.0,
    MonotoneFact.STRICT_COPSON_TAIL: 0.0,
    MonotoneFact.SHIFTED_TAIL: 0.0
}

assert set(_FACT_DOMAINS.keys()) == set(MonotoneFact)


def _check_fact(fact, alpha):
    fact = MonotoneFact(fact)

    if not alpha > _FACT_DOMAINS[fact]:
        raise ValueError("Parameter 'alpha' should be > {} for {}".format(
            _FACT_DOMAINS[fact], fact.value))

    return fact


def monotone_sequence(fact, alpha, n_max):
    """The terms n = 1..n_max of one of the monotone averages behind the power tables."""

    fact = _check_fact(fact, alpha)
    _check_rows(n_max)
    ns = numpy.arange(1, n_max + 1)
    scale = power_terms(-alpha, ns)

    if fact in (MonotoneFact.CESARO_AVERAGE, MonotoneFact.STRICT_CESARO_AVERAGE):
        terms = power_terms(alpha, ns)
        sums = numpy.cumsum(terms)

        if fact is MonotoneFact.STRICT_CESARO_AVERAGE:
            sums = sums - terms

        return scale * sums / ns

    if fact is MonotoneFact.COPSON_TAIL:
        return scale * hurwitz_tails(alpha + 1.0, ns)

    if fact is MonotoneFact.STRICT_COPSON_TAIL:
        return scale * hurwitz_tails(alpha + 1.0, ns + 1)

    return scale * shifted_tails(alpha, ns)


def expected_trend(fact, alpha):
    fact = _check_fact(fact, alpha)

    if fact is MonotoneFact.CESARO_AVERAGE:
        return Trend.INCREASING if alpha >= 0 else Trend.DECREASING

    if fact is MonotoneFact.COPSON_TAIL:
        return Trend.DECREASING

    if fact is MonotoneFact.SHIFTED_TAIL:
        return Trend.INCREASING if alpha <= 1 else Trend.DECREASING

    return Trend.INCREASING


def check_monotone(fact, alpha, n_max, trend=None):
    """Whether the sequence moves in the expected direction, up to rounding."""

    trend = Trend(trend) if trend is not None else expected_trend(fact, alpha)
    seq = monotone_sequence(fact, alpha, n_max)
    diffs = numpy.diff(seq)
    slack = _MONOTONE_SLACK * float(numpy.max(numpy.abs(seq)))

    if trend is Trend.INCREASING:
        return bool(numpy.all(diffs >= -slack))

    return bool(numpy.all(diffs <= slack))
