"""
Certified evaluation of the zeta-type sums behind the power-weight formulas.

All tails are sums over k >= n of k^(-s) or k^(-alpha)/(k+1). The first kind is
summed directly up to a cut N and closed with Euler–Maclaurin through the B4
term; for the completely monotone summand k^(-s) the remainder is bounded by
the first omitted (B6) term. The second kind is reduced to the first by
expanding 1/(k+1) in powers of 1/k and summing the short remainder series
explicitly.
"""

import collections
import functools
import logging
import math

import numpy

TARGET_ERROR = 1e-13

_MIN_CUT = 8
_MAX_CUT = 10 ** 7
_SHIFT_TERMS = 8
_SHIFT_CUT = 64
_EPS = numpy.finfo(float).eps

_logger = logging.getLogger(__name__)

Certified = collections.namedtuple("Certified", ["value", "error"])


def _check_index(n):
    if int(n) != n or n < 1:
        raise ValueError("Parameter 'n' should be an integer >= 1")


def _check_s(s):
    if not s > 1:
        raise ValueError("Parameter 's' should be > 1 (got {})".format(s))


def _check_alpha(alpha):
    if not alpha > 0:
        raise ValueError(
            "Parameter 'alpha' should be > 0 (got {})".format(alpha))


def power_terms(s, ks):
    """k^(-s) evaluated as exp(-s log k), exactly 1 at k = 1."""

    ks = numpy.asarray(ks, dtype=float)

    with numpy.errstate(over="ignore", under="ignore"):
        vals = numpy.exp(-s * numpy.log(ks))

    return numpy.where(ks == 1, 1.0, vals)


def _em_coefficient(s):
    return s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / 30240.0


def em_remainder_bound(s, cut):
    """Bound on the Euler–Maclaurin remainder of the tail starting at cut."""

    return _em_coefficient(s) * math.exp(-(s + 5) * math.log(cut))


@functools.lru_cache(maxsize=256)
def em_cut(s, target=TARGET_ERROR):
    """Smallest cut whose Euler–Maclaurin remainder bound meets target."""

    _check_s(s)
    coeff = _em_coefficient(s)
    cut = math.ceil(math.exp(math.log(coeff / target) / (s + 5)))
    cut = min(max(cut, _MIN_CUT), _MAX_CUT)

    while cut < _MAX_CUT and em_remainder_bound(s, cut) > target:
        cut += 1

    _logger.debug("Euler-Maclaurin cut for s=%s: %s", s, cut)

    return cut


def _em_tail(s, ns):
    """Euler–Maclaurin approximation of sum_{k>=n} k^(-s), through B4."""

    ns = numpy.asarray(ns, dtype=float)
    logn = numpy.log(ns)

    with numpy.errstate(over="ignore", under="ignore"):
        base = numpy.exp(-s * logn)
        integral = ns * base / (s - 1)
        first = s * base / ns / 12.0
        second = s * (s + 1) * (s + 2) * base / ns ** 3 / 720.0

    return integral + base / 2.0 + first - second


def hurwitz_tails(s, ns):
    """Vectorized sum_{k>=n} k^(-s) for an array of indices n >= 1."""

    _check_s(s)
    ns = numpy.asarray(ns, dtype=numpy.int64)

    if ns.size and ns.min() < 1:
        raise ValueError("Parameter 'n' should be >= 1")

    cut = em_cut(s)
    out = numpy.empty(ns.shape, dtype=float)
    high = ns >= cut

    if numpy.any(high):
        out[high] = _em_tail(s, ns[high])

    if not numpy.all(high):
        ks = numpy.arange(1, cut, dtype=float)
        terms = power_terms(s, ks)
        suffix = numpy.cumsum(terms[::-1])[::-1]
        head = float(_em_tail(s, numpy.array([cut]))[0])
        low = ~high
        out[low] = suffix[ns[low] - 1] + head

    return out


def _hurwitz_error(s, value, n):
    cut = max(em_cut(s), n)
    rounding = (em_cut(s) + 4) * _EPS * abs(value)
    return em_remainder_bound(s, cut) + rounding


def hurwitz_tail(s, n):
    """Certified sum_{k>=n} k^(-s) for s > 1."""

    _check_s(s)
    _check_index(n)
    value = float(hurwitz_tails(s, numpy.array([n]))[0])

    return Certified(value=value, error=_hurwitz_error(s, value, n))


def zeta(s):
    """Certified Riemann zeta function on the real half-line s > 1."""

    return hurwitz_tail(s, 1)


def _shift_remainders(alpha, ns):
    """sum_{k>=n} k^(-alpha-J)/(k+1), negligible from the cut on."""

    power = alpha + _SHIFT_TERMS
    ks = numpy.arange(1, _SHIFT_CUT, dtype=float)
    terms = power_terms(power, ks) / (ks + 1)
    suffix = numpy.append(numpy.cumsum(terms[::-1])[::-1], 0.0)
    idx = numpy.minimum(ns, _SHIFT_CUT) - 1

    return suffix[idx]


def _shift_remainder_bound(alpha):
    power = alpha + _SHIFT_TERMS
    return math.exp(-power * math.log(_SHIFT_CUT - 1)) / power


def shifted_tails(alpha, ns):
    """Vectorized sum_{k>=n} k^(-alpha)/(k+1) for alpha > 0."""

    _check_alpha(alpha)
    ns = numpy.asarray(ns, dtype=numpy.int64)

    if ns.size and ns.min() < 1:
        raise ValueError("Parameter 'n' should be >= 1")

    out = numpy.zeros(ns.shape, dtype=float)

    for j in range(1, _SHIFT_TERMS + 1):
        sign = 1.0 if j % 2 else -1.0
        out += sign * hurwitz_tails(alpha + j, ns)

    sign = 1.0 if _SHIFT_TERMS % 2 == 0 else -1.0

    return out + sign * _shift_remainders(alpha, ns)


def shifted_tail(alpha, n):
    """Certified sum_{k>=n} k^(-alpha)/(k+1) for alpha > 0."""

    _check_alpha(alpha)
    _check_index(n)
    value = float(shifted_tails(alpha, numpy.array([n]))[0])

    error = sum(
        hurwitz_tail(alpha + j, n).error
        for j in range(1, _SHIFT_TERMS + 1))

    error += _shift_remainder_bound(alpha) + _SHIFT_TERMS * _EPS

    return Certified(value=value, error=error)


def telescoping_tail(n):
    """sum_{k>=n} 1/(k(k+1)) = 1/n."""

    _check_index(n)
    return Certified(value=1.0 / n, error=_EPS / n)


def m_alpha(alpha):
    """The constant sum_{k>=1} k^(-alpha)/(k+1)."""

    return shifted_tail(alpha, 1)
