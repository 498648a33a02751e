"""
Weight sequences, the weighted sup norms and the monotone minorants.

A PowerWeight(alpha) names the matched pair of power weights: in the domain
role it is u_k = k^(-alpha) and in the codomain role v_n = n^alpha. A
FiniteList of length L defines an L-truncated problem: rows run over n <= L
when it is the codomain weight, and in the domain role it is zero beyond L,
except for the nondecreasing cone where it is held at u_L beyond L so that its
greatest nondecreasing minorant is the suffix minimum over k..L.
"""

import logging
import math

import numpy

from cesnorms.enums import Cone, WeightKind
from cesnorms.special import hurwitz_tails, power_terms, shifted_tails
from cesnorms.utils import INF

_logger = logging.getLogger(__name__)


def _frozen(arr):
    arr = numpy.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


def _check_index(name, k):
    if int(k) != k or k < 1:
        raise ValueError("Parameter '{}' should be an integer >= 1".format(name))


class Weight:
    """A nonnegative weight sequence indexed from 1."""

    def __init__(self, kind, alpha=None, values=None):
        kind = WeightKind(kind)

        if kind is WeightKind.POWER:
            if alpha is None or not math.isfinite(float(alpha)):
                raise ValueError("Power weights need a finite 'alpha'")

            self._alpha = float(alpha)
            self._values = None
        else:
            vals = numpy.asarray(values if values is not None else [], dtype=float)

            if vals.ndim != 1:
                raise ValueError("List weights must be one-dimensional")

            if not numpy.all(numpy.isfinite(vals)):
                raise ValueError("List weights must be finite")

            if numpy.any(vals < 0):
                raise ValueError("List weights must be nonnegative")

            self._alpha = None
            self._values = _frozen(vals)

        self._kind = kind

    @classmethod
    def power(cls, alpha):
        return cls(WeightKind.POWER, alpha=alpha)

    @classmethod
    def from_values(cls, values):
        return cls(WeightKind.LIST, values=values)

    @classmethod
    def from_dict(cls, data):
        kind = data.get("kind")

        if kind == WeightKind.POWER.value:
            return cls.power(data["alpha"])

        if kind == WeightKind.LIST.value:
            return cls.from_values(data["values"])

        raise ValueError("Unknown weight kind: {}".format(kind))

    @property
    def kind(self):
        return self._kind

    @property
    def is_power(self):
        return self._kind is WeightKind.POWER

    @property
    def alpha(self):
        return self._alpha

    @property
    def values(self):
        return self._values

    @property
    def length(self):
        return None if self.is_power else len(self._values)

    def times_index(self):
        """The weight w_k = k u_k."""

        if self.is_power:
            return Weight.power(self._alpha - 1.0)

        ks = numpy.arange(1, len(self._values) + 1, dtype=float)
        return Weight.from_values(ks * self._values)

    def scaled(self, factor):
        if self.is_power:
            raise ValueError("Power weights cannot be scaled")

        if factor < 0:
            raise ValueError("Parameter 'factor' should be >= 0")

        return Weight.from_values(self._values * factor)

    def to_dict(self):
        if self.is_power:
            return {"kind": self._kind.value, "alpha": self._alpha}

        return {"kind": self._kind.value, "values": self._values.tolist()}

    def __eq__(self, other):
        if not isinstance(other, Weight) or other.kind is not self.kind:
            return False

        if self.is_power:
            return self._alpha == other.alpha

        return numpy.array_equal(self._values, other.values)

    def __hash__(self):
        if self.is_power:
            return hash((self._kind, self._alpha))

        return hash((self._kind, self._values.tobytes()))

    def __repr__(self):
        if self.is_power:
            return "<Weight power alpha={}>".format(self._alpha)

        return "<Weight list L={}>".format(len(self._values))


class SeqWindow:
    """A finite window x_start..x_end of a sequence.

    Entries before the window are zero. Entries after it equal tail, which is
    zero for a finitely supported sequence."""

    def __init__(self, values, start=1, tail=0.0):
        _check_index("start", start)
        self._values = _frozen(values)

        if self._values.ndim != 1:
            raise ValueError("Window values must be one-dimensional")

        self._start = int(start)
        self._tail = float(tail)

    @property
    def start(self):
        return self._start

    @property
    def end(self):
        return self._start + len(self._values) - 1

    @property
    def values(self):
        return self._values

    @property
    def tail(self):
        return self._tail

    def __len__(self):
        return len(self._values)

    def dense(self):
        """Values on 1..end, zero before the window."""

        return numpy.concatenate([numpy.zeros(self._start - 1), self._values])

    def as_view(self):
        return ListView(self.dense(), held=self._tail)

    def __repr__(self):
        return "<SeqWindow start={} end={} tail={}>".format(
            self._start, self.end, self._tail)


class ListView:
    """Point values, prefix sums and tail sums of a list held constant beyond L.

    values may carry leading batch axes; held is a scalar or has the batch shape."""

    def __init__(self, values, held=0.0):
        vals = numpy.asarray(values, dtype=float)
        self._length = vals.shape[-1]
        self._held = numpy.asarray(held, dtype=float)[..., None]
        pad = numpy.zeros(vals.shape[:-1] + (1,))
        self._padded = numpy.concatenate([vals, pad], axis=-1)
        ks = numpy.arange(1, self._length + 1, dtype=float)
        self._prefix = numpy.concatenate([pad, numpy.cumsum(vals, axis=-1)], axis=-1)
        self._tail_h = self._suffix(vals / ks)
        self._tail_t = self._suffix(vals / (ks * (ks + 1)))

    @staticmethod
    def _suffix(terms):
        rev = numpy.cumsum(terms[..., ::-1], axis=-1)[..., ::-1]
        pad = numpy.zeros(terms.shape[:-1] + (1,))
        return numpy.concatenate([rev, pad], axis=-1)

    @property
    def length(self):
        return self._length

    def at(self, ks):
        ks = numpy.asarray(ks, dtype=numpy.int64)
        idx = numpy.clip(ks - 1, 0, self._length)
        inside = numpy.take(self._padded, idx, axis=-1)
        beyond = numpy.where(ks > self._length, self._held, 0.0)
        return numpy.where((ks >= 1) & (ks <= self._length), inside, beyond)

    def prefix(self, ms):
        ms = numpy.asarray(ms, dtype=numpy.int64)
        idx = numpy.clip(ms, 0, self._length)
        extra = numpy.maximum(ms - self._length, 0)
        return numpy.take(self._prefix, idx, axis=-1) + self._held * extra

    def tail_harmonic(self, ms):
        ms = numpy.asarray(ms, dtype=numpy.int64)
        idx = numpy.clip(ms, 1, self._length + 1) - 1
        held = numpy.where(self._held > 0, INF, numpy.where(self._held < 0, -INF, 0.0))
        return numpy.take(self._tail_h, idx, axis=-1) + held

    def tail_telescoping(self, ms):
        ms = numpy.asarray(ms, dtype=numpy.int64)
        idx = numpy.clip(ms, 1, self._length + 1) - 1
        start = numpy.maximum(numpy.maximum(ms, 1), self._length + 1)
        return numpy.take(self._tail_t, idx, axis=-1) + self._held / start


class PowerView:
    """Point values, prefix sums and tail sums of x_k = k^(-beta)."""

    def __init__(self, beta, size):
        self._beta = float(beta)
        self._size = int(size)
        ks = numpy.arange(1, self._size + 1, dtype=float)
        self._prefix = numpy.concatenate([[0.0], numpy.cumsum(power_terms(self._beta, ks))])

    @property
    def beta(self):
        return self._beta

    def at(self, ks):
        ks = numpy.asarray(ks, dtype=numpy.int64)
        vals = power_terms(self._beta, numpy.maximum(ks, 1))
        return numpy.where(ks >= 1, vals, 0.0)

    def prefix(self, ms):
        ms = numpy.asarray(ms, dtype=numpy.int64)

        if ms.size and ms.max() > self._size:
            raise ValueError("Prefix index beyond the view size ({})".format(self._size))

        return self._prefix[numpy.maximum(ms, 0)]

    def tail_harmonic(self, ms):
        ms = numpy.maximum(numpy.asarray(ms, dtype=numpy.int64), 1)

        if self._beta <= 0:
            return numpy.full(ms.shape, INF)

        return hurwitz_tails(self._beta + 1.0, ms)

    def tail_telescoping(self, ms):
        ms = numpy.maximum(numpy.asarray(ms, dtype=numpy.int64), 1)

        if self._beta <= -1:
            return numpy.full(ms.shape, INF)

        return shifted_tails(self._beta + 1.0, ms)


def zero_view():
    return ListView(numpy.zeros(0))


def weight_at(w, k):
    """Domain-role value u_k: k^(-alpha) or the list entry (0 beyond L)."""

    _check_index("k", k)

    if w.is_power:
        return float(power_terms(w.alpha, [k])[0])

    return float(w.values[k - 1]) if k <= w.length else 0.0


def target_weights(v, ns):
    """Codomain-role values v_n: n^alpha or the list entry (0 beyond L)."""

    ns = numpy.asarray(ns, dtype=numpy.int64)

    if v.is_power:
        return power_terms(-v.alpha, ns)

    padded = numpy.append(v.values, 0.0)
    return padded[numpy.minimum(ns, v.length + 1) - 1] if v.length else numpy.zeros(ns.shape)


def target_weight_at(v, n):
    _check_index("n", n)
    return float(target_weights(v, [n])[0])


def _ratios(xs, us):
    xs = numpy.abs(numpy.asarray(xs, dtype=float))
    us = numpy.asarray(us, dtype=float)

    with numpy.errstate(divide="ignore", invalid="ignore"):
        quot = xs / us

    return numpy.where(xs == 0, 0.0, numpy.where(us == 0, INF, quot))


def sup_norm_weighted(x, v):
    """sup_n |x_n| v_n over the window and its constant tail."""

    ns = numpy.arange(x.start, x.end + 1)
    best = float(numpy.max(numpy.abs(x.values) * target_weights(v, ns))) if len(x) else 0.0

    if x.tail == 0:
        return best

    first = x.end + 1

    if v.is_power:
        beyond = INF if v.alpha > 0 else abs(x.tail) * float(target_weights(v, [first])[0])
    else:
        rest = v.values[first - 1:]
        beyond = abs(x.tail) * float(rest.max()) if len(rest) else 0.0

    return max(best, beyond)


def quotient_norm_weighted(x, u):
    """sup_k |x_k| / u_k with the 0/0 = 0 convention."""

    ks = numpy.arange(x.start, x.end + 1)
    us = numpy.array([weight_at(u, int(k)) for k in ks]) if not u.is_power else power_terms(u.alpha, ks)
    best = float(numpy.max(_ratios(x.values, us))) if len(x) else 0.0

    if x.tail == 0:
        return best

    if u.is_power and u.alpha <= 0:
        beyond = abs(x.tail) * float(power_terms(-u.alpha, [x.end + 1])[0])
    else:
        beyond = INF

    return max(best, beyond)


def envelope_down(u, K):
    """Prefix 1..K of the greatest nonincreasing minorant (running minimum)."""

    _check_index("K", K)

    if u.is_power:
        return numpy.ones(K) if u.alpha < 0 else power_terms(u.alpha, numpy.arange(1, K + 1))

    vals = numpy.zeros(K)
    count = min(K, u.length)
    vals[:count] = u.values[:count]

    return numpy.minimum.accumulate(vals)


def envelope_up(u, K, truncated=True):
    """Prefix 1..K of the greatest nondecreasing minorant (suffix infimum).

    In truncated mode a list weight is held at u_L beyond L; otherwise its
    zero tail forces the minorant to vanish."""

    _check_index("K", K)

    if u.is_power:
        return numpy.zeros(K) if u.alpha > 0 else power_terms(u.alpha, numpy.arange(1, K + 1))

    if not truncated or not u.length:
        return numpy.zeros(K)

    suffix = numpy.minimum.accumulate(u.values[::-1])[::-1]
    size = max(K, u.length)
    vals = numpy.full(size, u.values[-1])
    vals[:u.length] = suffix

    return vals[:K]


def is_nonincreasing(x):
    vals = numpy.asarray(x.values if isinstance(x, SeqWindow) else x, dtype=float)
    return bool(numpy.all(numpy.diff(vals) <= 0))


def is_nondecreasing(x):
    vals = numpy.asarray(x.values if isinstance(x, SeqWindow) else x, dtype=float)
    return bool(numpy.all(numpy.diff(vals) >= 0))


def dominated_by_envelope_down(x, u):
    """For a nonnegative nonincreasing window from 1 with x <= u, checks x <= u↓."""

    vals = numpy.asarray(x, dtype=float)
    return bool(numpy.all(vals <= envelope_down(u, len(vals))))


def dominated_by_envelope_up(x, u):
    """For a nonnegative nondecreasing window from 1 with x <= u, checks x <= u↑."""

    vals = numpy.asarray(x, dtype=float)
    return bool(numpy.all(vals <= envelope_up(u, len(vals))))


def domain_view(u, cone, size):
    """The sequence the norm formulas read for cone: u, u↓ or u↑."""

    cone = Cone(cone)

    if cone in (Cone.ALL, Cone.NONNEG):
        if u.is_power:
            return PowerView(u.alpha, size)

        return ListView(u.values)

    if cone is Cone.NONINCR:
        if u.is_power:
            return PowerView(max(u.alpha, 0.0), size)

        return ListView(numpy.minimum.accumulate(u.values)) if u.length else zero_view()

    if u.is_power:
        return zero_view() if u.alpha > 0 else PowerView(u.alpha, size)

    if not u.length:
        return zero_view()

    return ListView(envelope_up(u, u.length), held=u.values[-1])
