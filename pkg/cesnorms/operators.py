"""
Lazy structured matrices.

Every row n of an operator is a short list of terms, each covering a
contiguous range of columns with a single coefficient:

    POINT               b_{n,n+off} = c
    HEAD                b_{n,k} = c for 1 <= k <= n+off
    TAIL_HARMONIC       b_{n,k} = c / k for k >= n+off
    TAIL_TELESCOPING    b_{n,k} = c / (k(k+1)) for k >= n+off

Terms of a row never overlap and are listed by increasing column, which makes
entries, sign patterns, row sums and row functionals closed-form.
"""

import collections
import enum
import logging
import math

import numpy

from cesnorms.enums import Cone, OpKind, RowPattern
from cesnorms.sequences import SeqWindow
from cesnorms.utils import INF, OpenProblemError, UnsupportedError, safe_product

_logger = logging.getLogger(__name__)


class Shape(enum.Enum):
    POINT = "point"
    HEAD = "head"
    TAIL_HARMONIC = "tail_harmonic"
    TAIL_TELESCOPING = "tail_telescoping"


class Part(enum.Enum):
    SIGNED = "signed"
    ABS = "abs"
    POS = "pos"
    NEG = "neg"


Term = collections.namedtuple("Term", ["shape", "offset", "coeff"])

RowClass = collections.namedtuple(
    "RowClass",
    [
        "pattern",
        "row_sum",
        "finite_sum",
        "single_signed"
    ])


def _inv(ns):
    return 1.0 / ns


def _inv_minus_one(ns):
    return 1.0 / ns - 1.0


def _neg_inv(ns):
    return -1.0 / ns


def _inv_next(ns):
    return 1.0 / (ns + 1.0)


def _const(val):
    def coeff(ns):
        return numpy.full(numpy.shape(ns), float(val))

    return coeff


_TERMS = {
    OpKind.C: (
        Term(Shape.HEAD, 0, _inv),),
    OpKind.CSTAR: (
        Term(Shape.TAIL_HARMONIC, 0, _const(1)),),
    OpKind.CMINUS_I: (
        Term(Shape.HEAD, -1, _inv),
        Term(Shape.POINT, 0, _inv_minus_one)),
    OpKind.CSTAR_MINUS_I: (
        Term(Shape.POINT, 0, _inv_minus_one),
        Term(Shape.TAIL_HARMONIC, 1, _const(1))),
    OpKind.CMINUS_SSTAR: (
        Term(Shape.HEAD, 0, _inv),
        Term(Shape.POINT, 1, _const(-1))),
    OpKind.CSTAR_SD: (
        Term(Shape.POINT, -1, _neg_inv),
        Term(Shape.TAIL_TELESCOPING, 0, _const(1))),
    OpKind.S: (
        Term(Shape.POINT, -1, _const(1)),),
    OpKind.SSTAR: (
        Term(Shape.POINT, 1, _const(1)),),
    OpKind.D: (
        Term(Shape.POINT, 0, _inv_next),),
    OpKind.E: (
        Term(Shape.HEAD, 0, _const(1)),),
    OpKind.I: (
        Term(Shape.POINT, 0, _const(1)),)
}

assert set(_TERMS.keys()) == set(OpKind)

_NEG_FIRST_KINDS = {OpKind.CSTAR_MINUS_I, OpKind.CSTAR_SD}
_SUM_SLACK = 1e-12


class Operator:
    """An OpKind with optional row sign flips.

    Row n is multiplied by -1 when exactly one of these holds: negate is set,
    or n belongs to flipped_rows."""

    def __init__(self, kind, negate=False, flipped_rows=()):
        self._kind = OpKind(kind)
        self._negate = bool(negate)
        rows = frozenset(int(item) for item in flipped_rows)

        if any(item < 1 for item in rows):
            raise ValueError("Flipped rows should be indices >= 1")

        self._flipped_rows = rows

    @property
    def kind(self):
        return self._kind

    @property
    def negate(self):
        return self._negate

    @property
    def flipped_rows(self):
        return self._flipped_rows

    @property
    def terms(self):
        return _TERMS[self._kind]

    def flipped(self):
        return Operator(self._kind, not self._negate, self._flipped_rows)

    def signs(self, ns):
        ns = numpy.asarray(ns)
        toggled = numpy.isin(ns, list(self._flipped_rows))
        return numpy.where(toggled != self._negate, -1.0, 1.0)

    def row_sign(self, n):
        return -1.0 if (n in self._flipped_rows) != self._negate else 1.0

    def __eq__(self, other):
        return isinstance(other, Operator) and \
            (self._kind, self._negate, self._flipped_rows) == \
            (other.kind, other.negate, other.flipped_rows)

    def __hash__(self):
        return hash((self._kind, self._negate, self._flipped_rows))

    def __repr__(self):
        return "<Operator {} negate={} flipped_rows={}>".format(
            self._kind.value, self._negate, sorted(self._flipped_rows))


def as_operator(op):
    return op if isinstance(op, Operator) else Operator(op)


def _check_index(name, val):
    if int(val) != val or val < 1:
        raise ValueError("Parameter '{}' should be an integer >= 1".format(name))


def _nonempty(term, n):
    if term.shape in (Shape.POINT, Shape.HEAD):
        return n + term.offset >= 1

    return True


def _signed_coeffs(op, n):
    sign = op.row_sign(n)
    ns = numpy.array([float(n)])

    return [
        (term, sign * float(term.coeff(ns)[0]))
        for term in op.terms
        if _nonempty(term, n)
    ]


def _term_entries(term, n, ks):
    idx = n + term.offset

    if term.shape is Shape.POINT:
        return numpy.where(ks == idx, 1.0, 0.0)

    if term.shape is Shape.HEAD:
        return numpy.where((ks >= 1) & (ks <= idx), 1.0, 0.0)

    if term.shape is Shape.TAIL_HARMONIC:
        return numpy.where(ks >= idx, 1.0 / ks, 0.0)

    return numpy.where(ks >= idx, 1.0 / (ks * (ks + 1.0)), 0.0)


def row_entries(op, n, K):
    """Entries b_{n,1..K}."""

    op = as_operator(op)
    _check_index("n", n)
    ks = numpy.arange(1, K + 1, dtype=float)
    row = numpy.zeros(K)

    for term, coeff in _signed_coeffs(op, n):
        row += coeff * _term_entries(term, n, ks)

    return row


def entry(op, n, k):
    _check_index("k", k)
    return float(row_entries(op, n, k)[-1])


def entry_parts(op, n, k):
    """The pair (b+, b-) with b = b+ - b- and b+ * b- = 0."""

    val = entry(op, n, k)
    return max(val, 0.0), max(-val, 0.0)


def _term_sum(term, coeff, n, start=1):
    """Sum of the term over columns k >= start."""

    idx = n + term.offset
    first = max(start, 1)

    if coeff == 0:
        return 0.0

    if term.shape is Shape.POINT:
        return coeff if idx >= first else 0.0

    if term.shape is Shape.HEAD:
        return coeff * max(idx - first + 1, 0)

    if term.shape is Shape.TAIL_HARMONIC:
        return math.copysign(INF, coeff)

    return coeff / max(idx, first)


def row_tail_sum(op, n, m=1):
    """Analytic sum_{k>=m} b_{n,k}."""

    op = as_operator(op)
    _check_index("n", n)

    return sum(
        _term_sum(term, coeff, n, start=m)
        for term, coeff in _signed_coeffs(op, n))


def _default_pattern(op, n):
    neg_first = op.kind in _NEG_FIRST_KINDS

    if op.row_sign(n) < 0:
        neg_first = not neg_first

    return RowPattern.NEG_BEFORE_POS if neg_first else RowPattern.POS_BEFORE_NEG


def classify_row(op, n):
    """Sign pattern and analytic sum of row n."""

    op = as_operator(op)
    _check_index("n", n)
    signs = [math.copysign(1.0, coeff) for _, coeff in _signed_coeffs(op, n) if coeff != 0]
    row_sum = row_tail_sum(op, n)
    changes = sum(1 for prev, cur in zip(signs, signs[1:]) if prev != cur)

    if not signs:
        pattern = RowPattern.ALL_ZERO
    elif changes == 0:
        pattern = _default_pattern(op, n)
    elif changes == 1:
        pattern = RowPattern.POS_BEFORE_NEG if signs[0] > 0 else RowPattern.NEG_BEFORE_POS
    else:
        pattern = RowPattern.MIXED

    return RowClass(
        pattern=pattern,
        row_sum=row_sum,
        finite_sum=math.isfinite(row_sum),
        single_signed=changes == 0)


def last_index(op, n, sign):
    """sup{k : sign * b_{n,k} > 0}, 0 when empty and INF for unbounded rows."""

    op = as_operator(op)
    _check_index("n", n)
    last = 0

    for term, coeff in _signed_coeffs(op, n):
        if coeff * sign <= 0:
            continue

        if term.shape in (Shape.TAIL_HARMONIC, Shape.TAIL_TELESCOPING):
            return INF

        last = max(last, n + term.offset)

    return last


def representative_rows(op):
    """Rows whose classification covers every row of the operator.

    Row structure is uniform from row 2 on, so the first rows and the rows
    around the explicit flips are enough."""

    op = as_operator(op)
    rows = {1, 2, 3}

    if op.flipped_rows:
        top = max(op.flipped_rows)
        rows.update(op.flipped_rows)
        rows.update((top + 1, top + 2))

    return sorted(rows)


def _row_ok(row_class, cone):
    if row_class.row_sum < -_SUM_SLACK:
        return False

    if row_class.single_signed:
        return True

    if cone is Cone.NONINCR:
        return row_class.pattern is RowPattern.POS_BEFORE_NEG

    return row_class.pattern is RowPattern.NEG_BEFORE_POS


def failing_rows(op, cone):
    """Representative rows breaking the sign hypotheses of a monotone cone."""

    op = as_operator(op)
    cone = Cone(cone)

    if cone not in (Cone.NONINCR, Cone.NONDECR):
        return []

    return [n for n in representative_rows(op) if not _row_ok(classify_row(op, n), cone)]


def satisfies_cone(op, cone):
    return not failing_rows(op, cone)


def has_infinite_row(op):
    op = as_operator(op)
    return any(classify_row(op, n).row_sum == INF for n in representative_rows(op))


def preprocessed(op, cone):
    """Row sign flips that make the hypotheses of a monotone cone hold.

    Tries the operator as given, then all rows flipped, then all rows flipped
    except those that only work unflipped. Returns the operator unchanged when
    none of them works."""

    op = as_operator(op)
    cone = Cone(cone)

    if satisfies_cone(op, cone):
        return op

    flipped = op.flipped()

    if satisfies_cone(flipped, cone):
        return flipped

    keep = [n for n in failing_rows(flipped, cone) if n not in failing_rows(op, cone)]

    if keep:
        candidate = Operator(
            op.kind,
            negate=flipped.negate,
            flipped_rows=op.flipped_rows.symmetric_difference(keep))

        if satisfies_cone(candidate, cone):
            _logger.debug("Preprocessed %s for %s: %s", op, cone, candidate)
            return candidate

    return op


def require_cone(op, cone):
    """Raises when the cone hypotheses fail for op."""

    op = as_operator(op)
    cone = Cone(cone)
    rows = failing_rows(op, cone)

    if not rows:
        return

    if op.kind is OpKind.CSTAR_MINUS_I and cone is Cone.NONINCR:
        raise OpenProblemError(
            "The norm of C*-I on nonincreasing sequences is an open problem",
            op=op, cone=cone)

    raise UnsupportedError(
        "Rows {} of {} break the sign hypotheses of cone {}".format(
            rows, op, cone.value),
        op=op, cone=cone)


def _term_values(term, view, ns):
    idx = ns + term.offset

    if term.shape is Shape.POINT:
        return view.at(idx)

    if term.shape is Shape.HEAD:
        return view.prefix(numpy.maximum(idx, 0))

    if term.shape is Shape.TAIL_HARMONIC:
        return view.tail_harmonic(numpy.maximum(idx, 1))

    return view.tail_telescoping(numpy.maximum(idx, 1))


def row_values(op, view, ns, part=Part.SIGNED):
    """Row functionals sum_k f(b_{n,k}) x_k for the rows ns.

    ABS, POS and NEG expect a nonnegative view and use |b|, b+ and b-."""

    op = as_operator(op)
    part = Part(part)
    ns = numpy.asarray(ns, dtype=numpy.int64)
    fns = ns.astype(float)
    signs = op.signs(ns)
    total = None

    for term in op.terms:
        coeff = signs * term.coeff(fns)

        if part is Part.ABS:
            coeff = numpy.abs(coeff)
        elif part is Part.POS:
            coeff = numpy.maximum(coeff, 0.0)
        elif part is Part.NEG:
            coeff = numpy.maximum(-coeff, 0.0)

        if not numpy.any(coeff):
            continue

        vals = safe_product(coeff, _term_values(term, view, ns))
        total = vals if total is None else total + vals

    if total is None:
        return numpy.zeros_like(view.at(ns), dtype=float)

    return total


def apply(op, x, N):
    """(Bx)_1..(Bx)_N for a finitely supported window x."""

    _check_index("N", N)
    ns = numpy.arange(1, N + 1)
    return SeqWindow(row_values(op, x.as_view(), ns))


def check_identity_first(x, N):
    """max_{n<=N} |((C - S*)(C* x))_n - (C x)_n|."""

    y = apply(OpKind.CSTAR, x, max(N + 1, x.end))
    lhs = apply(OpKind.CMINUS_SSTAR, y, N).values
    rhs = apply(OpKind.C, x, N).values

    return float(numpy.max(numpy.abs(lhs - rhs)))


def check_identity_second(x, N):
    """max_{n<=N} |((C* - S) D (E x))_n - (C* x)_n|.

    E x is held at the total sum beyond the support of x."""

    dense = x.dense()
    z = SeqWindow(numpy.cumsum(dense), tail=float(numpy.sum(dense)))
    lhs = apply(OpKind.CSTAR_SD, z, N).values
    rhs = apply(OpKind.CSTAR, x, N).values

    return float(numpy.max(numpy.abs(lhs - rhs)))


def copson_preimage(y):
    """x with x_k = k (y_k - y_{k+1}), so that C* x = y for finitely supported y."""

    if y.tail != 0:
        raise ValueError("Copson preimages need a finitely supported window")

    dense = y.dense()
    ks = numpy.arange(1, len(dense) + 1, dtype=float)
    diffs = dense - numpy.append(dense[1:], 0.0)

    return SeqWindow(ks * diffs)


def summation_preimage(z):
    """x with x_k = z_k - z_{k-1} (z_0 = 0), so that E x = z."""

    dense = numpy.append(z.dense(), z.tail)
    diffs = numpy.diff(numpy.concatenate([[0.0], dense]))

    return SeqWindow(diffs)
