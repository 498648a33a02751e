import concurrent.futures
import logging
import math

import numpy

INF = math.inf

_logger = logging.getLogger(__name__)


class UnsupportedError(Exception):
    """The requested cone is outside the reach of the norm formulas for this operator."""

    def __init__(self, reason, op=None, cone=None):
        super().__init__(reason)
        self.reason = reason
        self.op = op
        self.cone = cone


class OpenProblemError(UnsupportedError):
    pass


class WeightSpecError(ValueError):
    pass


class VerificationError(Exception):
    pass


def ext_real(val):
    """Coerces to a float in [-inf, inf], rejecting NaN."""

    val = float(val)

    if math.isnan(val):
        raise ValueError("NaN is not an extended real")

    return val


def ext_real_json(val):
    if val is None:
        return None

    val = ext_real(val)

    if math.isinf(val):
        return "inf" if val > 0 else "-inf"

    return val


def safe_product(coeff, val):
    """Entrywise product with the 0 * inf = 0 convention."""

    coeff = numpy.asarray(coeff, dtype=float)
    val = numpy.asarray(val, dtype=float)

    with numpy.errstate(invalid="ignore"):
        prod = coeff * val

    return numpy.where(coeff == 0, 0.0, prod)


def split_range(start, stop, parts, marks=None):
    """Splits the integer range [start, stop] into contiguous (lo, hi) chunks.

    Every value in marks that lies inside the range starts a new chunk."""

    if stop < start:
        return []

    parts = max(int(parts), 1)
    size = max((stop - start + 1) // parts, 1)
    cuts = set(range(start, stop + 1, size))
    cuts.update(mark for mark in (marks or []) if start < mark <= stop)
    cuts.add(start)
    cuts = sorted(cuts)
    ends = [item - 1 for item in cuts[1:]] + [stop]

    return list(zip(cuts, ends))


def run_chunks(func, chunks, workers):
    """Maps func over chunks, returning the results in chunk order."""

    workers = max(int(workers or 1), 1)

    if workers == 1 or len(chunks) <= 1:
        return [func(chunk) for chunk in chunks]

    _logger.debug("Running %s chunks on %s workers", len(chunks), workers)

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, chunks))
