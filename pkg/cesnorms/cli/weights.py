import json
import logging
import math

import pandas

from cesnorms.sequences import Weight
from cesnorms.utils import WeightSpecError

_PREFIX_POWER = "power"
_PREFIX_POWER_PAIR = "powerpair"
_PREFIX_LIST = "list"
_PREFIX_JSON = "json"

_logger = logging.getLogger(__name__)


def _parse_alpha(raw, spec):
    try:
        alpha = float(raw)
    except ValueError:
        raise WeightSpecError("Invalid exponent in weight spec: {}".format(spec))

    if not math.isfinite(alpha):
        raise WeightSpecError("Exponent must be finite in weight spec: {}".format(spec))

    return alpha


def read_weight_list(path):
    """Reads one nonnegative value per line."""

    _logger.debug("Reading weight list: %s", path)

    try:
        df = pandas.read_csv(path, header=None, comment="#", skip_blank_lines=True)
    except pandas.errors.EmptyDataError:
        return Weight.from_values([])

    if df.shape[1] != 1:
        raise WeightSpecError("Expected a single column in weight list: {}".format(path))

    try:
        values = pandas.to_numeric(df[0]).to_numpy(dtype=float)
        return Weight.from_values(values)
    except ValueError as ex:
        raise WeightSpecError("Invalid weight list ({}): {}".format(path, ex))


def read_weight_json(path):
    _logger.debug("Reading weight JSON: %s", path)

    with open(path, "r") as fh:
        data = json.load(fh)

    try:
        return Weight.from_dict(data)
    except (KeyError, TypeError, ValueError) as ex:
        raise WeightSpecError("Invalid weight document ({}): {}".format(path, ex))


def parse_weight_spec(spec):
    """Parses a weight spec into (weight, matched_pair).

    Accepted forms are power:<alpha>, powerpair:<alpha>, list:<path> and
    json:<path>. Only powerpair is flagged as a matched pair; two power specs
    with the same exponent are matched as well, see is_matched_pair."""

    if not spec or ":" not in spec:
        raise WeightSpecError("Invalid weight spec: {}".format(spec))

    prefix, rest = spec.split(":", 1)
    prefix = prefix.strip().lower()

    if prefix == _PREFIX_POWER:
        return Weight.power(_parse_alpha(rest, spec)), False

    if prefix == _PREFIX_POWER_PAIR:
        return Weight.power(_parse_alpha(rest, spec)), True

    if prefix == _PREFIX_LIST:
        return read_weight_list(rest), False

    if prefix == _PREFIX_JSON:
        return read_weight_json(rest), False

    raise WeightSpecError("Unknown weight spec prefix: {}".format(prefix))


def resolve_weights(u_spec, v_spec):
    """Parses u and v. A single powerpair spec stands for both weights."""

    if u_spec is None and v_spec is None:
        raise WeightSpecError("At least one of --u and --v is required")

    parsed_u = parse_weight_spec(u_spec) if u_spec else None
    parsed_v = parse_weight_spec(v_spec) if v_spec else None

    if parsed_u is None or parsed_v is None:
        weight, pair = parsed_u or parsed_v

        if not pair:
            raise WeightSpecError("Both --u and --v are required unless a powerpair is given")

        return weight, weight

    return parsed_u[0], parsed_v[0]


def is_matched_pair(u, v):
    return u.is_power and v.is_power and u.alpha == v.alpha
