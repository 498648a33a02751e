import logging

import click
import pandas

from cesnorms.cli.norm import trunc_config
from cesnorms.enums import (CONE_CLI_NAMES, POWER_THEOREM_CONES, Cone, OpKind,
                            PowerTheorem)
from cesnorms.formulas import norm
from cesnorms.power import PowerCaseResult, theorem_value
from cesnorms.sequences import Weight
from cesnorms.utils import OpenProblemError, UnsupportedError

_ALPHA_DIGITS = 12
_COLUMNS = ["alpha", "cone", "value", "case_label"]

_THEOREM_OPS = {
    PowerTheorem.CESARO: OpKind.C,
    PowerTheorem.COPSON: OpKind.CSTAR,
    PowerTheorem.CESARO_MINUS_IDENTITY: OpKind.CMINUS_I,
    PowerTheorem.COPSON_MINUS_IDENTITY: OpKind.CSTAR_MINUS_I
}

_logger = logging.getLogger(__name__)


def alpha_grid(start, stop, step):
    """start, start + step, ... up to stop, with stop reached by rounding."""

    if not step > 0:
        raise ValueError("Parameter 'step' should be > 0")

    if stop < start:
        raise ValueError("Parameter 'to' should be >= 'from'")

    count = int(round((stop - start) / step)) + 1

    return [round(start + idx * step, _ALPHA_DIGITS) for idx in range(count)]


def _case(theorem, alpha, cone, cfg):
    try:
        return theorem_value(theorem, alpha, cone)
    except OpenProblemError:
        raise
    except UnsupportedError:
        if theorem not in _THEOREM_OPS:
            raise

    # Tables that stop short of a cone defer to the general formulas
    weight = Weight.power(alpha)
    result = norm(_THEOREM_OPS[theorem], weight, weight, cone, cfg)

    return PowerCaseResult(result.value, "general formula ({})".format(result.status.value))


def power_table(theorem, alphas, cfg):
    theorem = PowerTheorem(theorem)
    rows = []

    for cone in POWER_THEOREM_CONES[theorem]:
        for alpha in alphas:
            res = _case(theorem, alpha, cone, cfg)
            rows.append((alpha, CONE_CLI_NAMES[cone], repr(float(res.value)), res.case_label))

    return pandas.DataFrame(rows, columns=_COLUMNS)


def omitted_cones(theorem):
    return [cone for cone in Cone if cone not in POWER_THEOREM_CONES[PowerTheorem(theorem)]]


def _omitted_note(theorem, cone):
    if theorem is PowerTheorem.COPSON_MINUS_IDENTITY and cone is Cone.NONINCR:
        reason = "open problem"
    else:
        reason = "no closed form on this cone"

    return "# {} omitted: {}\n".format(CONE_CLI_NAMES[cone], reason)


def table_csv(theorem, alphas, cfg):
    theorem = PowerTheorem(theorem)
    df = power_table(theorem, alphas, cfg)
    header = "".join(_omitted_note(theorem, cone) for cone in omitted_cones(theorem))

    return header + df.to_csv(index=False)


def cmd_power_table(conf, theorem, alpha_from, alpha_to, step):
    cfg = trunc_config(conf)
    alphas = alpha_grid(alpha_from, alpha_to, step)

    _logger.info("Power table for %s over %s values of alpha", theorem, len(alphas))

    click.echo(table_csv(theorem, alphas, cfg), nl=False)
