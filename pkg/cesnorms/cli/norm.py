import json
import logging

import click

from cesnorms.constants import TwoOpQuery, best_constant
from cesnorms.enums import (CONE_CLI_NAMES, DIRECTION_CLI_NAMES, OP_CLI_NAMES,
                            Direction, Status)
from cesnorms.formulas import (NormResult, TruncConfig, default_trunc_config,
                               norm, norm_general)
from cesnorms.operators import Operator
from cesnorms.power import (power_closed_form, two_op_cc_power,
                           two_op_cstarc_power)
from cesnorms.utils import UnsupportedError, ext_real_json
from cesnorms.cli.weights import is_matched_pair, resolve_weights

_logger = logging.getLogger(__name__)


def _by_cli_name(table, name):
    for key, val in table.items():
        if val == name:
            return key

    raise ValueError("Unknown name: {}".format(name))


def trunc_config(conf, n_max=None, tol=None, divergence_threshold=None, workers=None):
    """Environment defaults overridden by the command flags that were given."""

    cfg = default_trunc_config(conf)

    return TruncConfig(
        n_max=n_max if n_max is not None else cfg.n_max,
        tol=tol if tol is not None else cfg.tol,
        divergence_threshold=divergence_threshold
        if divergence_threshold is not None else cfg.divergence_threshold,
        workers=workers if workers is not None else cfg.workers)


def result_document(result, **extra):
    doc = dict(extra)

    doc.update({
        "value": ext_real_json(result.value),
        "status": result.status.value,
        "n_used": result.n_used,
        "residual": ext_real_json(result.residual_estimate)
    })

    return doc


def unsupported_document(reason, **extra):
    doc = dict(extra)
    doc.update({"status": Status.UNSUPPORTED.value, "reason": reason})
    return doc


def dump(doc):
    return json.dumps(doc, sort_keys=True)


def _closed_form_result(closed_form):
    _logger.info("Closed form branch: %s", closed_form.case_label)

    return NormResult(
        value=closed_form.value,
        status=Status.CLOSED_FORM,
        n_used=0,
        residual_estimate=0.0)


def _log_result(label, result):
    if result.status is Status.TRUNCATED_LOWER_BOUND:
        _logger.warning(
            "%s: Only a lower bound was reached (residual %s after %s rows)",
            label, result.residual_estimate, result.n_used)
    else:
        _logger.info("%s: %s (%s)", label, result.value, result.status.value)


def eval_norm(cfg, op_name, cone_name, u, v, generic=False, negate=False):
    """Returns the NormResult of one norm query.

    Matched power pairs with a known table take the closed form; everything
    else goes through the cone formulas."""

    kind = _by_cli_name(OP_CLI_NAMES, op_name)
    cone = _by_cli_name(CONE_CLI_NAMES, cone_name)

    if generic or negate:
        op = Operator(kind, negate=negate)
        return norm_general(op, u, v, cone, cfg)

    if is_matched_pair(u, v):
        closed_form = power_closed_form(kind, cone, u.alpha)

        if closed_form is not None:
            return _closed_form_result(closed_form)

    return norm(kind, u, v, cone, cfg)


_TWO_OP_TABLES = {
    Direction.C_LE_CSTAR: two_op_cc_power,
    Direction.CSTAR_LE_C: two_op_cstarc_power
}


def eval_two_op(cfg, dir_name, cone_name, u, v):
    direction = _by_cli_name(DIRECTION_CLI_NAMES, dir_name)
    cone = _by_cli_name(CONE_CLI_NAMES, cone_name)

    if is_matched_pair(u, v):
        return _closed_form_result(_TWO_OP_TABLES[direction](u.alpha, cone))

    query = TwoOpQuery(direction=direction, cone=cone, u=u, v=v, cfg=cfg)

    return best_constant(query)


def _run(label, func, fields):
    try:
        result = func()
    except UnsupportedError as ex:
        click.echo(dump(unsupported_document(ex.reason, **fields)))
        raise

    _log_result(label, result)
    click.echo(dump(result_document(result, **fields)))


def cmd_norm(conf, op, cone, u, v, generic, negate, **kwargs):
    cfg = trunc_config(conf, **kwargs)
    u_weight, v_weight = resolve_weights(u, v)
    fields = {"op": op, "cone": cone}

    _run(
        "Norm of {} on {}".format(op, cone),
        lambda: eval_norm(cfg, op, cone, u_weight, v_weight, generic=generic, negate=negate),
        fields)


def cmd_two_op(conf, direction, cone, u, v, **kwargs):
    cfg = trunc_config(conf, **kwargs)
    u_weight, v_weight = resolve_weights(u, v)
    fields = {"direction": direction, "cone": cone}

    _run(
        "Best constant of {} on {}".format(direction, cone),
        lambda: eval_two_op(cfg, direction, cone, u_weight, v_weight),
        fields)
