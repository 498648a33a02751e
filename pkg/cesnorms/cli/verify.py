"""
Self-checks behind the verify command.

Every suite returns a list of plain report documents. A document always has
the keys suite, case and passed; the remaining keys depend on the suite.
"""

import json
import logging

import click
import numpy

from cesnorms.cli.norm import trunc_config
from cesnorms.constants import TwoOpQuery, best_constant, witness_ratio
from cesnorms.enums import (CONE_CLI_NAMES, DIRECTION_CLI_NAMES, OP_CLI_NAMES,
                            PRINCIPAL_OPS, Cone, Direction, MonotoneFact,
                            Status, VerifySuite)
from cesnorms.formulas import norm
from cesnorms.operators import check_identity_first, check_identity_second
from cesnorms.oracle import check_monotone, verify
from cesnorms.power import power_closed_form
from cesnorms.sequences import SeqWindow, Weight
from cesnorms.utils import (INF, UnsupportedError, VerificationError,
                            ext_real_json)

_IDENTITY_WINDOWS = 1000
_IDENTITY_SUPPORT = 40
_IDENTITY_SLACK = 1e-12
_ORACLE_PAIRS = 50
_WITNESS_PAIRS = 20
_WITNESS_RTOL = 1e-12
_MAX_LIST = 20
_ZERO_FRACTION = 0.1
_MONOTONE_ROWS = 10 ** 4
_CONSISTENCY_ALPHAS = (-2.0, -1.0, -0.5, 0.0, 0.3, 0.7, 0.99)
_CONSISTENCY_SLACK = 1e-3
_DIVERGENCE_FLOOR = 1e6

_MONOTONE_ALPHAS = {
    MonotoneFact.CESARO_AVERAGE: (-2.0, -1.0, -0.5, 0.0, 0.5, 0.99, 2.0),
    MonotoneFact.STRICT_CESARO_AVERAGE: (-2.0, -1.0, -0.5, 0.0, 0.5, 0.99, 2.0),
    MonotoneFact.COPSON_TAIL: (0.25, 0.5, 1.0, 2.0, 3.0),
    MonotoneFact.STRICT_COPSON_TAIL: (0.25, 0.5, 1.0, 2.0, 3.0),
    MonotoneFact.SHIFTED_TAIL: (0.25, 0.5, 1.0, 2.0, 3.0)
}

assert set(_MONOTONE_ALPHAS.keys()) == set(MonotoneFact)

_logger = logging.getLogger(__name__)


def random_list_weight(rng, max_len=_MAX_LIST, zero_fraction=_ZERO_FRACTION):
    """A list weight of length 1..max_len with entries in [0, 1], some of them zero."""

    size = int(rng.integers(1, max_len + 1))
    values = rng.uniform(0.0, 1.0, size)
    values[rng.uniform(0.0, 1.0, size) < zero_fraction] = 0.0

    return Weight.from_values(values)


def _random_window(rng, N):
    support = int(rng.integers(1, _IDENTITY_SUPPORT + 1))
    start = int(rng.integers(1, max(N - support, 1) + 1))

    return SeqWindow(rng.uniform(-1.0, 1.0, support), start=start)


def suite_identities(cfg, seed, trials, N):
    rng = numpy.random.default_rng(seed)
    worst = {"first": 0.0, "second": 0.0}

    for _ in range(_IDENTITY_WINDOWS):
        x = _random_window(rng, N)
        scale = max(1.0, float(numpy.sum(numpy.abs(x.values))))
        worst["first"] = max(worst["first"], check_identity_first(x, N) / scale)
        worst["second"] = max(worst["second"], check_identity_second(x, N) / scale)

    return [
        {
            "suite": VerifySuite.IDENTITIES.value,
            "case": name,
            "windows": _IDENTITY_WINDOWS,
            "n": N,
            "max_relative_deviation": dev,
            "passed": bool(dev <= _IDENTITY_SLACK)
        }
        for name, dev in sorted(worst.items())
    ]


def consistency_passed(closed_value, result, tol):
    """Whether an uncertified scan agrees with a closed-form value.

    The scan may not exceed the closed form, and may fall short of it by no
    more than the larger of a fixed slack and its own tail bracket."""

    if closed_value == INF:
        return result.status is Status.DIVERGENT or result.value > _DIVERGENCE_FLOOR

    if result.status is Status.DIVERGENT:
        return False

    slack = tol * max(1.0, closed_value)
    gap = abs(closed_value - result.value)

    return result.value <= closed_value + slack and \
        gap <= max(_CONSISTENCY_SLACK, result.residual_estimate)


def _consistency_case(kind, cone, alpha, cfg):
    closed_form = power_closed_form(kind, cone, alpha)

    if closed_form is None:
        return None

    weight = Weight.power(alpha)
    result = norm(kind, weight, weight, cone, cfg, certify=False)
    passed = consistency_passed(closed_form.value, result, cfg.tol)

    return {
        "suite": VerifySuite.POWER_CONSISTENCY.value,
        "case": "{} {} alpha={}".format(OP_CLI_NAMES[kind], CONE_CLI_NAMES[cone], alpha),
        "closed_form": ext_real_json(closed_form.value),
        "general": ext_real_json(result.value),
        "status": result.status.value,
        "residual": ext_real_json(result.residual_estimate),
        "passed": bool(passed)
    }


def suite_power_consistency(cfg, seed, trials, N):
    reports = []

    for kind in PRINCIPAL_OPS:
        for cone in Cone:
            for alpha in _CONSISTENCY_ALPHAS:
                try:
                    report = _consistency_case(kind, cone, alpha, cfg)
                except UnsupportedError as ex:
                    _logger.debug("Skipping %s on %s: %s", kind, cone, ex.reason)
                    continue

                if report is not None:
                    reports.append(report)

    return reports


def suite_oracle(cfg, seed, trials, N):
    rng = numpy.random.default_rng(seed)
    reports = []

    for kind in PRINCIPAL_OPS:
        for cone in Cone:
            for idx in range(_ORACLE_PAIRS):
                u = random_list_weight(rng)
                v = random_list_weight(rng)

                try:
                    report = verify(kind, u, v, cone, cfg, trials, seed + idx, N=N)
                except UnsupportedError as ex:
                    _logger.debug("Skipping %s on %s: %s", kind, cone, ex.reason)
                    break

                doc = {key: ext_real_json(val) if isinstance(val, float) else val
                       for key, val in report._asdict().items()}

                doc.update({
                    "suite": VerifySuite.ORACLE.value,
                    "case": "{} {} pair={}".format(OP_CLI_NAMES[kind], CONE_CLI_NAMES[cone], idx)
                })

                reports.append(doc)

    return reports


def suite_monotonicity(cfg, seed, trials, N):
    reports = []

    for fact, alphas in _MONOTONE_ALPHAS.items():
        for alpha in alphas:
            reports.append({
                "suite": VerifySuite.MONOTONICITY.value,
                "case": "{} alpha={}".format(fact.value, alpha),
                "n": _MONOTONE_ROWS,
                "passed": check_monotone(fact, alpha, _MONOTONE_ROWS)
            })

    return reports


def suite_witness(cfg, seed, trials, N):
    rng = numpy.random.default_rng(seed)
    reports = []

    for idx in range(_WITNESS_PAIRS):
        u = random_list_weight(rng)
        v = random_list_weight(rng)

        for direction in Direction:
            for cone in (Cone.ALL, Cone.NONNEG):
                query = TwoOpQuery(direction=direction, cone=cone, u=u, v=v, cfg=cfg)
                result = best_constant(query)
                n_star = result.n_star or 1
                ratio = witness_ratio(direction, cone, u, v, n_star)
                slack = _WITNESS_RTOL * abs(result.value)

                reports.append({
                    "suite": VerifySuite.WITNESS.value,
                    "case": "{} {} pair={}".format(
                        DIRECTION_CLI_NAMES[direction], CONE_CLI_NAMES[cone], idx),
                    "constant": ext_real_json(result.value),
                    "witness_ratio": ext_real_json(ratio),
                    "n_star": n_star,
                    "passed": bool(abs(result.value - ratio) <= slack)
                })

    return reports


SUITES = {
    VerifySuite.IDENTITIES: suite_identities,
    VerifySuite.POWER_CONSISTENCY: suite_power_consistency,
    VerifySuite.ORACLE: suite_oracle,
    VerifySuite.MONOTONICITY: suite_monotonicity,
    VerifySuite.WITNESS: suite_witness
}

assert set(SUITES.keys()) == set(VerifySuite) - {VerifySuite.ALL}


def run_suites(suite, cfg, seed, trials, N):
    suite = VerifySuite(suite)
    names = list(SUITES.keys()) if suite is VerifySuite.ALL else [suite]
    reports = []

    for name in names:
        found = SUITES[name](cfg, seed, trials, N)
        failed = sum(1 for item in found if not item["passed"])
        _logger.info("Suite %s: %s checks, %s failed", name.value, len(found), failed)
        reports.extend(found)

    return reports


def cmd_verify(conf, suite, seed, trials, n, n_max):
    cfg = trunc_config(conf, n_max=n_max)
    reports = run_suites(suite, cfg, seed, trials, n)

    click.echo(json.dumps(reports, sort_keys=True, indent=2))

    failed = [item["case"] for item in reports if not item["passed"]]

    if failed:
        raise VerificationError("Failed checks: {}".format(failed))
