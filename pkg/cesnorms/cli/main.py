import functools
import logging
import sys

import click
import coloredlogs

import cesnorms.cli.norm
import cesnorms.cli.table
import cesnorms.cli.verify
import cesnorms.config
from cesnorms.enums import (CONE_CLI_NAMES, DIRECTION_CLI_NAMES, OP_CLI_NAMES,
                            PowerTheorem, VerifySuite)
from cesnorms.utils import UnsupportedError, VerificationError

_COMMAND_KWARGS = {
    "context_settings": {
        "show_default": True
    }
}

_EXIT_ERROR = 1
_EXIT_UNSUPPORTED = 2
_EXIT_VERIFICATION = 3

_logger = logging.getLogger(__name__)


def _catch(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except UnsupportedError as ex:
            _logger.error("Unsupported: %s", ex.reason)
            sys.exit(_EXIT_UNSUPPORTED)
        except VerificationError as ex:
            _logger.error("Verification failed: %s", ex)
            sys.exit(_EXIT_VERIFICATION)
        except Exception:
            _logger.error("CLI error", exc_info=True)
            sys.exit(_EXIT_ERROR)

    return wrapper


def _trunc_options(func):
    func = click.option("--workers", type=int, default=None)(func)
    func = click.option("--divergence-threshold", type=float, default=None)(func)
    func = click.option("--tol", type=float, default=None)(func)
    func = click.option("--n-max", type=int, default=None)(func)
    return func


@click.group()
@click.option("--log-level", default="INFO")
@click.option("--quiet", is_flag=True)
@click.option("--root-logger", is_flag=True)
@click.pass_context
def cli(ctx, log_level, quiet, root_logger):
    """Operator norms of the Cesàro and Copson operators on weighted sup-norm spaces."""

    logging.getLogger().addHandler(logging.NullHandler())

    if not quiet:
        pkg_name = __name__.split(".")[0]
        cli_logger_name = None if root_logger else pkg_name
        cli_logger = logging.getLogger(cli_logger_name)
        coloredlogs.install(level=log_level, logger=cli_logger, stream=sys.stderr)

    cesnorms.config.log_config()
    ctx.obj = cesnorms.config.get_env_config()


@cli.command(**_COMMAND_KWARGS)
@click.option("--op", required=True, type=click.Choice(sorted(OP_CLI_NAMES.values())))
@click.option("--cone", required=True, type=click.Choice(list(CONE_CLI_NAMES.values())))
@click.option("--u", type=str, default=None)
@click.option("--v", type=str, default=None)
@click.option("--generic", is_flag=True)
@click.option("--negate", is_flag=True)
@_trunc_options
@click.pass_obj
@_catch
def norm(conf, **kwargs):
    """Norm of an operator between the weighted spaces given by --u and --v.
    Weights are power:<alpha>, powerpair:<alpha>, list:<path> or json:<path>.
    Matched power pairs are answered from the closed-form tables."""

    cesnorms.cli.norm.cmd_norm(conf, **kwargs)


@cli.command(name="two-op", **_COMMAND_KWARGS)
@click.option("--dir", "direction", required=True, type=click.Choice(list(DIRECTION_CLI_NAMES.values())))
@click.option("--cone", required=True, type=click.Choice(["all", "nonneg"]))
@click.option("--u", type=str, default=None)
@click.option("--v", type=str, default=None)
@_trunc_options
@click.pass_obj
@_catch
def two_op(conf, **kwargs):
    """Best constant A in ||Cx|| <= A ||C*x|| (c-le-cstar) or ||C*x|| <= A ||Cx|| (cstar-le-c)."""

    cesnorms.cli.norm.cmd_two_op(conf, **kwargs)


@cli.command(name="power-table", **_COMMAND_KWARGS)
@click.option("--theorem", required=True, type=click.Choice([item.value for item in PowerTheorem]))
@click.option("--from", "alpha_from", required=True, type=float)
@click.option("--to", "alpha_to", required=True, type=float)
@click.option("--step", type=float, default=0.1)
@click.pass_obj
@_catch
def power_table(conf, **kwargs):
    """CSV sweep of a closed-form table over a range of exponents."""

    cesnorms.cli.table.cmd_power_table(conf, **kwargs)


@cli.command(**_COMMAND_KWARGS)
@click.option("--suite", type=click.Choice([item.value for item in VerifySuite]), default=VerifySuite.ALL.value)
@click.option("--seed", type=int, default=42)
@click.option("--trials", type=int, default=500)
@click.option("--n", type=int, default=50)
@click.option("--n-max", type=int, default=10 ** 5)
@click.pass_obj
@_catch
def verify(conf, **kwargs):
    """Cross-checks the formulas against the closed forms, the extremal and
    random oracles, the operator identities and the two-operator witnesses."""

    cesnorms.cli.verify.cmd_verify(conf, **kwargs)


def main():
    try:
        cli.main(standalone_mode=False)
    except click.ClickException as ex:
        ex.show()
        sys.exit(_EXIT_ERROR)
    except click.Abort:
        click.echo("Aborted!", err=True)
        sys.exit(_EXIT_ERROR)
