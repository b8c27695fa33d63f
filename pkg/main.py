import sys

import click
import sentry_sdk

from commands.common import Settings
from commands.reach import reach, solve
from commands.search import optimal, verify, witness
from commands.transform import collapse, reduce, smooth
from constants import default_threads, is_dev, sentry_dsn
from utils.errors import RubblingError
from utils.logger import logger


@click.group()
@click.option("--json", "json_output", is_flag=True, help="Machine-readable output on stdout.")
@click.option("--cache", "cache_path", default=None, help="Results cache file for search values.")
@click.option("--threads", type=int, default=default_threads, show_default=True, help="Worker processes for search.")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr.")
@click.pass_context
def cli(ctx, json_output, cache_path, threads, verbose):
    """Exact rubbling solver and verification toolkit."""
    if verbose:
        logger.set_level("DEBUG")
    if threads < 1:
        raise click.BadParameter("must be at least 1", param_hint="--threads")
    ctx.obj = Settings(json_output=json_output, cache_path=cache_path, threads=threads)


# Add commands to cli
cli.add_command(reach)
cli.add_command(solve)
cli.add_command(optimal)
cli.add_command(verify)
cli.add_command(witness)
cli.add_command(reduce)
cli.add_command(collapse)
cli.add_command(smooth)


def run(argv=None) -> int:
    """Entry point returning the exit code: 0 ok, 1 usage or input error, 2 verification mismatch."""
    if not is_dev and sentry_dsn:
        sentry_sdk.init(dsn=sentry_dsn, traces_sample_rate=0.0, debug=False)
    try:
        result = cli.main(args=argv, prog_name="rubbling", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as e:
        e.show()
        return 1
    except RubblingError as e:
        click.echo(f"error: {e}", err=True)
        return 1
    except Exception as e:
        sentry_sdk.capture_exception(e)
        logger.error(f"unexpected failure: {e!r}")
        raise
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(run())
