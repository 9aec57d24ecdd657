"""Run one configured command end to end."""

import traceback
from typing import Optional

from rich.console import Console

from loolsim.cli.config import RunConfig
from loolsim.cli.output import print_summary, write_result
from loolsim.cli.router import CommandRouter
from loolsim.utils.constants import EXIT_CONFIG_ERROR, EXIT_NUMERICAL_ERROR, EXIT_OK
from loolsim.utils.errors import ConfigError, LoolsimError, describe
from loolsim.utils.logger import get_logger


def exit_code_for(error: LoolsimError) -> int:
    """2 for configuration problems, 3 for numerical-domain errors."""
    return EXIT_CONFIG_ERROR if isinstance(error, ConfigError) else EXIT_NUMERICAL_ERROR


def run(
    config: RunConfig,
    router: Optional[CommandRouter] = None,
    console: Optional[Console] = None,
    debug: bool = False,
) -> int:
    """Dispatch, write the output file and print the summary.

    Args:
        config: Validated run configuration
        router: Command router (a default one when None)
        console: Rich console for the summary table
        debug: Print tracebacks for failures

    Returns:
        Process exit status
    """
    log = get_logger()
    log.log_command(config.command, config.describe())
    router = router or CommandRouter()
    try:
        with log.timed(config.command):
            result = router.dispatch(config)
        path = write_result(result, config)
    except LoolsimError as e:
        log.error(describe(e, f"{config.command} failed"))
        if debug:
            traceback.print_exc()
        return exit_code_for(e)

    for name, value in result.summary.items():
        log.log_result(name, value)
    log.log_output(str(path), config.output_format)
    print_summary(result, console)
    return EXIT_OK
