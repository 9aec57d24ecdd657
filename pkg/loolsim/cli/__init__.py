"""Command-line front end.

Wires the library into the hom-scan, eraser, witness, tomo, schmidt and
lift experiments and writes machine-readable results.
"""

from loolsim.cli.commands import CommandResult, ExperimentCommands
from loolsim.cli.config import COMMANDS, RunConfig, load_defaults
from loolsim.cli.output import print_summary, summary_table, write_result
from loolsim.cli.router import CommandRouter
from loolsim.cli.runner import exit_code_for, run

__all__ = [
    "COMMANDS",
    "CommandResult",
    "CommandRouter",
    "ExperimentCommands",
    "RunConfig",
    "exit_code_for",
    "load_defaults",
    "print_summary",
    "run",
    "summary_table",
    "write_result",
]
