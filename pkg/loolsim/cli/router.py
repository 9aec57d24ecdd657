"""Routes a RunConfig to its command handler."""

import logging
from typing import Callable, Dict, Optional

from loolsim.cli.commands import CommandResult, ExperimentCommands
from loolsim.cli.config import RunConfig
from loolsim.utils.errors import ConfigError

logger = logging.getLogger(__name__)

Handler = Callable[[RunConfig], CommandResult]


class CommandRouter:
    """Routes commands to the experiment handlers."""

    def __init__(self, commands: Optional[ExperimentCommands] = None):
        """Initialize the router.

        Args:
            commands: Handler collection (a fresh ExperimentCommands by default)
        """
        self.commands = commands or ExperimentCommands()
        self.handlers: Dict[str, Handler] = {}
        self._register_experiment_handlers()

    def _register_experiment_handlers(self):
        """Register all experiment handlers."""
        self.register_handler("hom-scan", self.commands.handle_hom_scan)
        self.register_handler("eraser", self.commands.handle_eraser)
        self.register_handler("witness", self.commands.handle_witness)
        self.register_handler("tomo", self.commands.handle_tomo)
        self.register_handler("schmidt", self.commands.handle_schmidt)
        self.register_handler("lift", self.commands.handle_lift)

    def register_handler(self, command: str, handler: Handler):
        """Register a handler for a command.

        Args:
            command: Subcommand name
            handler: Callable taking a RunConfig
        """
        self.handlers[command] = handler
        logger.debug(f"Registered handler for command {command}")

    def dispatch(self, config: RunConfig) -> CommandResult:
        """Run the handler registered for ``config.command``.

        Raises:
            ConfigError: If no handler is registered for the command
        """
        handler = self.handlers.get(config.command)
        if handler is None:
            raise ConfigError(f"No handler registered for command {config.command}")
        logger.debug(f"Handling command {config.command}")
        return handler(config)
