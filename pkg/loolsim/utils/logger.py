"""Logging for the L00L simulator.

Library modules log through ``logging.getLogger(__name__)``; all of them sit
under the ``loolsim`` logger, which this wrapper configures once. Records go
to stderr so that stdout stays free for the summary tables.
"""

import logging
import sys
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional

LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"
DATE_FORMAT = "%H:%M:%S"


def _render(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return repr(value) if isinstance(value, str) else str(value)


class SimulatorLogger:
    """Wrapper around the package logger with helpers for command runs.

    Unknown attributes (``info``, ``debug``, ``isEnabledFor``...) are
    forwarded to the wrapped ``logging.Logger``.
    """

    def __init__(self, name: str = "loolsim", level: int = logging.INFO):
        """Initialize the logger.

        Args:
            name: Logger name
            level: Logging level (default: INFO)
        """
        self.logger = logging.getLogger(name)
        self.logger.setLevel(level)

        if not self.logger.handlers:
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
            self.logger.addHandler(handler)
            self.logger.propagate = False

    def __getattr__(self, attribute: str) -> Any:
        if attribute == "logger":
            raise AttributeError(attribute)
        return getattr(self.logger, attribute)

    def set_level(self, level: int):
        """Change the level for this logger and every module logger below it."""
        self.logger.setLevel(level)

    def log_command(self, command: str, parameters: Dict[str, Any]):
        """Log a command with its resolved parameters, sorted by name."""
        rendered = ", ".join(f"{key}={_render(parameters[key])}" for key in sorted(parameters))
        self.logger.info(f"{command}: {rendered}")

    def log_result(self, name: str, value: Any):
        self.logger.info(f"  {name} = {_render(value)}")

    def log_output(self, path: str, fmt: str):
        self.logger.info(f"Wrote {fmt.upper()} to {path}")

    @contextmanager
    def timed(self, label: str) -> Iterator[None]:
        """Log the wall time of a block at DEBUG level."""
        start = time.perf_counter()
        try:
            yield
        finally:
            self.logger.debug(f"{label} took {time.perf_counter() - start:.3f} s")


_default_logger: Optional[SimulatorLogger] = None


def get_logger(name: str = "loolsim") -> SimulatorLogger:
    """Return the shared SimulatorLogger, creating it on first use."""
    global _default_logger
    if _default_logger is None:
        _default_logger = SimulatorLogger(name)
    return _default_logger
