"""Result files and the terminal summary.

JSON is written with sorted keys and no timestamps, so the same
configuration and seed always produce the same bytes.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
from rich.console import Console
from rich.table import Table

from loolsim import __version__
from loolsim.cli.commands import CommandResult
from loolsim.cli.config import RunConfig
from loolsim.utils.errors import OutputPathError

logger = logging.getLogger(__name__)


def _jsonable(value: Any) -> Any:
    """json.dump fallback for numpy scalars and arrays."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def build_document(result: CommandResult, config: RunConfig) -> Dict[str, Any]:
    """Result body with a metadata block describing the run."""
    metadata = dict(config.metadata)
    metadata.update(
        {
            "command": config.command,
            "parameters": config.describe(),
            "seed": config.seed,
            "version": __version__,
        }
    )
    return {"metadata": metadata, "result": result.document, "summary": result.summary}


def _prepare(path: Path) -> Path:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_json(path: Path, document: Dict[str, Any]) -> Path:
    """Write a document as sorted-key JSON."""
    path = _prepare(path)
    with open(path, "w") as f:
        json.dump(document, f, indent=2, sort_keys=True, default=_jsonable)
        f.write("\n")
    return path


def write_csv(path: Path, result: CommandResult) -> Path:
    """Write the result's header row and data rows."""
    path = _prepare(path)
    header, rows = result.csv
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_result(result: CommandResult, config: RunConfig) -> Path:
    """Write the result in the configured format to the configured path.

    Raises:
        OutputPathError: If the file or its directory cannot be created
    """
    try:
        if config.output_format == "csv":
            path = write_csv(config.output_path, result)
        else:
            path = write_json(config.output_path, build_document(result, config))
    except OSError as e:
        raise OutputPathError(f"Cannot write {config.output_path}: {e}") from e
    logger.debug(f"{config.command} output written to {path}")
    return path


def _format(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return f"{value:.6g}"
    return str(value)


def summary_table(result: CommandResult) -> Table:
    """Two-column table of the result's scalar summary."""
    table = Table(title=f"loolsim {result.command}")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", justify="right")
    for name, value in result.summary.items():
        table.add_row(name, _format(value))
    return table


def vector_table(title: str, modes, values: np.ndarray) -> Table:
    """Complex amplitudes per mode."""
    table = Table(title=title)
    table.add_column("Mode", style="cyan")
    table.add_column("Re", justify="right")
    table.add_column("Im", justify="right")
    for mode, value in zip(modes, values):
        table.add_row(mode, f"{value.real:+.6f}", f"{value.imag:+.6f}")
    return table


def print_summary(result: CommandResult, console: Optional[Console] = None):
    """Print the summary table and any named vectors."""
    console = console or Console()
    console.print(summary_table(result))
    for title, (modes, values) in result.vectors.items():
        console.print(vector_table(title, modes, values))
