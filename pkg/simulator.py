#!/usr/bin/env python3
"""L00L / p00p Entanglement Simulator - Main Entry Point.

This script runs one of the simulator's experiments and writes its
results as JSON or CSV:
- hom-scan: HOM coincidence curve versus delay
- eraser: symmetric/antisymmetric eraser curves
- witness: MUB fidelity witness from simulated coincidences
- tomo: linear-inversion tomography with projection
- schmidt: Schmidt decomposition of a double-Gaussian JSA
- lift: single- and two-photon action of the beamsplitter and SLM

Usage:
    python simulator.py <command> [options]

Exit status is 0 on success, 2 for configuration errors and 3 for
numerical-domain errors.
"""

import argparse
import logging
import sys
import traceback
from typing import Any, Dict, List, Optional, Tuple

from loolsim.cli.config import (
    BASES,
    COMMAND_PARAMETERS,
    COMMANDS,
    FORMATS,
    PROFILES,
    STATES,
    RunConfig,
)
from loolsim.cli.runner import exit_code_for, run
from loolsim.utils.errors import LoolsimError, describe
from loolsim.utils.logger import get_logger

# parameter key -> (flag, argparse keyword arguments)
FLAGS: Dict[str, Tuple[str, Dict[str, Any]]] = {
    "basis": ("--basis", {"choices": BASES, "help": "Subspace family (default: azimuthal)"}),
    "l": ("--l", {"type": int, "help": "Azimuthal index of the subspace (default: 3)"}),
    "p": ("--p", {"type": int, "help": "Radial index of the subspace (default: 1)"}),
    "theta": ("--theta", {"type": float, "help": "SLM mixing angle in radians"}),
    "r": ("--r", {"type": float, "help": "Beamsplitter reflectivity (default: 0.5)"}),
    "profile": ("--profile", {"choices": PROFILES, "help": "Single-photon spectrum"}),
    "sigma": ("--sigma", {"type": float, "help": "Gaussian bandwidth in rad/s"}),
    "width": ("--width", {"type": float, "help": "Sinc half-width A in seconds"}),
    "tau_min": ("--tau-min", {"type": float, "help": "Lowest delay in seconds"}),
    "tau_max": ("--tau-max", {"type": float, "help": "Highest delay in seconds"}),
    "points": ("--points", {"type": int, "help": "Number of delay samples"}),
    "counts": ("--counts", {"type": int, "help": "Mean heralded pairs per setting"}),
    "seed": ("--seed", {"type": int, "help": "Random seed (fallback: LOOLSIM_SEED)"}),
    "eta": ("--eta", {"type": float, "help": "Spatial mode overlap / plate efficiency"}),
    "state": ("--state", {"choices": STATES, "help": "Two-qubit state to measure"}),
    "bootstrap": ("--bootstrap", {"type": int, "help": "Bootstrap resamples (0 disables)"}),
    "background": ("--background", {"type": float, "help": "Accidentals per setting"}),
    "weighted": ("--weighted", {"action": "store_true", "help": "Poisson-weighted inversion"}),
    "sigma_plus": ("--sigma-plus", {"type": float, "help": "Pump envelope width"}),
    "sigma_minus": ("--sigma-minus", {"type": float, "help": "Phase-matching width"}),
    "grid_points": ("--grid-points", {"type": int, "help": "JSA grid size"}),
    "half_width": ("--half-width", {"type": float, "help": "JSA grid half-width"}),
    "rank": ("--rank", {"type": int, "help": "Schmidt terms kept (default: all)"}),
    "out": ("--out", {"type": str, "help": "Output path (default: results/<command>.<format>)"}),
    "format": ("--format", {"choices": FORMATS, "help": "Output format (default: json)"}),
}

HELP = {
    "hom-scan": "HOM coincidence probability versus delay",
    "eraser": "Quantum-eraser projector curves versus delay",
    "witness": "MUB fidelity witness from simulated counts",
    "tomo": "Two-qubit tomography from simulated counts",
    "schmidt": "Schmidt decomposition of a double-Gaussian JSA",
    "lift": "Beamsplitter + SLM action on a_l1 and b_l2",
}


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Returns:
        Parsed arguments
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="JSON or YAML parameter file")
    common.add_argument("--debug", action="store_true", help="Enable debug logging")

    parser = argparse.ArgumentParser(
        description="L00L / p00p Entanglement Simulator",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python simulator.py eraser --l 3 --profile gauss --sigma 1.0
  python simulator.py witness --state ideal --counts 100000 --seed 7
  python simulator.py tomo --state crosstalk --eta 0.9 --format csv
  python simulator.py lift --theta 0.7854 --r 0.5

For more information, see the README.md file.
        """,
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    for command in COMMANDS:
        sub = subparsers.add_parser(command, parents=[common], help=HELP[command])
        for key in COMMAND_PARAMETERS[command]:
            flag, options = FLAGS[key]
            sub.add_argument(flag, dest=key, default=None, **options)

    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the simulator."""
    args = parse_arguments(argv)

    # Configure logging
    logger = get_logger()
    logger.set_level(logging.DEBUG if args.debug else logging.INFO)

    overrides = {key: getattr(args, key) for key in COMMAND_PARAMETERS[args.command]}
    try:
        config = RunConfig.from_sources(args.command, args.config, overrides)
    except LoolsimError as e:
        logger.error(describe(e, "Invalid configuration"))
        if args.debug:
            traceback.print_exc()
        return exit_code_for(e)

    return run(config, debug=args.debug)


if __name__ == "__main__":
    sys.exit(main())
