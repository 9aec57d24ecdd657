"""Basic tests for the L00L simulator."""

import logging

import pytest

from loolsim import __version__


def test_version():
    """Test that version is defined."""
    assert __version__ == "0.1.0"


def test_import_physics_packages():
    """Test that the physics packages can be imported."""
    from loolsim import fock, measurement, optics, spectral, tomography

    assert fock is not None
    assert optics is not None
    assert spectral is not None
    assert measurement is not None
    assert tomography is not None


def test_import_utils_modules():
    """Test that utils modules can be imported."""
    from loolsim.utils import constants, errors, logger

    assert logger is not None
    assert constants is not None
    assert errors is not None


def test_constants():
    """Test that constants are defined correctly."""
    from loolsim.utils.constants import (
        BASELINE_FRACTION,
        COINCIDENCE_WINDOW_S,
        DEFAULT_OAM,
        DEFAULT_RADIAL,
        DEFAULT_REFLECTIVITY,
        EXIT_CONFIG_ERROR,
        EXIT_NUMERICAL_ERROR,
        SEED_ENV_VAR,
    )

    assert DEFAULT_OAM == 3
    assert DEFAULT_RADIAL == 1
    assert DEFAULT_REFLECTIVITY == 0.5
    assert COINCIDENCE_WINDOW_S == pytest.approx(0.2e-9)
    assert BASELINE_FRACTION == pytest.approx(0.1)
    assert (EXIT_CONFIG_ERROR, EXIT_NUMERICAL_ERROR) == (2, 3)
    assert SEED_ENV_VAR == "LOOLSIM_SEED"


def test_error_hierarchy():
    """Test that library errors share one base and stay ValueErrors."""
    from loolsim.utils.errors import (
        ConfigError,
        LoolsimError,
        NumericalDomainError,
        RankDeficientError,
        describe,
    )

    assert issubclass(RankDeficientError, NumericalDomainError)
    assert issubclass(ConfigError, LoolsimError)
    assert issubclass(NumericalDomainError, ValueError)
    assert describe(ConfigError("bad key"), "load") == "load: ConfigError: bad key"


def test_logger_creation():
    """Test that logger can be created."""
    from loolsim.utils.logger import get_logger

    logger = get_logger()
    assert logger is not None
    assert hasattr(logger, "info")
    assert hasattr(logger, "debug")
    assert hasattr(logger, "error")
    assert get_logger() is logger


def test_logger_level():
    """Test changing the logging level."""
    from loolsim.utils.logger import SimulatorLogger

    log = SimulatorLogger("loolsim.test")
    log.set_level(logging.DEBUG)
    assert log.logger.level == logging.DEBUG
    log.log_command("eraser", {"l": 3, "sigma": 1.0})
    log.log_result("fidelity", 0.99)


def test_logger_forwards_and_times():
    """Test attribute forwarding and the timing block."""
    from loolsim.utils.logger import SimulatorLogger

    log = SimulatorLogger("loolsim.test.timed")
    assert log.isEnabledFor(logging.INFO)
    assert log.name == "loolsim.test.timed"
    with log.timed("block"):
        value = sum(range(10))
    assert value == 45
