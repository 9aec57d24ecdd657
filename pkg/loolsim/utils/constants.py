"""Constants for the L00L simulator.

This module defines numerical tolerances, experiment defaults and the
identifiers shared by the library and the command-line front end.
"""

# Numerical tolerances
UNITARITY_TOL = 1e-10
NORMALIZATION_TOL = 1e-12
AMPLITUDE_CUTOFF = 1e-14  # merged amplitudes below this are dropped
SPECTRAL_NORM_TOL = 1e-8
JSA_NORM_TOL = 1e-6
DENSITY_TOL = 1e-10
IMAGINARY_RESIDUE_TOL = 1e-9
KET_MATCH_TOL = 1e-9
# Discarded Schmidt weight worth a warning
SCHMIDT_TRUNCATION_WARN = 1e-6

# Quadrature
DEFAULT_QUADRATURE_POINTS = 1024
DEFAULT_QUADRATURE_WIDTHS = 8.0  # window is mean +/- widths * sigma

# Experiment defaults
DEFAULT_OAM = 3
DEFAULT_RADIAL = 1
DEFAULT_REFLECTIVITY = 0.5
DEFAULT_SIGMA = 1.0  # rad/s
DEFAULT_SINC_WIDTH = 1.0  # s
COINCIDENCE_WINDOW_S = 0.2e-9  # informational only

# Statistics
BOOTSTRAP_RESAMPLES = 1000
BOOTSTRAP_STREAM = 1  # keeps resampling streams apart from count simulation
BASELINE_FRACTION = 0.10  # outermost share of a scan used as baseline

# Command-line surface
SEED_ENV_VAR = "LOOLSIM_SEED"
EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_ERROR = 3
