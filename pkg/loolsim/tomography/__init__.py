"""Density-matrix reconstruction from MUB coincidence records."""

from loolsim.tomography.inversion import (
    TomographySet,
    design_row,
    linear_inversion,
    standard_settings,
)
from loolsim.tomography.pipeline import (
    TomographyReport,
    bootstrap_fidelity,
    reconstruct,
    tomo_pipeline,
)
from loolsim.tomography.projection import fidelity, project_to_physical, project_to_simplex

__all__ = [
    "TomographyReport",
    "TomographySet",
    "bootstrap_fidelity",
    "design_row",
    "fidelity",
    "linear_inversion",
    "project_to_physical",
    "project_to_simplex",
    "reconstruct",
    "standard_settings",
    "tomo_pipeline",
]
