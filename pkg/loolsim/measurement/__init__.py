"""Projective measurements on the two-mode subspace.

Eraser projectors, MUB settings, density matrices of heralded pairs,
Poisson coincidence counts and the MUB fidelity witness.
"""

from loolsim.measurement.bootstrap import BootstrapResult, poisson_bootstrap
from loolsim.measurement.counts import (
    CSV_COLUMNS,
    CoincidenceRecord,
    born_probability,
    expected_records,
    records_from_json,
    records_to_csv_rows,
    records_to_json,
    simulate_counts,
)
from loolsim.measurement.density import (
    DensityMatrix,
    chi_density,
    chi_ket,
    classically_correlated,
    crosstalk_state,
    dephased_chi,
    reduce_to_subspace,
    white_noise,
)
from loolsim.measurement.eraser import (
    EraserScanResult,
    conditional_probability,
    eraser_expectation,
    eraser_scan,
)
from loolsim.measurement.kets import (
    Ket2,
    Subspace,
    TwoPartyProjector,
    antisymmetric_projector,
    bump_projector,
    local_states,
    mub_settings,
    symmetric_projector,
)
from loolsim.measurement.witness import WitnessResult, witness_fidelity, witness_settings

__all__ = [
    "BootstrapResult",
    "CSV_COLUMNS",
    "CoincidenceRecord",
    "DensityMatrix",
    "EraserScanResult",
    "Ket2",
    "Subspace",
    "TwoPartyProjector",
    "WitnessResult",
    "antisymmetric_projector",
    "born_probability",
    "bump_projector",
    "chi_density",
    "chi_ket",
    "classically_correlated",
    "conditional_probability",
    "crosstalk_state",
    "dephased_chi",
    "eraser_expectation",
    "eraser_scan",
    "expected_records",
    "local_states",
    "mub_settings",
    "poisson_bootstrap",
    "records_from_json",
    "records_to_csv_rows",
    "records_to_json",
    "reduce_to_subspace",
    "simulate_counts",
    "symmetric_projector",
    "white_noise",
    "witness_fidelity",
    "witness_settings",
]
