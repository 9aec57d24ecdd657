"""Bosonic creation-operator algebra over labeled modes."""

from loolsim.fock.evolution import (
    amplitude_table,
    apply_mode_unitary,
    lift_state,
    substitute_modes,
    two_photon_lift,
)
from loolsim.fock.modes import BasisTag, ModeIndex, Path
from loolsim.fock.state import (
    OccupationTerm,
    PhotonState,
    inner_product,
    is_coincidence,
    make_two_photon_input,
    post_select_coincidence,
    superpose,
)
from loolsim.fock.unitary import ModeUnitary

__all__ = [
    "BasisTag",
    "ModeIndex",
    "ModeUnitary",
    "OccupationTerm",
    "Path",
    "PhotonState",
    "amplitude_table",
    "apply_mode_unitary",
    "inner_product",
    "is_coincidence",
    "lift_state",
    "make_two_photon_input",
    "post_select_coincidence",
    "substitute_modes",
    "superpose",
    "two_photon_lift",
]
