"""Optical elements: beamsplitters, mode mixers, mirrors and phase plates."""

from loolsim.fock.unitary import ModeUnitary
from loolsim.optics.elements import (
    ModeRelabeling,
    beamsplitter,
    beamsplitter_for_labels,
    compose,
    identity_relabeling,
    mirror,
    pair_paths,
    phase_plate,
    slm_after_beamsplitter,
    slm_mixer,
    vortex_plate,
)

__all__ = [
    "ModeRelabeling",
    "ModeUnitary",
    "beamsplitter",
    "beamsplitter_for_labels",
    "compose",
    "identity_relabeling",
    "mirror",
    "pair_paths",
    "phase_plate",
    "slm_after_beamsplitter",
    "slm_mixer",
    "vortex_plate",
]
