"""Temporal-spectral distinguishability of photon pairs.

Coincidence probabilities versus path delay for separable and entangled
pairs, their closed forms, and Schmidt decompositions of joint spectra.
"""

from loolsim.spectral.coincidence import (
    coincidence_prob_entangled,
    coincidence_prob_gauss,
    coincidence_prob_separable,
    coincidence_prob_sinc,
    spectral_overlap,
)
from loolsim.spectral.models import JointSpectralAmplitude, SpectralKind, SpectralModel
from loolsim.spectral.scan import (
    HomScanResult,
    InterferenceSource,
    Visibility,
    hom_scan,
    tau_grid,
    two_photon_coherence,
    visibility,
)
from loolsim.spectral.schmidt import (
    SchmidtDecomposition,
    coincidence_prob_schmidt,
    schmidt_decompose,
)

__all__ = [
    "HomScanResult",
    "InterferenceSource",
    "JointSpectralAmplitude",
    "SchmidtDecomposition",
    "SpectralKind",
    "SpectralModel",
    "Visibility",
    "coincidence_prob_entangled",
    "coincidence_prob_gauss",
    "coincidence_prob_schmidt",
    "coincidence_prob_separable",
    "coincidence_prob_sinc",
    "hom_scan",
    "schmidt_decompose",
    "spectral_overlap",
    "tau_grid",
    "two_photon_coherence",
    "visibility",
]
