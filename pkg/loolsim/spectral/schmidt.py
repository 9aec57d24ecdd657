"""Schmidt decomposition of sampled joint spectral amplitudes."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from loolsim.spectral.models import JointSpectralAmplitude, SpectralModel, trapezoid_weights
from loolsim.utils.constants import IMAGINARY_RESIDUE_TOL, SCHMIDT_TRUNCATION_WARN
from loolsim.utils.errors import NumericalDomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """f(w1, w2) ~ sum_k u_k phi_k(w1) chi_k(w2).

    ``first_modes[:, k]`` and ``second_modes[:, k]`` hold phi_k and chi_k on
    ``omega``; both families are orthonormal under the trapezoid weights.
    Coefficients are rescaled so that the kept u_k^2 sum to one.
    """

    omega: np.ndarray
    coefficients: np.ndarray
    first_modes: np.ndarray
    second_modes: np.ndarray
    truncation_weight: float

    @property
    def rank(self) -> int:
        return int(self.coefficients.size)

    @property
    def schmidt_number(self) -> float:
        """K = 1 / sum u_k^4; 1 for a product state."""
        return float(1.0 / np.sum(self.coefficients**4))

    @property
    def mode_pairs(self) -> List[Tuple[SpectralModel, SpectralModel]]:
        """(phi_k, chi_k) as Grid spectral models."""
        return [
            (
                SpectralModel.grid(self.omega, self.first_modes[:, k]),
                SpectralModel.grid(self.omega, self.second_modes[:, k]),
            )
            for k in range(self.rank)
        ]

    def reconstruct(self) -> JointSpectralAmplitude:
        """Rebuild the sampled JSA from the kept terms."""
        grid = (self.first_modes * self.coefficients) @ self.second_modes.T
        return JointSpectralAmplitude(self.omega, grid)


def schmidt_decompose(
    jsa: JointSpectralAmplitude, rank_cutoff: Optional[int] = None
) -> SchmidtDecomposition:
    """Singular value decomposition of the weighted JSA matrix.

    The SVD acts on W^(1/2) F W^(1/2) with W the trapezoid weights, so the
    singular values are Schmidt coefficients of the continuous amplitude and
    the singular vectors map back to trapezoid-orthonormal mode functions.

    Args:
        jsa: Normalized joint spectral amplitude
        rank_cutoff: Number of terms kept (all when None)

    Returns:
        SchmidtDecomposition with descending coefficients
    """
    jsa.require_normalized()
    root = np.sqrt(jsa.weights)
    u, s, vh = np.linalg.svd(root[:, None] * jsa.amplitudes * root[None, :])

    keep = s.size if rank_cutoff is None else max(1, min(int(rank_cutoff), s.size))
    kept = s[:keep]
    total = float(np.sum(s**2))
    truncation = float(np.sum(s[keep:] ** 2) / total)
    if truncation > SCHMIDT_TRUNCATION_WARN:
        logger.warning(f"Schmidt rank cut at {keep} discards weight {truncation:.3e}")
    elif truncation > 0:
        logger.debug(f"Schmidt rank cut at {keep}, discarded weight {truncation:.3e}")

    first = u[:, :keep] / root[:, None]
    second = vh[:keep, :].T / root[:, None]
    return SchmidtDecomposition(
        omega=jsa.omega,
        coefficients=kept / np.sqrt(np.sum(kept**2)),
        first_modes=first,
        second_modes=second,
        truncation_weight=truncation,
    )


def coincidence_prob_schmidt(decomposition: SchmidtDecomposition, tau: float) -> float:
    """Coincidence probability from the Schmidt-sum form.

    1/2 - 1/2 sum_{k,k'} u_k u_k' A_kk' B_kk' with
    A_kk' = integral conj(phi_k) chi_k' exp(-i w tau) and
    B_kk' = integral conj(chi_k) phi_k' exp(i w tau).
    """
    omega = decomposition.omega
    weights = trapezoid_weights(omega)
    phase = np.exp(1j * omega * tau)
    phi, chi = decomposition.first_modes, decomposition.second_modes
    a = phi.conj().T @ ((weights * np.conj(phase))[:, None] * chi)
    b = chi.conj().T @ ((weights * phase)[:, None] * phi)
    u = decomposition.coefficients
    overlap = complex(u @ (a * b) @ u)
    if abs(overlap.imag) > IMAGINARY_RESIDUE_TOL:
        raise NumericalDomainError(f"Schmidt overlap has imaginary residue {overlap.imag:.3e}")
    return float(0.5 - 0.5 * overlap.real)
