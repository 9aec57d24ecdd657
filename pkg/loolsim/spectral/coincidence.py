"""Coincidence probabilities behind a balanced beamsplitter versus path delay.

For separable photons the probability is 1/2 - |I(tau)|^2 / 2 with
I(tau) = integral conj(phi(w)) chi(w) exp(-i w tau) dw. For an entangled pair
it is 1/2 - 1/2 integral conj(f(w1, w2)) f(w2, w1) exp(i (w2 - w1) tau).
"""

import logging

import numpy as np

from loolsim.spectral.models import (
    JointSpectralAmplitude,
    SpectralKind,
    SpectralModel,
    quadrature_axis,
    time_overlap,
    trapezoid_weights,
)
from loolsim.utils.constants import DEFAULT_QUADRATURE_POINTS, IMAGINARY_RESIDUE_TOL
from loolsim.utils.errors import DimensionMismatchError, NumericalDomainError

logger = logging.getLogger(__name__)


def spectral_overlap(
    phi: SpectralModel,
    chi: SpectralModel,
    tau: float,
    points: int = DEFAULT_QUADRATURE_POINTS,
) -> complex:
    """Delayed spectral overlap I(tau).

    Grid inputs are integrated with trapezoid weights on the grid axis,
    pairs involving a sinc model in the time domain (flat-top envelopes with
    exact support), and Gaussian pairs on the union frequency window.
    """
    if phi.kind is SpectralKind.GRID or chi.kind is SpectralKind.GRID:
        if phi.kind is SpectralKind.GRID and chi.kind is SpectralKind.GRID:
            if phi.omega.shape != chi.omega.shape or not np.allclose(phi.omega, chi.omega):
                raise DimensionMismatchError("Grid spectral models must share one frequency axis")
        omega = phi.omega if phi.kind is SpectralKind.GRID else chi.omega
        weights = trapezoid_weights(omega)
        integrand = np.conj(phi(omega)) * chi(omega) * np.exp(-1j * omega * tau)
        return complex(np.sum(weights * integrand))

    if SpectralKind.SINC in (phi.kind, chi.kind):
        return time_overlap(phi, chi, tau)

    omega = quadrature_axis(phi, chi, points)
    weights = trapezoid_weights(omega)
    return complex(np.sum(weights * np.conj(phi(omega)) * chi(omega) * np.exp(-1j * omega * tau)))


def coincidence_prob_separable(
    phi: SpectralModel,
    chi: SpectralModel,
    tau: float,
    points: int = DEFAULT_QUADRATURE_POINTS,
) -> float:
    """Coincidence probability of two separable photons delayed by tau.

    Args:
        phi: Spectrum of the photon in path A
        chi: Spectrum of the photon in path B
        tau: Delay (s)
        points: Frequency quadrature points for Gaussian pairs

    Returns:
        Probability in [0, 1/2] up to quadrature error

    Raises:
        UnnormalizedModelError: If either model is not normalized
    """
    phi.require_normalized()
    chi.require_normalized()
    overlap = spectral_overlap(phi, chi, tau, points)
    return float(0.5 - 0.5 * abs(overlap) ** 2)


def coincidence_prob_gauss(
    sigma_a: float, sigma_b: float, mean_a: float, mean_b: float, tau
) -> np.ndarray:
    """Closed form for two Gaussian spectra.

    1/2 - sa sb / (sa^2 + sb^2) exp(-(sa^2 sb^2 tau^2 + (ma - mb)^2) / (sa^2 + sb^2)).
    Accepts a scalar or an array of delays.
    """
    if sigma_a <= 0 or sigma_b <= 0:
        raise NumericalDomainError(f"Gaussian widths must be positive, got {sigma_a}, {sigma_b}")
    tau = np.asarray(tau, dtype=float)
    total = sigma_a**2 + sigma_b**2
    exponent = -((sigma_a * sigma_b * tau) ** 2 + (mean_a - mean_b) ** 2) / total
    result = 0.5 - sigma_a * sigma_b / total * np.exp(exponent)
    return float(result) if result.ndim == 0 else result


def coincidence_prob_sinc(width: float, tau) -> np.ndarray:
    """Closed form for identical sinc spectra of temporal half-width A.

    1/2 - (|tau| - |tau/2 - A| - |tau/2 + A|)^2 / (8 A^2), a triangular dip
    that reaches 1/2 for |tau| >= 2A.
    """
    if width <= 0:
        raise NumericalDomainError(f"Sinc width must be positive, got A={width}")
    tau = np.asarray(tau, dtype=float)
    bracket = np.abs(tau) - np.abs(tau / 2 - width) - np.abs(tau / 2 + width)
    result = 0.5 - bracket**2 / (8 * width**2)
    return float(result) if result.ndim == 0 else result


def entangled_overlap(jsa: JointSpectralAmplitude, tau: float) -> complex:
    """Double sum of conj(f(w1, w2)) f(w2, w1) exp(i (w2 - w1) tau) with trapezoid weights."""
    w = jsa.weights
    phase = np.exp(1j * tau * jsa.omega)
    # exp(i (w_j - w_i) tau) = conj(phase_i) * phase_j
    left = w * np.conj(phase)
    right = w * phase
    integrand = np.conj(jsa.amplitudes) * jsa.amplitudes.T
    return complex(left @ integrand @ right)


def coincidence_prob_entangled(jsa: JointSpectralAmplitude, tau: float) -> float:
    """Coincidence probability of a photon pair described by a JSA.

    Raises:
        UnnormalizedModelError: If the JSA is not normalized
        NumericalDomainError: If the double sum has a non-negligible imaginary part
    """
    jsa.require_normalized()
    overlap = entangled_overlap(jsa, tau)
    if abs(overlap.imag) > IMAGINARY_RESIDUE_TOL:
        raise NumericalDomainError(f"Entangled overlap has imaginary residue {overlap.imag:.3e}")
    if overlap.imag:
        logger.debug(f"Truncating imaginary residue {overlap.imag:.3e} at tau={tau:g}")
    return float(0.5 - 0.5 * overlap.real)
