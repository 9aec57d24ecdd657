"""Single-photon spectral amplitudes and joint spectral amplitudes.

Frequency amplitudes are normalized as integral |phi(w)|^2 dw = 1. Temporal
envelopes use phi~(t) = (2 pi)^(-1/2) integral phi(w) exp(-i w t) dw, which
keeps the same normalization in the time domain.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import integrate

from loolsim.utils.constants import (
    DEFAULT_QUADRATURE_POINTS,
    DEFAULT_QUADRATURE_WIDTHS,
    JSA_NORM_TOL,
    SPECTRAL_NORM_TOL,
)
from loolsim.utils.errors import (
    DimensionMismatchError,
    NumericalDomainError,
    UnnormalizedModelError,
)


class SpectralKind(Enum):
    """Functional form of a spectral amplitude."""

    GAUSSIAN = "gaussian"
    SINC = "sinc"
    GRID = "grid"


def trapezoid_weights(axis: np.ndarray) -> np.ndarray:
    """Composite trapezoid weights for a (possibly non-uniform) 1-D axis."""
    axis = np.asarray(axis, dtype=float)
    if axis.ndim != 1 or axis.size < 2:
        raise DimensionMismatchError("Quadrature axis needs at least two samples")
    steps = np.diff(axis)
    if np.any(steps <= 0):
        raise DimensionMismatchError("Quadrature axis must be strictly increasing")
    weights = np.zeros_like(axis)
    weights[:-1] += steps / 2.0
    weights[1:] += steps / 2.0
    return weights


@dataclass(frozen=True, eq=False)
class SpectralModel:
    """Normalized single-photon spectral amplitude phi(w).

    Gaussian: (pi sigma^2)^(-1/4) exp(-(w - mean)^2 / (2 sigma^2)).
    Sinc: sqrt(A / pi) sinc(A (w - mean)) with sinc(x) = sin(x) / x; its
    temporal envelope is a flat top of half-width A.
    Grid: sampled amplitudes on a strictly increasing frequency axis.
    """

    kind: SpectralKind
    sigma: float = 0.0
    mean: float = 0.0
    width: float = 0.0
    omega: Optional[np.ndarray] = None
    amplitudes: Optional[np.ndarray] = None

    @classmethod
    def gaussian(cls, sigma: float, mean: float = 0.0) -> "SpectralModel":
        """Gaussian amplitude of rms width sigma (rad/s) about mean."""
        if sigma <= 0:
            raise NumericalDomainError(f"Gaussian width must be positive, got sigma={sigma}")
        return cls(SpectralKind.GAUSSIAN, sigma=float(sigma), mean=float(mean))

    @classmethod
    def sinc(cls, width: float, mean: float = 0.0) -> "SpectralModel":
        """Sinc amplitude with temporal half-width A = width (s)."""
        if width <= 0:
            raise NumericalDomainError(f"Sinc width must be positive, got A={width}")
        return cls(SpectralKind.SINC, width=float(width), mean=float(mean))

    @classmethod
    def grid(cls, omega, amplitudes, normalize: bool = False) -> "SpectralModel":
        """Sampled amplitude.

        Args:
            omega: Frequency axis (rad/s), strictly increasing
            amplitudes: Complex samples on that axis
            normalize: Rescale to unit trapezoid norm
        """
        omega = np.asarray(omega, dtype=float)
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if omega.shape != amplitudes.shape:
            raise DimensionMismatchError(
                f"Grid axis {omega.shape} and amplitudes {amplitudes.shape} differ in shape"
            )
        if normalize:
            norm = np.sqrt(np.sum(trapezoid_weights(omega) * np.abs(amplitudes) ** 2))
            if norm == 0.0:
                raise UnnormalizedModelError("Cannot normalize an all-zero spectral grid")
            amplitudes = amplitudes / norm
        return cls(SpectralKind.GRID, omega=omega, amplitudes=amplitudes)

    def __call__(self, omega) -> np.ndarray:
        """Evaluate phi on frequencies (Grid models interpolate linearly)."""
        omega = np.asarray(omega, dtype=float)
        if self.kind is SpectralKind.GAUSSIAN:
            return (np.pi * self.sigma**2) ** -0.25 * np.exp(
                -((omega - self.mean) ** 2) / (2 * self.sigma**2)
            ).astype(complex)
        if self.kind is SpectralKind.SINC:
            # numpy's sinc is sin(pi x) / (pi x)
            envelope = np.sinc(self.width * (omega - self.mean) / np.pi)
            return np.sqrt(self.width / np.pi) * envelope.astype(complex)
        real = np.interp(omega, self.omega, self.amplitudes.real, left=0.0, right=0.0)
        imag = np.interp(omega, self.omega, self.amplitudes.imag, left=0.0, right=0.0)
        return real + 1j * imag

    def temporal(self, t) -> np.ndarray:
        """Closed-form temporal envelope (Gaussian and Sinc models)."""
        t = np.asarray(t, dtype=float)
        if self.kind is SpectralKind.GAUSSIAN:
            return (
                np.pi**-0.25
                * np.sqrt(self.sigma)
                * np.exp(-1j * self.mean * t - 0.5 * self.sigma**2 * t**2)
            )
        if self.kind is SpectralKind.SINC:
            inside = np.abs(t) <= self.width
            return np.where(inside, np.exp(-1j * self.mean * t) / np.sqrt(2 * self.width), 0.0)
        raise NumericalDomainError("Grid models have no closed-form temporal envelope")

    def time_support(self, widths: float = DEFAULT_QUADRATURE_WIDTHS) -> Tuple[float, float]:
        """Interval outside which the temporal envelope is negligible or zero."""
        if self.kind is SpectralKind.SINC:
            return (-self.width, self.width)
        if self.kind is SpectralKind.GAUSSIAN:
            return (-widths / self.sigma, widths / self.sigma)
        raise NumericalDomainError("Grid models have no temporal support")

    def frequency_window(self, widths: float = DEFAULT_QUADRATURE_WIDTHS) -> Tuple[float, float]:
        """Frequency interval holding the amplitude (mean +- widths * scale)."""
        if self.kind is SpectralKind.GRID:
            return (float(self.omega[0]), float(self.omega[-1]))
        scale = self.sigma if self.kind is SpectralKind.GAUSSIAN else 1.0 / self.width
        return (self.mean - widths * scale, self.mean + widths * scale)

    def norm_squared(self) -> float:
        """Integral of |phi|^2 (exactly 1 for the closed forms)."""
        if self.kind is SpectralKind.GRID:
            return float(np.sum(trapezoid_weights(self.omega) * np.abs(self.amplitudes) ** 2))
        return 1.0

    def require_normalized(self, tol: float = SPECTRAL_NORM_TOL) -> None:
        """Raise UnnormalizedModelError unless the model has unit norm."""
        norm = self.norm_squared()
        if abs(norm - 1.0) > tol:
            raise UnnormalizedModelError(f"Spectral model has norm^2 {norm:.10g}, expected 1")

    def describe(self) -> str:
        if self.kind is SpectralKind.GAUSSIAN:
            return f"gaussian(sigma={self.sigma:g}, mean={self.mean:g})"
        if self.kind is SpectralKind.SINC:
            return f"sinc(A={self.width:g}, mean={self.mean:g})"
        return f"grid({self.omega.size} samples)"


def _symmetric_axis(center: float, half_width: float, points: int) -> np.ndarray:
    return np.linspace(center - half_width, center + half_width, points)


@dataclass(frozen=True, eq=False)
class JointSpectralAmplitude:
    """Two-photon amplitude f(w1, w2) sampled on a square uniform grid.

    ``amplitudes[i, j]`` is f(omega[i], omega[j]); photon 1 is the row index.
    """

    omega: np.ndarray
    amplitudes: np.ndarray
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.shape != (omega.size, omega.size):
            raise DimensionMismatchError(
                f"JSA grid {amplitudes.shape} must be square over {omega.size} frequencies"
            )
        steps = np.diff(omega)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
            raise DimensionMismatchError("JSA frequency axis must be uniformly spaced")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "amplitudes", amplitudes)
        object.__setattr__(self, "weights", trapezoid_weights(omega))

    @property
    def spacing(self) -> float:
        """Grid spacing (rad/s)."""
        return float(self.omega[1] - self.omega[0])

    @property
    def size(self) -> int:
        return int(self.omega.size)

    def norm_squared(self) -> float:
        """Trapezoid estimate of the double integral of |f|^2."""
        density = np.abs(self.amplitudes) ** 2
        return float(np.einsum("i,j,ij->", self.weights, self.weights, density))

    def require_normalized(self, tol: float = JSA_NORM_TOL) -> None:
        """Raise UnnormalizedModelError unless the JSA has unit norm."""
        norm = self.norm_squared()
        if abs(norm - 1.0) > tol:
            raise UnnormalizedModelError(f"JSA has norm^2 {norm:.8g}, expected 1")

    def normalized(self) -> "JointSpectralAmplitude":
        """Copy rescaled to unit norm."""
        norm = self.norm_squared()
        if norm == 0.0:
            raise UnnormalizedModelError("Cannot normalize an all-zero JSA")
        return JointSpectralAmplitude(self.omega, self.amplitudes / np.sqrt(norm))

    def swapped(self) -> "JointSpectralAmplitude":
        """f(w2, w1)."""
        return JointSpectralAmplitude(self.omega, self.amplitudes.T)

    @classmethod
    def from_function(
        cls,
        func: Callable[[np.ndarray, np.ndarray], np.ndarray],
        omega,
        normalize: bool = True,
    ) -> "JointSpectralAmplitude":
        """Sample a vectorized f(w1, w2) on the square grid omega x omega."""
        omega = np.asarray(omega, dtype=float)
        w1, w2 = np.meshgrid(omega, omega, indexing="ij")
        jsa = cls(omega, np.asarray(func(w1, w2), dtype=complex))
        return jsa.normalized() if normalize else jsa

    @classmethod
    def product(cls, phi: SpectralModel, chi: SpectralModel, omega) -> "JointSpectralAmplitude":
        """Separable f = phi(w1) chi(w2), renormalized on the grid."""
        omega = np.asarray(omega, dtype=float)
        return cls(omega, np.outer(phi(omega), chi(omega))).normalized()

    @classmethod
    def antisymmetric(
        cls, phi: SpectralModel, chi: SpectralModel, omega
    ) -> "JointSpectralAmplitude":
        """f = phi(w1) chi(w2) - chi(w1) phi(w2), renormalized on the grid."""
        omega = np.asarray(omega, dtype=float)
        a, b = phi(omega), chi(omega)
        return cls(omega, np.outer(a, b) - np.outer(b, a)).normalized()

    @classmethod
    def double_gaussian(
        cls,
        sigma_plus: float,
        sigma_minus: float,
        omega=None,
        center: float = 0.0,
        points: int = 64,
        half_width: float = 10.0,
    ) -> "JointSpectralAmplitude":
        """Pump envelope times phase matching, both Gaussian.

        f ~ exp(-(x + y)^2 / (2 sigma_plus^2) - (x - y)^2 / (2 sigma_minus^2))
        with x, y the detunings from ``center``. Equal widths give a product state.
        """
        if sigma_plus <= 0 or sigma_minus <= 0:
            raise NumericalDomainError("Double-Gaussian widths must be positive")
        if omega is None:
            omega = _symmetric_axis(center, half_width, points)

        def envelope(w1, w2):
            x, y = w1 - center, w2 - center
            pump = (x + y) ** 2 / (2 * sigma_plus**2)
            phase_matching = (x - y) ** 2 / (2 * sigma_minus**2)
            return np.exp(-pump - phase_matching)

        return cls.from_function(envelope, omega, normalize=True)


def quadrature_axis(
    phi: SpectralModel, chi: SpectralModel, points: int = DEFAULT_QUADRATURE_POINTS
) -> np.ndarray:
    """Frequency axis covering both models (union of their windows)."""
    lo_a, hi_a = phi.frequency_window()
    lo_b, hi_b = chi.frequency_window()
    return np.linspace(min(lo_a, lo_b), max(hi_a, hi_b), points)


def time_overlap(phi: SpectralModel, chi: SpectralModel, tau: float) -> complex:
    """integral conj(phi~(t)) chi~(t + tau) dt by adaptive quadrature.

    Equals the frequency overlap integral conj(phi(w)) chi(w) exp(-i w tau) dw.
    """
    lo_a, hi_a = phi.time_support()
    lo_b, hi_b = chi.time_support()
    lo, hi = max(lo_a, lo_b - tau), min(hi_a, hi_b - tau)
    if hi <= lo:
        return 0j

    def integrand(t):
        return np.conj(phi.temporal(t)) * chi.temporal(t + tau)

    options = {"limit": 200, "epsabs": 1e-13, "epsrel": 1e-12}
    real, _ = integrate.quad(lambda t: float(integrand(t).real), lo, hi, **options)
    imag, _ = integrate.quad(lambda t: float(integrand(t).imag), lo, hi, **options)
    return complex(real, imag)
