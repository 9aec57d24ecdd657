"""Delay scans: HOM curves, visibilities and two-photon coherence."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from loolsim.spectral.coincidence import coincidence_prob_entangled, coincidence_prob_separable
from loolsim.spectral.models import JointSpectralAmplitude, SpectralModel
from loolsim.utils.constants import BASELINE_FRACTION
from loolsim.utils.errors import EmptyRangeError, NumericalDomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InterferenceSource:
    """Spectral configuration of a photon pair entering the beamsplitter.

    Either a separable pair (phi, chi) or a joint spectral amplitude. The
    spatial ``mode_overlap`` eta scales the interference term:
    p(tau) = 1/2 - eta (1/2 - p_spectral(tau)).
    """

    phi: Optional[SpectralModel] = None
    chi: Optional[SpectralModel] = None
    jsa: Optional[JointSpectralAmplitude] = None
    mode_overlap: float = 1.0

    def __post_init__(self):
        separable = self.phi is not None and self.chi is not None
        if separable == (self.jsa is not None):
            raise NumericalDomainError("Source needs either a (phi, chi) pair or a JSA, not both")
        if not 0.0 <= self.mode_overlap <= 1.0:
            raise NumericalDomainError(f"Mode overlap must lie in [0, 1], got {self.mode_overlap}")

    @classmethod
    def identical(cls, model: SpectralModel, mode_overlap: float = 1.0) -> "InterferenceSource":
        """Two photons with the same spectrum."""
        return cls(phi=model, chi=model, mode_overlap=mode_overlap)

    def spectral_probability(self, tau: float) -> float:
        """Coincidence probability from spectral distinguishability alone."""
        if self.jsa is not None:
            return coincidence_prob_entangled(self.jsa, tau)
        return coincidence_prob_separable(self.phi, self.chi, tau)

    def coincidence_probability(self, tau: float) -> float:
        """Coincidence probability including the spatial mode overlap."""
        return 0.5 - self.mode_overlap * (0.5 - self.spectral_probability(tau))

    def describe(self) -> str:
        if self.jsa is not None:
            return f"jsa({self.jsa.size}x{self.jsa.size}), eta={self.mode_overlap:g}"
        return f"{self.phi.describe()} x {self.chi.describe()}, eta={self.mode_overlap:g}"


def two_photon_coherence(source: InterferenceSource, tau: float) -> float:
    """gamma(tau) = eta (1 - 2 p_spectral(tau)); 1 for perfect overlap at tau = 0."""
    return source.mode_overlap * (1.0 - 2.0 * source.spectral_probability(tau))


def tau_grid(tau_range: Tuple[float, float], n_points: int) -> np.ndarray:
    """Uniform delay axis.

    Raises:
        EmptyRangeError: If fewer than three points or an empty interval
    """
    tau_min, tau_max = tau_range
    if n_points < 3:
        raise EmptyRangeError(f"A scan needs at least 3 points, got {n_points}")
    if not tau_min < tau_max:
        raise EmptyRangeError(f"Empty delay range [{tau_min}, {tau_max}]")
    return np.linspace(tau_min, tau_max, int(n_points))


@dataclass(frozen=True, eq=False)
class Visibility:
    """Visibility of a dip or bump relative to the curve's baseline."""

    value: float
    kind: str
    baseline: float
    extremum: float


def visibility(tau: np.ndarray, probability: np.ndarray) -> Visibility:
    """Baseline-relative visibility.

    The baseline is the mean of the outermost BASELINE_FRACTION of samples
    by |tau|. Whichever extremum deviates more from it decides dip or bump.
    """
    tau = np.asarray(tau, dtype=float)
    probability = np.asarray(probability, dtype=float)
    n_outer = max(1, int(round(BASELINE_FRACTION * tau.size)))
    outer = np.argsort(-np.abs(tau), kind="stable")[:n_outer]
    baseline = float(np.mean(probability[outer]))
    low, high = float(np.min(probability)), float(np.max(probability))
    if baseline <= 0.0:
        raise NumericalDomainError("Visibility baseline is zero")
    if baseline - low >= high - baseline:
        return Visibility((baseline - low) / baseline, "dip", baseline, low)
    return Visibility((high - baseline) / baseline, "bump", baseline, high)


@dataclass(frozen=True, eq=False)
class HomScanResult:
    """Sampled coincidence curve."""

    tau: np.ndarray
    probability: np.ndarray
    visibility: Visibility


def hom_scan(
    source: InterferenceSource, tau_range: Tuple[float, float], n_points: int
) -> HomScanResult:
    """Sample the coincidence probability over a delay range.

    Args:
        source: Spectral configuration
        tau_range: (tau_min, tau_max) in seconds
        n_points: Number of samples, at least 3

    Returns:
        HomScanResult with the curve and its visibility
    """
    tau = tau_grid(tau_range, n_points)
    probability = np.array([source.coincidence_probability(t) for t in tau])
    vis = visibility(tau, probability)
    logger.debug(f"HOM scan of {source.describe()}: {vis.kind} visibility {vis.value:.6f}")
    return HomScanResult(tau, probability, vis)
