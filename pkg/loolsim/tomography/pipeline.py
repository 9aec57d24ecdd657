"""Simulated tomography run: counts, inversion, projection and fidelity."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from loolsim.measurement.bootstrap import poisson_bootstrap
from loolsim.measurement.counts import CoincidenceRecord, simulate_counts
from loolsim.measurement.density import DensityMatrix, chi_ket
from loolsim.tomography.inversion import TomographySet, linear_inversion, standard_settings
from loolsim.tomography.projection import fidelity, project_to_physical
from loolsim.utils.constants import BOOTSTRAP_RESAMPLES

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TomographyReport:
    """Everything a reconstruction produced, ready for serialization."""

    rho_hat: DensityMatrix
    raw_estimate: np.ndarray
    fidelity: float
    sigma: float
    records: List[CoincidenceRecord] = field(default_factory=list)

    @property
    def raw_eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.raw_estimate)

    @property
    def negativity(self) -> float:
        """Magnitude of the negative eigenvalues of the unprojected estimate."""
        return float(-np.sum(np.minimum(self.raw_eigenvalues, 0.0)))

    def to_dict(self) -> Dict[str, object]:
        return {
            "rho_hat": self.rho_hat.to_dict(),
            "raw_estimate": {
                "real": self.raw_estimate.real.tolist(),
                "imag": self.raw_estimate.imag.tolist(),
            },
            "fidelity": self.fidelity,
            "sigma": self.sigma,
            "purity": self.rho_hat.purity(),
            "eigenvalues": self.rho_hat.eigenvalues().tolist(),
            "raw_eigenvalues": self.raw_eigenvalues.tolist(),
            "negativity": self.negativity,
        }


def reconstruct(
    records: Sequence[CoincidenceRecord], weighted: bool = False
) -> Tuple[np.ndarray, DensityMatrix]:
    """Linear inversion followed by projection onto physical states."""
    tomography_set = TomographySet.from_records(records)
    raw = linear_inversion(tomography_set, weighted=weighted)
    return raw, project_to_physical(raw, tomography_set.subspace)


def bootstrap_fidelity(
    records: Sequence[CoincidenceRecord],
    target: np.ndarray,
    n_resamples: int = BOOTSTRAP_RESAMPLES,
    seed: int = 0,
    weighted: bool = False,
) -> float:
    """Standard deviation of the reconstructed fidelity under Poisson resampling."""

    def statistic(resampled: Sequence[CoincidenceRecord]) -> float:
        return fidelity(reconstruct(resampled, weighted)[1], target)

    return poisson_bootstrap(records, statistic, n_resamples, seed).std


def tomo_pipeline(
    rho_true: DensityMatrix,
    counts_per_setting: int,
    seed: int,
    target: Optional[np.ndarray] = None,
    n_bootstrap: int = BOOTSTRAP_RESAMPLES,
    weighted: bool = False,
    background: float = 0.0,
) -> Tuple[DensityMatrix, float, TomographyReport]:
    """Simulate the 36-setting measurement of a state and reconstruct it.

    Args:
        rho_true: State that generates the counts
        counts_per_setting: Mean heralded pairs per setting
        seed: Seed for counts and bootstrap
        target: Ket the fidelity refers to (the antisymmetric state by default)
        n_bootstrap: Resamples for the fidelity error bar (0 skips it)
        weighted: Use Poisson-weighted least squares
        background: Mean accidental coincidences per setting

    Returns:
        (rho_hat, fidelity, report)
    """
    if target is None:
        target = chi_ket(rho_true.subspace)
    records = simulate_counts(
        rho_true, standard_settings(rho_true.subspace), counts_per_setting, seed, background
    )
    raw, rho_hat = reconstruct(records, weighted)
    estimate = fidelity(rho_hat, target)
    sigma = 0.0
    if n_bootstrap > 0:
        sigma = bootstrap_fidelity(records, target, n_bootstrap, seed, weighted)
    logger.info(
        f"Tomography fidelity {estimate:.4f} +/- {sigma:.4f}, {counts_per_setting} pairs/setting"
    )
    return rho_hat, estimate, TomographyReport(rho_hat, raw, estimate, sigma, list(records))
