"""Quantum-eraser expectation values and delay scans."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from loolsim.fock.modes import Path
from loolsim.fock.state import PhotonState
from loolsim.measurement.density import DensityMatrix, dephased_chi
from loolsim.measurement.kets import Subspace, TwoPartyProjector
from loolsim.spectral.scan import InterferenceSource, tau_grid, two_photon_coherence
from loolsim.utils.constants import NORMALIZATION_TOL
from loolsim.utils.errors import SubspaceMismatchError

logger = logging.getLogger(__name__)

StateLike = Union[PhotonState, DensityMatrix]


def subspace_vector(state: PhotonState, subspace: Subspace) -> np.ndarray:
    """Amplitudes of a pure state on {|00>, |0l>, |l0>, |ll>}, normalized.

    Raises:
        SubspaceMismatchError: If the state has weight outside the subspace
    """
    vector = np.array(
        [
            state.amplitude({subspace.mode(Path.A, a): 1, subspace.mode(Path.B, b): 1})
            for a in (0, 1)
            for b in (0, 1)
        ],
        dtype=complex,
    )
    inside = float(np.vdot(vector, vector).real)
    total = state.norm_squared()
    if total == 0.0 or abs(inside - total) > NORMALIZATION_TOL * max(1.0, total):
        raise SubspaceMismatchError(
            f"State carries weight {total - inside:.3e} outside the {subspace} subspace"
        )
    return vector / np.sqrt(inside)


def _check_subspace(subspace: Subspace, projector: TwoPartyProjector) -> None:
    if subspace != projector.subspace:
        raise SubspaceMismatchError(
            f"State lives on the {subspace} subspace, projector on {projector.subspace}"
        )


def eraser_expectation(
    state: StateLike, projector: TwoPartyProjector, subspace: Optional[Subspace] = None
) -> float:
    """<P> for a pure post-selected state or a density matrix.

    Args:
        state: PhotonState in the subspace or a DensityMatrix
        projector: Two-party projector
        subspace: Subspace of a PhotonState (defaults to the projector's)

    Returns:
        Real expectation value

    Raises:
        SubspaceMismatchError: If the state does not live in the projector's subspace
    """
    operator = projector.operator()
    if isinstance(state, DensityMatrix):
        _check_subspace(state.subspace, projector)
        return state.expectation(operator)

    subspace = subspace or projector.subspace
    _check_subspace(subspace, projector)
    vector = subspace_vector(state, subspace)
    return float(np.vdot(vector, operator @ vector).real)


def conditional_probability(state: DensityMatrix, projector: TwoPartyProjector) -> float:
    """Probability of Bob's outcome given Alice's, free of any prefactor.

    P(a, b) / P_A(a) with normalized local projectors.
    """
    _check_subspace(state.subspace, projector)
    joint = state.expectation(np.kron(projector.alice.projector(), projector.bob.projector()))
    marginal = state.expectation(projector.alice_marginal())
    if marginal <= 0.0:
        return 0.0
    return joint / marginal


@dataclass(frozen=True, eq=False)
class EraserScanResult:
    """Projector expectation versus delay."""

    tau: np.ndarray
    values: np.ndarray
    coherence: np.ndarray
    projector: TwoPartyProjector


def eraser_scan(
    source: InterferenceSource,
    projector: TwoPartyProjector,
    tau_range: Tuple[float, float],
    n_points: int,
) -> EraserScanResult:
    """Eraser expectation of the heralded state as the delay is scanned.

    The delay dephases the heralded pair: the |l0>/|0l> coherence equals the
    two-photon coherence eta (1 - 2 p(tau)), so the curve moves from the
    pure-state value at tau = 0 to the mixed-state plateau.
    """
    tau = tau_grid(tau_range, n_points)
    coherence = np.array([two_photon_coherence(source, t) for t in tau])
    values = np.array(
        [eraser_expectation(dephased_chi(g, projector.subspace), projector) for g in coherence]
    )
    center = values[np.argmin(np.abs(tau))]
    logger.debug(f"Eraser scan {projector.name or 'projector'}: {center:.6f} near zero delay")
    return EraserScanResult(tau, values, coherence, projector)
