"""Two-qubit density matrices over {|00>, |0l>, |l0>, |ll>} and reference states."""

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from loolsim.fock.evolution import apply_mode_unitary
from loolsim.fock.modes import BasisTag, ModeIndex, Path
from loolsim.fock.state import PhotonState, make_two_photon_input, post_select_coincidence
from loolsim.measurement.kets import Subspace
from loolsim.optics.elements import beamsplitter, pair_paths, vortex_plate
from loolsim.utils.constants import DEFAULT_REFLECTIVITY, DENSITY_TOL
from loolsim.utils.errors import NumericalDomainError, SubspaceMismatchError

logger = logging.getLogger(__name__)

BASIS_LABELS = ("00", "0l", "l0", "ll")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Physical 4x4 state on the product of two qubit subspaces (Alice first).

    Hermitian, unit trace and positive semidefinite within DENSITY_TOL.
    """

    matrix: np.ndarray
    subspace: Subspace = Subspace()

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (4, 4):
            raise NumericalDomainError(f"Density matrix must be 4x4, got {matrix.shape}")
        if np.max(np.abs(matrix - matrix.conj().T)) > DENSITY_TOL:
            raise NumericalDomainError("Density matrix is not Hermitian")
        trace = np.trace(matrix).real
        if abs(trace - 1.0) > DENSITY_TOL:
            raise NumericalDomainError(f"Density matrix trace is {trace:.12g}, expected 1")
        lowest = float(np.min(np.linalg.eigvalsh(matrix)))
        if lowest < -DENSITY_TOL:
            raise NumericalDomainError(f"Density matrix has negative eigenvalue {lowest:.3e}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def from_ket(cls, vector, subspace: Subspace = Subspace()) -> "DensityMatrix":
        """|psi><psi| for a (renormalized) 4-vector."""
        vector = np.asarray(vector, dtype=complex)
        vector = vector / np.linalg.norm(vector)
        return cls(np.outer(vector, vector.conj()), subspace)

    def expectation(self, operator: np.ndarray) -> float:
        """Tr(rho O), real part."""
        return float(np.trace(self.matrix @ operator).real)

    def fidelity_with(self, vector) -> float:
        """<psi|rho|psi> for a normalized 4-vector."""
        vector = np.asarray(vector, dtype=complex)
        return float(np.vdot(vector, self.matrix @ vector).real)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def purity(self) -> float:
        """Tr(rho^2)."""
        return float(np.trace(self.matrix @ self.matrix).real)

    def to_dict(self) -> Dict[str, object]:
        """Nested real/imaginary arrays plus basis labels."""
        return {
            "basis": [label.replace("l", str(self.subspace.index)) for label in BASIS_LABELS],
            "real": self.matrix.real.tolist(),
            "imag": self.matrix.imag.tolist(),
        }


def basis_vector(alice: int, bob: int) -> np.ndarray:
    """|alice, bob> in the 4-dimensional product basis."""
    vector = np.zeros(4, dtype=complex)
    vector[2 * alice + bob] = 1.0
    return vector


def chi_ket(subspace: Subspace = Subspace()) -> np.ndarray:
    """(|l0> - |0l>)/sqrt(2)."""
    return (basis_vector(1, 0) - basis_vector(0, 1)) / np.sqrt(2)


def chi_density(subspace: Subspace = Subspace()) -> DensityMatrix:
    return DensityMatrix.from_ket(chi_ket(subspace), subspace)


def classically_correlated(subspace: Subspace = Subspace()) -> DensityMatrix:
    """1/2 (|l0><l0| + |0l><0l|)."""
    matrix = np.diag([0.0, 0.5, 0.5, 0.0]).astype(complex)
    return DensityMatrix(matrix, subspace)


def white_noise(subspace: Subspace = Subspace()) -> DensityMatrix:
    """Maximally mixed state 1/4."""
    return DensityMatrix(np.eye(4, dtype=complex) / 4, subspace)


def dephased_chi(coherence: float, subspace: Subspace = Subspace()) -> DensityMatrix:
    """1/2 (|l0><l0| + |0l><0l|) - gamma/2 (|l0><0l| + |0l><l0|).

    gamma = 1 gives |chi><chi|, gamma = 0 the classically correlated state.
    """
    if abs(coherence) > 1.0 + DENSITY_TOL:
        raise NumericalDomainError(f"Coherence must lie in [-1, 1], got {coherence}")
    matrix = np.diag([0.0, 0.5, 0.5, 0.0]).astype(complex)
    matrix[1, 2] = matrix[2, 1] = -coherence / 2
    return DensityMatrix(matrix, subspace)


def _qubit_value(mode: ModeIndex, subspace: Subspace) -> Optional[Tuple[int, str]]:
    if mode.basis_tag == subspace.basis_tag:
        if mode.label == 0:
            return 0, "mode"
        if mode.label == subspace.index:
            return 1, "mode"
    elif mode.basis_tag == BasisTag.GENERIC and mode.label == subspace.index:
        return 1, "sink"
    return None


def reduce_to_subspace(state: PhotonState, subspace: Subspace = Subspace()) -> DensityMatrix:
    """Density matrix of the detected qubit pair.

    Coincidence terms are mapped to |q_A q_B>. A photon in a sink mode looks
    like |l> to a mode-insensitive detector but is distinguishable, so terms
    are grouped by which photons sit in sink modes and the groups add
    incoherently. Terms outside the subspace are filtered out and the result
    renormalized.

    Raises:
        SubspaceMismatchError: If no term lies in the subspace
    """
    groups: Dict[Tuple[str, str], np.ndarray] = defaultdict(lambda: np.zeros(4, dtype=complex))
    dropped = 0
    for term in state.terms:
        if term.photon_number != 2 or term.photons_in_path(Path.A) != 1:
            dropped += 1
            continue
        modes = {mode.path: mode for mode in term.modes()}
        a_value = _qubit_value(modes[Path.A], subspace)
        b_value = _qubit_value(modes[Path.B], subspace)
        if a_value is None or b_value is None:
            dropped += 1
            continue
        groups[(a_value[1], b_value[1])][2 * a_value[0] + b_value[0]] += term.amplitude

    if not groups:
        raise SubspaceMismatchError(f"State has no support on the {subspace} subspace")
    if dropped:
        logger.debug(f"Reduction to {subspace} filtered out {dropped} terms")

    matrix = sum(np.outer(v, v.conj()) for v in groups.values())
    trace = np.trace(matrix).real
    if trace < DENSITY_TOL:
        raise SubspaceMismatchError(f"State has no weight on the {subspace} subspace")
    return DensityMatrix(matrix / trace, subspace)


def crosstalk_state(
    eta: float, subspace: Subspace = Subspace(), r: float = DEFAULT_REFLECTIVITY
) -> DensityMatrix:
    """State heralded behind an imperfect vortex plate.

    Two Gaussian photons, a vortex plate of efficiency eta adding the subspace
    index in path A, a beamsplitter, coincidence post-selection and reduction.
    This gives eta |chi><chi| + (1 - eta) rho_c. Radial subspaces have no
    plate model and use that mixture directly.
    """
    if not 0.0 <= eta <= 1.0:
        raise NumericalDomainError(f"Crosstalk efficiency must lie in [0, 1], got {eta}")
    if subspace.basis_tag != BasisTag.AZIMUTHAL:
        mixed = classically_correlated(subspace).matrix
        mixture = eta * chi_density(subspace).matrix + (1 - eta) * mixed
        return DensityMatrix(mixture, subspace)

    state = make_two_photon_input(subspace.mode(Path.A, 0), subspace.mode(Path.B, 0))
    state = vortex_plate(Path.A, subspace.index, eta).apply(state)
    state = apply_mode_unitary(state, beamsplitter(r, pair_paths(state.modes())))
    heralded, probability = post_select_coincidence(state)
    logger.debug(f"Crosstalk state eta={eta:g} heralded with probability {probability:.6g}")
    return reduce_to_subspace(heralded, subspace)
