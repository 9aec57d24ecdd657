"""Linear-inversion tomography of the two-qubit subspace.

The state is expanded on the 16 Pauli products, rho = sum_k x_k B_k / 4 with
real x_k = Tr(rho B_k), so every Born probability is linear in x:
p_s = sum_k x_k Tr(B_k P_s) / 4.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from loolsim.measurement.counts import CoincidenceRecord, Setting, born_probability
from loolsim.measurement.density import DensityMatrix
from loolsim.measurement.kets import Subspace, local_states, locate_in_mubs
from loolsim.utils.errors import MissingSettingError, RankDeficientError

logger = logging.getLogger(__name__)

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
PAULI_PRODUCTS = tuple(np.kron(a, b) for a, b in itertools.product(PAULI, PAULI))
FULL_RANK = len(PAULI_PRODUCTS)


def standard_settings(subspace: Subspace = Subspace()) -> List[Setting]:
    """The 36 product settings of the six MUB states per party."""
    states = local_states(subspace)
    return [(a, b) for a in states for b in states]


def design_row(setting: Setting) -> np.ndarray:
    """Tr(B_k |a><a| (x) |b><b|) / 4 for the 16 Pauli products."""
    alice, bob = setting
    projector = np.kron(alice.projector(), bob.projector())
    return np.array([np.trace(b @ projector).real / 4 for b in PAULI_PRODUCTS])


def _group_of(setting: Setting):
    return (locate_in_mubs(setting[0])[0], locate_in_mubs(setting[1])[0])


@dataclass(frozen=True, eq=False)
class TomographySet:
    """Measured settings with their relative frequencies.

    Frequencies are counts normalized within each (Alice MUB, Bob MUB)
    group of four outcomes. ``group_totals`` keeps the raw group sums for
    Poisson weighting; it is None for exact probabilities.
    """

    settings: List[Setting]
    frequencies: np.ndarray
    counts: Optional[np.ndarray] = None
    group_totals: Optional[np.ndarray] = None
    subspace: Subspace = Subspace()

    @classmethod
    def from_records(cls, records: Sequence[CoincidenceRecord]) -> "TomographySet":
        """Normalize record counts per MUB pair.

        Raises:
            MissingSettingError: If no records are given or a group is empty
        """
        if not records:
            raise MissingSettingError("Tomography needs at least one coincidence record")
        settings = [record.setting for record in records]
        counts = np.array([record.counts for record in records], dtype=float)
        groups = [_group_of(s) for s in settings]
        totals = {}
        for group, n in zip(groups, counts):
            totals[group] = totals.get(group, 0.0) + n
        empty = [g for g, total in totals.items() if total <= 0]
        if empty:
            raise MissingSettingError(f"No coincidences in MUB pairs {sorted(empty)}")
        group_totals = np.array([totals[g] for g in groups])
        return cls(settings, counts / group_totals, counts, group_totals, records[0].alice.subspace)

    @classmethod
    def from_state(
        cls, rho: DensityMatrix, settings: Optional[Sequence[Setting]] = None
    ) -> "TomographySet":
        """Exact Born probabilities as frequencies."""
        settings = list(settings) if settings is not None else standard_settings(rho.subspace)
        frequencies = np.array([born_probability(rho, a, b) for a, b in settings])
        return cls(settings, frequencies, subspace=rho.subspace)

    def design_matrix(self) -> np.ndarray:
        """Real (n_settings x 16) Born-rule design matrix."""
        return np.array([design_row(s) for s in self.settings])

    def poisson_weights(self) -> np.ndarray:
        """Inverse standard deviations of the frequencies under Poisson statistics."""
        if self.counts is None or self.group_totals is None:
            return np.ones(len(self.settings))
        return self.group_totals / np.sqrt(np.maximum(self.counts, 1.0))


def pauli_vector_to_matrix(x: np.ndarray) -> np.ndarray:
    """sum_k x_k B_k / 4, Hermitized."""
    matrix = sum(xk * b for xk, b in zip(x, PAULI_PRODUCTS)) / 4
    return (matrix + matrix.conj().T) / 2


def linear_inversion(tomography_set: TomographySet, weighted: bool = False) -> np.ndarray:
    """Least-squares state estimate, Hermitian but possibly unphysical.

    Args:
        tomography_set: Settings and normalized frequencies
        weighted: Weight rows by their Poisson standard deviation

    Returns:
        4x4 Hermitian matrix

    Raises:
        RankDeficientError: If the settings are not informationally complete
    """
    design = tomography_set.design_matrix()
    frequencies = tomography_set.frequencies
    if weighted:
        weights = tomography_set.poisson_weights()
        design = design * weights[:, None]
        frequencies = frequencies * weights
    x, _, rank, _ = np.linalg.lstsq(design, frequencies, rcond=None)
    if rank < FULL_RANK:
        raise RankDeficientError(f"Design matrix has rank {rank}, tomography needs {FULL_RANK}")
    logger.debug(
        f"Linear inversion over {len(tomography_set.settings)} settings, weighted={weighted}"
    )
    return pauli_vector_to_matrix(x)
