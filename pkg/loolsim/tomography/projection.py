"""Projection onto physical density matrices and fidelities."""

import numpy as np

from loolsim.measurement.density import DensityMatrix
from loolsim.measurement.kets import Subspace
from loolsim.utils.errors import DimensionMismatchError


def project_to_simplex(values: np.ndarray) -> np.ndarray:
    """Euclidean projection of a real vector onto the probability simplex.

    Sort-based; ties keep their original index order.
    """
    values = np.asarray(values, dtype=float)
    order = np.argsort(-values, kind="stable")
    ordered = values[order]
    cumulative = np.cumsum(ordered) - 1.0
    ranks = np.arange(1, values.size + 1)
    support = np.nonzero(ordered - cumulative / ranks > 0)[0][-1]
    theta = cumulative[support] / (support + 1)
    return np.maximum(values - theta, 0.0)


def project_to_physical(matrix: np.ndarray, subspace: Subspace = Subspace()) -> DensityMatrix:
    """Frobenius-nearest positive semidefinite, unit-trace matrix.

    Eigenvalues are projected onto the simplex and the eigenvectors kept.
    """
    matrix = np.asarray(matrix, dtype=complex)
    matrix = (matrix + matrix.conj().T) / 2
    eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    projected = project_to_simplex(eigenvalues)
    physical = (eigenvectors * projected) @ eigenvectors.conj().T
    return DensityMatrix((physical + physical.conj().T) / 2, subspace)


def fidelity(rho: DensityMatrix, target) -> float:
    """<psi|rho|psi> for a normalized target ket, clipped to [0, 1].

    Raises:
        DimensionMismatchError: If the target is not a 4-vector
    """
    target = np.asarray(target, dtype=complex).ravel()
    if target.shape != (rho.matrix.shape[0],):
        raise DimensionMismatchError(f"Target of length {target.size} does not match a 4x4 state")
    target = target / np.linalg.norm(target)
    return float(np.clip(rho.fidelity_with(target), 0.0, 1.0))
