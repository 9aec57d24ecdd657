"""Unitary matrices over labeled single-photon modes."""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from loolsim.fock.modes import ModeIndex
from loolsim.utils.constants import UNITARITY_TOL
from loolsim.utils.errors import DimensionMismatchError, NonUnitaryError, UnmappedModeError


def unitarity_defect(matrix: np.ndarray) -> float:
    """Largest entry of |U†U - I|."""
    matrix = np.asarray(matrix, dtype=complex)
    return float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))))


@dataclass(frozen=True, eq=False)
class ModeUnitary:
    """Square unitary acting on the modes listed in ``mode_map``.

    Column m holds the image of mode_map[m]: a†_m -> sum_k matrix[k, m] a†_{mode_map[k]}.
    """

    matrix: np.ndarray
    mode_map: Tuple[ModeIndex, ...]

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        mode_map = tuple(self.mode_map)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError(f"Mode unitary must be square, got shape {matrix.shape}")
        if matrix.shape[0] != len(mode_map):
            raise DimensionMismatchError(
                f"Matrix dimension {matrix.shape[0]} does not match {len(mode_map)} mapped modes"
            )
        if len(set(mode_map)) != len(mode_map):
            raise DimensionMismatchError("Mode map entries must be distinct")
        defect = unitarity_defect(matrix) if len(mode_map) else 0.0
        if defect > UNITARITY_TOL:
            raise NonUnitaryError(f"Matrix is not unitary: max |U†U - I| = {defect:.3e}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "mode_map", mode_map)

    @classmethod
    def identity(cls, modes: Sequence[ModeIndex]) -> "ModeUnitary":
        """Identity on the given modes."""
        return cls(np.eye(len(modes), dtype=complex), tuple(modes))

    @property
    def dimension(self) -> int:
        return len(self.mode_map)

    def index_of(self, mode: ModeIndex) -> int:
        """Row/column position of a mode.

        Raises:
            UnmappedModeError: If the mode is not in the map
        """
        try:
            return self.mode_map.index(mode)
        except ValueError:
            raise UnmappedModeError(f"Mode {mode} is not covered by the unitary") from None

    def covers(self, mode: ModeIndex) -> bool:
        return mode in self.mode_map

    def image(self, mode: ModeIndex) -> List[Tuple[ModeIndex, complex]]:
        """Output modes and coefficients a†_mode is substituted by."""
        column = self.matrix[:, self.index_of(mode)]
        return [(self.mode_map[k], complex(c)) for k, c in enumerate(column) if c != 0]

    def extended_to(self, modes: Sequence[ModeIndex]) -> "ModeUnitary":
        """Embed in a larger mode set, acting as identity on the new modes.

        The existing modes keep their order and come first.
        """
        extra = [m for m in modes if m not in self.mode_map]
        if not extra:
            return self
        size = self.dimension + len(extra)
        matrix = np.eye(size, dtype=complex)
        matrix[: self.dimension, : self.dimension] = self.matrix
        return ModeUnitary(matrix, self.mode_map + tuple(extra))

    def reordered(self, modes: Sequence[ModeIndex]) -> "ModeUnitary":
        """Same operator with rows and columns permuted to a new mode order."""
        modes = tuple(modes)
        if set(modes) != set(self.mode_map) or len(modes) != self.dimension:
            raise DimensionMismatchError("Reordering must be a permutation of the mode map")
        order = [self.mode_map.index(m) for m in modes]
        return ModeUnitary(self.matrix[np.ix_(order, order)], modes)

    def dagger(self) -> "ModeUnitary":
        """Inverse operator."""
        return ModeUnitary(self.matrix.conj().T, self.mode_map)

    def as_dict(self) -> Dict[str, object]:
        """JSON-friendly form: mode labels with real and imaginary parts."""
        return {
            "modes": [str(m) for m in self.mode_map],
            "real": self.matrix.real.tolist(),
            "imag": self.matrix.imag.tolist(),
        }

    def allclose(self, other: "ModeUnitary", atol: float = 1e-12) -> bool:
        """Operator equality after aligning mode orders (identity-extended)."""
        modes = list(self.mode_map) + [m for m in other.mode_map if m not in self.mode_map]
        lhs = self.extended_to(modes).reordered(modes)
        rhs = other.extended_to(modes).reordered(modes)
        return bool(np.allclose(lhs.matrix, rhs.matrix, atol=atol))
