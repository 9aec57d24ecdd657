"""Single-party kets in a two-mode subspace and product projectors."""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from loolsim.fock.modes import BasisTag, ModeIndex
from loolsim.utils.constants import DEFAULT_OAM, KET_MATCH_TOL, NORMALIZATION_TOL
from loolsim.utils.errors import ModeTagError, NumericalDomainError


@dataclass(frozen=True)
class Subspace:
    """Two-mode subspace {|0>, |index>} of one basis tag.

    The Gaussian mode |0> is the qubit value 0 and the higher-order mode
    |index> (azimuthal l or radial p) is the qubit value 1.
    """

    basis_tag: BasisTag = BasisTag.AZIMUTHAL
    index: int = DEFAULT_OAM

    def __post_init__(self):
        object.__setattr__(self, "basis_tag", BasisTag(self.basis_tag))
        object.__setattr__(self, "index", int(self.index))
        if self.index == 0:
            raise ModeTagError("Subspace index must differ from the Gaussian mode 0")
        if self.basis_tag == BasisTag.RADIAL and self.index < 0:
            raise ModeTagError(f"Radial subspace index must be positive, got p={self.index}")

    @classmethod
    def azimuthal(cls, l: int = DEFAULT_OAM) -> "Subspace":
        return cls(BasisTag.AZIMUTHAL, l)

    @classmethod
    def radial(cls, p: int) -> "Subspace":
        return cls(BasisTag.RADIAL, p)

    @property
    def labels(self) -> Tuple[int, int]:
        """Mode labels of qubit values 0 and 1."""
        return (0, self.index)

    def mode(self, path, qubit: int) -> ModeIndex:
        """Mode carrying qubit value 0 or 1 on a path."""
        return ModeIndex(path, self.labels[qubit], self.basis_tag)

    def __str__(self) -> str:
        symbol = "p" if self.basis_tag == BasisTag.RADIAL else "l"
        return f"{symbol}={self.index}"


@dataclass(frozen=True)
class Ket2:
    """c0 |0> + c1 |index> in a two-mode subspace."""

    c0: complex
    c1: complex
    subspace: Subspace = Subspace()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "c0", complex(self.c0))
        object.__setattr__(self, "c1", complex(self.c1))
        norm = abs(self.c0) ** 2 + abs(self.c1) ** 2
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise NumericalDomainError(
                f"Ket2 must be normalized, got |c0|^2 + |c1|^2 = {norm:.15g}"
            )

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=complex)

    @property
    def unit_coefficient_vector(self) -> np.ndarray:
        """The ket rescaled so its largest coefficient has magnitude 1.

        (1, +-1), (1, +-i) and (1, 0) are the unnormalized superpositions
        projectors are quoted on.
        """
        vector = self.vector
        return vector / np.max(np.abs(vector))

    def projector(self) -> np.ndarray:
        """|k><k| as a 2x2 matrix."""
        return np.outer(self.vector, self.vector.conj())

    def overlap(self, other: "Ket2") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.vector, other.vector))

    def same_ray(self, other: "Ket2", tol: float = KET_MATCH_TOL) -> bool:
        """Equal up to a global phase, in the same subspace."""
        return self.subspace == other.subspace and abs(abs(self.overlap(other)) - 1.0) < tol

    def label(self) -> str:
        return self.name or f"({self.c0:.3g})|0> + ({self.c1:.3g})|{self.subspace.index}>"


def mub_settings(subspace: Subspace = Subspace()) -> List[List[Ket2]]:
    """The three mutually unbiased bases of the qubit.

    MUB 1: {|0>, |l>}; MUB 2: {|+>, |->}; MUB 3: {|+i>, |-i>}, with
    |+-> = (|0> +- |l>)/sqrt(2) and |+-i> = (|0> +- i|l>)/sqrt(2).
    """
    h = 1 / np.sqrt(2)
    return [
        [Ket2(1, 0, subspace, "0"), Ket2(0, 1, subspace, "l")],
        [Ket2(h, h, subspace, "+"), Ket2(h, -h, subspace, "-")],
        [Ket2(h, 1j * h, subspace, "+i"), Ket2(h, -1j * h, subspace, "-i")],
    ]


def local_states(subspace: Subspace = Subspace()) -> List[Ket2]:
    """The six MUB states in order 0, l, +, -, +i, -i."""
    return [ket for basis in mub_settings(subspace) for ket in basis]


def locate_in_mubs(ket: Ket2) -> Tuple[int, int]:
    """(MUB index, outcome index) of a ket, matched up to phase.

    Raises:
        NumericalDomainError: If the ket is not an MUB state
    """
    for basis_index, basis in enumerate(mub_settings(ket.subspace)):
        for outcome, candidate in enumerate(basis):
            if candidate.same_ray(ket):
                return basis_index, outcome
    raise NumericalDomainError(f"Ket {ket.label()} is not a mutually unbiased basis state")


@dataclass(frozen=True)
class TwoPartyProjector:
    """scale * |a><a| (x) |b><b| with a, b the unit-coefficient vectors.

    With scale = 1/4 and two balanced superpositions this is the normalized
    product projector, which is how the eraser projectors are usually quoted.
    """

    alice: Ket2
    bob: Ket2
    scale: float = 1.0
    name: str = ""

    def __post_init__(self):
        if self.alice.subspace != self.bob.subspace:
            raise ModeTagError("Both parties of a projector must share one subspace")

    @classmethod
    def normalized(cls, alice: Ket2, bob: Ket2, name: str = "") -> "TwoPartyProjector":
        """Rank-1 product projector of unit trace."""
        ra, rb = alice.unit_coefficient_vector, bob.unit_coefficient_vector
        scale = 1.0 / float(np.vdot(ra, ra).real * np.vdot(rb, rb).real)
        return cls(alice, bob, scale, name)

    @property
    def subspace(self) -> Subspace:
        return self.alice.subspace

    def operator(self) -> np.ndarray:
        """4x4 operator in the basis {|00>, |0l>, |l0>, |ll>}, Alice first."""
        ra, rb = self.alice.unit_coefficient_vector, self.bob.unit_coefficient_vector
        return self.scale * np.kron(np.outer(ra, ra.conj()), np.outer(rb, rb.conj()))

    def alice_marginal(self) -> np.ndarray:
        """|a><a| (x) 1 with the normalized Alice ket."""
        return np.kron(self.alice.projector(), np.eye(2))


def symmetric_projector(subspace: Subspace = Subspace()) -> TwoPartyProjector:
    """1/4 (|0> + |l>)(<0| + <l|) (x) (|0> + |l>)(<0| + <l|)."""
    plus = mub_settings(subspace)[1][0]
    return TwoPartyProjector(plus, plus, 0.25, "sym")


def antisymmetric_projector(subspace: Subspace = Subspace()) -> TwoPartyProjector:
    """1/4 (|0> + |l>)(<0| + <l|) (x) (|0> - |l>)(<0| - <l|)."""
    plus, minus = mub_settings(subspace)[1]
    return TwoPartyProjector(plus, minus, 0.25, "asym")


def bump_projector(l: int = 2) -> TwoPartyProjector:
    """Antisymmetric projector on the l = 2 subspace of the spiral-plate scheme."""
    projector = antisymmetric_projector(Subspace.azimuthal(l))
    return TwoPartyProjector(projector.alice, projector.bob, projector.scale, "bump")
