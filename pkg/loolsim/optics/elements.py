"""Optical elements as mode unitaries and mode relabelings.

Mode ordering for two-label elements follows (a_l1, b_l1, a_l2, b_l2, ...):
all paths of one internal label before the next label.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from loolsim.fock.evolution import substitute_modes
from loolsim.fock.modes import BasisTag, ModeIndex, Path, as_path
from loolsim.fock.state import PhotonState
from loolsim.fock.unitary import ModeUnitary
from loolsim.utils.constants import DEFAULT_OAM
from loolsim.utils.errors import ModeTagError, NumericalDomainError, ReflectivityRangeError

logger = logging.getLogger(__name__)

ModePair = Tuple[ModeIndex, ModeIndex]
ModeImage = Tuple[Tuple[ModeIndex, complex], ...]


def _check_fraction(value: float, name: str, error=NumericalDomainError) -> float:
    if not 0.0 <= value <= 1.0:
        raise error(f"{name} must lie in [0, 1], got {value}")
    return float(value)


def beamsplitter(r: float, modes: Sequence[ModePair]) -> ModeUnitary:
    """Beamsplitter of reflectivity r acting on paired A/B modes.

    Each (A, label)/(B, label) pair mixes as
    a† -> sqrt(1-r) a† + sqrt(r) b†, b† -> sqrt(r) a† - sqrt(1-r) b†.
    Distinct internal labels never mix.

    Args:
        r: Reflectivity in [0, 1]
        modes: (A-mode, B-mode) pairs sharing label and basis tag

    Returns:
        Block-diagonal ModeUnitary ordered (a_1, b_1, a_2, b_2, ...)

    Raises:
        ReflectivityRangeError: If r is outside [0, 1]
        ModeTagError: If a pair does not join the same label across paths
    """
    r = _check_fraction(r, "Reflectivity", ReflectivityRangeError)
    t_amp, r_amp = np.sqrt(1.0 - r), np.sqrt(r)
    block = np.array([[t_amp, r_amp], [r_amp, -t_amp]], dtype=complex)

    mode_map: List[ModeIndex] = []
    for a_mode, b_mode in modes:
        if a_mode.path != Path.A or b_mode.path != Path.B:
            raise ModeTagError(f"Beamsplitter pair ({a_mode}, {b_mode}) must be ordered (A, B)")
        if (a_mode.label, a_mode.basis_tag) != (b_mode.label, b_mode.basis_tag):
            raise ModeTagError(
                f"Beamsplitter cannot pair different internal modes {a_mode} and {b_mode}"
            )
        mode_map.extend([a_mode, b_mode])

    matrix = np.kron(np.eye(len(mode_map) // 2), block)
    return ModeUnitary(matrix, tuple(mode_map))


def beamsplitter_for_labels(
    r: float, labels: Iterable[int], basis_tag: BasisTag = BasisTag.AZIMUTHAL
) -> ModeUnitary:
    """Beamsplitter on (A, l)/(B, l) for each label, in the given order."""
    pairs = [(ModeIndex(Path.A, l, basis_tag), ModeIndex(Path.B, l, basis_tag)) for l in labels]
    return beamsplitter(r, pairs)


def pair_paths(modes: Iterable[ModeIndex]) -> List[ModePair]:
    """A/B pairs covering every internal mode present in ``modes``."""
    internal = sorted({(int(m.basis_tag), m.label) for m in modes})
    return [
        (ModeIndex(Path.A, label, BasisTag(tag)), ModeIndex(Path.B, label, BasisTag(tag)))
        for tag, label in internal
    ]


def slm_mixer(
    theta: float,
    labels: Tuple[int, int] = (0, DEFAULT_OAM),
    basis_tag: BasisTag = BasisTag.AZIMUTHAL,
) -> ModeUnitary:
    """Mixer between two internal labels inside each path.

    l1 -> cos(theta) l1 + i sin(theta) l2 and l2 -> i sin(theta) l1 + cos(theta) l2.
    Paths are never mixed.
    """
    c, s = np.cos(theta), np.sin(theta)
    l1, l2 = labels
    if l1 == l2:
        raise ModeTagError(f"Mixer needs two distinct labels, got {l1} twice")
    mode_map = (
        ModeIndex(Path.A, l1, basis_tag),
        ModeIndex(Path.B, l1, basis_tag),
        ModeIndex(Path.A, l2, basis_tag),
        ModeIndex(Path.B, l2, basis_tag),
    )
    block = np.array([[c, 1j * s], [1j * s, c]], dtype=complex)
    matrix = np.kron(block, np.eye(2))
    return ModeUnitary(matrix, mode_map)


def compose(first: ModeUnitary, second: ModeUnitary) -> ModeUnitary:
    """Apply ``first`` then ``second``; the product matrix is second @ first.

    Modes missing from either unitary are acted on as identity.
    """
    modes = list(first.mode_map) + [m for m in second.mode_map if m not in first.mode_map]
    lhs = first.extended_to(modes).reordered(modes)
    rhs = second.extended_to(modes).reordered(modes)
    return ModeUnitary(rhs.matrix @ lhs.matrix, tuple(modes))


@dataclass(frozen=True)
class ModeRelabeling:
    """Linear map sending each mode to a superposition of modes.

    Unlike ModeUnitary it is not restricted to a finite mode set, which
    suits elements that shift labels (mirrors, phase plates).
    """

    rule: Callable[[ModeIndex], Sequence[Tuple[ModeIndex, complex]]]
    name: str = "relabeling"

    def image(self, mode: ModeIndex) -> ModeImage:
        """Modes and coefficients replacing a†_mode."""
        return tuple((m, complex(c)) for m, c in self.rule(mode))

    def then(self, other: "ModeRelabeling") -> "ModeRelabeling":
        """This relabeling followed by ``other``."""

        def combined(mode: ModeIndex) -> ModeImage:
            merged: Dict[ModeIndex, complex] = {}
            for middle, c1 in self.image(mode):
                for out, c2 in other.image(middle):
                    merged[out] = merged.get(out, 0j) + c1 * c2
            return tuple((m, c) for m, c in merged.items() if c != 0)

        return ModeRelabeling(combined, f"{self.name} -> {other.name}")

    def apply(self, state: PhotonState) -> PhotonState:
        """Substitute every creation operator of the state."""
        logger.debug(f"Applying {self.name}")
        return substitute_modes(state, self.image)

    def __call__(self, state: PhotonState) -> PhotonState:
        return self.apply(state)


def identity_relabeling() -> ModeRelabeling:
    """Relabeling that leaves every mode untouched."""
    return ModeRelabeling(lambda mode: ((mode, 1.0),), "identity")


def _azimuthal_rule(path: Path, shift: Callable[[int], int], element: str):
    def rule(mode: ModeIndex):
        if mode.path != path:
            return ((mode, 1.0),)
        if mode.basis_tag == BasisTag.RADIAL:
            raise ModeTagError(f"{element} acts on azimuthal modes only, got {mode}")
        if mode.basis_tag != BasisTag.AZIMUTHAL:
            return ((mode, 1.0),)
        return ((mode.with_label(shift(mode.label)), 1.0),)

    return rule


def mirror(path) -> ModeRelabeling:
    """Mirror in one path: (path, l) -> (path, -l).

    The global phase a reflection adds is dropped.

    Raises:
        ModeTagError: When applied to a radial mode of that path
    """
    path = as_path(path)
    return ModeRelabeling(_azimuthal_rule(path, lambda l: -l, "Mirror"), f"mirror({path.name})")


def phase_plate(path, delta: int) -> ModeRelabeling:
    """Spiral/vortex phase plate adding ``delta`` units of OAM in one path."""
    path, delta = as_path(path), int(delta)
    rule = _azimuthal_rule(path, lambda l: l + delta, "Phase plate")
    return ModeRelabeling(rule, f"phase_plate({path.name}, {delta:+d})")


def vortex_plate(path, delta: int, efficiency: float = 1.0) -> ModeRelabeling:
    """Imperfect vortex plate.

    A fraction ``efficiency`` of the shifted mode lands in the target LG mode;
    the rest goes into a distinguishable, undetected sink mode
    ModeIndex(path, l + delta, GENERIC):
    |l> -> sqrt(eta) |l + delta> + sqrt(1 - eta) |junk>.

    Args:
        path: Path carrying the plate
        delta: OAM shift
        efficiency: Mode overlap eta in [0, 1]

    Returns:
        ModeRelabeling
    """
    eta = _check_fraction(efficiency, "Vortex plate efficiency")
    ideal_path = as_path(path)
    ideal = phase_plate(ideal_path, delta)
    good, lost = np.sqrt(eta), np.sqrt(1.0 - eta)

    def rule(mode: ModeIndex):
        # Radial modes raise, other paths and tags pass through.
        ((shifted, _),) = ideal.image(mode)
        if mode.path != ideal_path or mode.basis_tag != BasisTag.AZIMUTHAL:
            return ((shifted, 1.0),)
        images = []
        if good:
            images.append((shifted, good))
        if lost:
            images.append((ModeIndex.generic(shifted.path, shifted.label), lost))
        return tuple(images)

    return ModeRelabeling(rule, f"vortex_plate({ideal_path.name}, {int(delta):+d}, eta={eta:g})")


def slm_after_beamsplitter(
    theta: float,
    labels: Tuple[int, int] = (0, DEFAULT_OAM),
    r: float = 0.5,
    basis_tag: BasisTag = BasisTag.AZIMUTHAL,
) -> ModeUnitary:
    """Beamsplitter followed by the label mixer, on (a_l1, b_l1, a_l2, b_l2)."""
    bs = beamsplitter_for_labels(r, labels, basis_tag)
    return compose(bs, slm_mixer(theta, labels, basis_tag))
