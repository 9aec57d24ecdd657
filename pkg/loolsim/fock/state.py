"""Photon-number states over labeled modes.

A PhotonState is a superposition of occupation-number basis states. Each
amplitude multiplies a normalized Fock vector |n_1, n_2, ...>, so n creation
operators on one mode contribute a factor sqrt(n!) when a product of
creation operators is converted into a state.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, Mapping, Tuple

import numpy as np

from loolsim.fock.modes import ModeIndex, Path
from loolsim.utils.constants import AMPLITUDE_CUTOFF, NORMALIZATION_TOL
from loolsim.utils.errors import (
    EmptyPostSelectionError,
    NumericalDomainError,
    PathsNotDistinctError,
)

logger = logging.getLogger(__name__)

# Canonical, hashable occupation map: ((mode, count), ...) sorted by mode key.
Occupation = Tuple[Tuple[ModeIndex, int], ...]


def canonical_occupation(occupations: Mapping[ModeIndex, int]) -> Occupation:
    """Build the canonical occupation key from a mode -> count mapping.

    Zero counts are dropped; negative counts are rejected.
    """
    items = []
    for mode, count in occupations.items():
        if count < 0:
            raise NumericalDomainError(f"Negative photon count {count} in mode {mode}")
        if count:
            items.append((mode, int(count)))
    return tuple(sorted(items, key=lambda item: item[0].sort_key()))


@dataclass(frozen=True)
class OccupationTerm:
    """One occupation-number basis state with its amplitude."""

    occupations: Occupation
    amplitude: complex

    @property
    def photon_number(self) -> int:
        """Total photon number of this term."""
        return sum(count for _, count in self.occupations)

    def count(self, mode: ModeIndex) -> int:
        """Photon count in a mode."""
        for occupied, count in self.occupations:
            if occupied == mode:
                return count
        return 0

    def modes(self) -> Tuple[ModeIndex, ...]:
        """Occupied modes in canonical order."""
        return tuple(mode for mode, _ in self.occupations)

    def photons_in_path(self, path: Path) -> int:
        """Number of photons in modes of the given path."""
        return sum(count for mode, count in self.occupations if mode.path == path)

    def creation_list(self) -> Tuple[ModeIndex, ...]:
        """Modes repeated by occupation, i.e. the creation operators to apply."""
        return tuple(mode for mode, count in self.occupations for _ in range(count))


@dataclass(frozen=True)
class PhotonState:
    """Superposition of occupation-number states.

    Terms carry distinct occupation maps. A state flagged ``normalized``
    has unit norm within NORMALIZATION_TOL.
    """

    terms: Tuple[OccupationTerm, ...] = field(default_factory=tuple)
    normalized: bool = False

    @classmethod
    def from_amplitudes(
        cls, amplitudes: Mapping[Occupation, complex], normalize: bool = False
    ) -> "PhotonState":
        """Build a state from occupation -> amplitude pairs.

        Amplitudes are assumed already merged per occupation; entries whose
        magnitude falls below AMPLITUDE_CUTOFF are dropped.

        Args:
            amplitudes: Mapping from canonical occupation to amplitude
            normalize: Rescale to unit norm and flag the result normalized

        Returns:
            New PhotonState
        """
        kept = {
            occ: complex(amp) for occ, amp in amplitudes.items() if abs(amp) >= AMPLITUDE_CUTOFF
        }
        if normalize:
            norm = np.sqrt(sum(abs(amp) ** 2 for amp in kept.values()))
            if norm == 0.0:
                raise NumericalDomainError("Cannot normalize the zero state")
            kept = {occ: amp / norm for occ, amp in kept.items()}
        terms = tuple(
            OccupationTerm(occ, amp)
            for occ, amp in sorted(kept.items(), key=lambda item: _occupation_sort_key(item[0]))
        )
        return cls(terms=terms, normalized=normalize)

    @classmethod
    def fock(cls, occupations: Mapping[ModeIndex, int], amplitude: complex = 1.0) -> "PhotonState":
        """Single occupation-number basis state."""
        occ = canonical_occupation(occupations)
        unit = abs(abs(amplitude) - 1.0) < NORMALIZATION_TOL
        return cls.from_amplitudes({occ: amplitude}, normalize=unit)

    def __iter__(self) -> Iterator[OccupationTerm]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def amplitude(self, occupations: Mapping[ModeIndex, int]) -> complex:
        """Amplitude of a basis state (0 if absent)."""
        key = canonical_occupation(occupations)
        for term in self.terms:
            if term.occupations == key:
                return term.amplitude
        return 0j

    def as_dict(self) -> Dict[Occupation, complex]:
        """Occupation -> amplitude mapping."""
        return {term.occupations: term.amplitude for term in self.terms}

    def modes(self) -> Tuple[ModeIndex, ...]:
        """Every mode occupied by at least one term, canonically ordered."""
        seen = {mode for term in self.terms for mode in term.modes()}
        return tuple(sorted(seen, key=ModeIndex.sort_key))

    @property
    def total_photon_number(self) -> int:
        """Photon number shared by all terms.

        Raises:
            NumericalDomainError: If terms disagree
        """
        numbers = {term.photon_number for term in self.terms}
        if not numbers:
            return 0
        if len(numbers) > 1:
            raise NumericalDomainError(f"State mixes photon numbers {sorted(numbers)}")
        return numbers.pop()

    def norm_squared(self) -> float:
        """Sum of squared amplitude magnitudes."""
        return float(sum(abs(term.amplitude) ** 2 for term in self.terms))

    def normalized_copy(self) -> "PhotonState":
        """Unit-norm copy flagged normalized."""
        return PhotonState.from_amplitudes(self.as_dict(), normalize=True)

    def scaled(self, factor: complex) -> "PhotonState":
        """Multiply every amplitude by a constant."""
        return PhotonState.from_amplitudes(
            {occ: factor * amp for occ, amp in self.as_dict().items()},
            normalize=False,
        )

    def probability_of(self, predicate: Callable[[OccupationTerm], bool]) -> float:
        """Weight of the terms selected by predicate, relative to the total norm."""
        total = self.norm_squared()
        if total == 0.0:
            return 0.0
        return float(sum(abs(t.amplitude) ** 2 for t in self.terms if predicate(t)) / total)

    def equals_up_to_phase(self, other: "PhotonState", tol: float = 1e-10) -> bool:
        """Compare two states up to a global phase via |<x|y>|."""
        nx, ny = self.norm_squared(), other.norm_squared()
        if nx == 0.0 or ny == 0.0:
            return nx == ny
        overlap = abs(inner_product(self, other)) / np.sqrt(nx * ny)
        return bool(abs(overlap - 1.0) < tol)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for term in self.terms:
            kets = " ".join(f"|{count}>_{mode}" for mode, count in term.occupations) or "|vac>"
            parts.append(f"({term.amplitude:.6g}) {kets}")
        return " + ".join(parts)


def _occupation_sort_key(occ: Occupation):
    return tuple((mode.sort_key(), count) for mode, count in occ)


def make_two_photon_input(m1: ModeIndex, m2: ModeIndex) -> PhotonState:
    """Two single photons, one per path: a†_{m1} b†_{m2} |0>.

    Args:
        m1: Mode of the photon in path A
        m2: Mode of the photon in path B

    Returns:
        Normalized single-term state with both occupations equal to 1

    Raises:
        PathsNotDistinctError: If both photons share a path
    """
    if m1.path == m2.path:
        raise PathsNotDistinctError(
            f"Two-photon input needs one photon per path, both are in path {m1.path.name}"
        )
    occ = canonical_occupation({m1: 1, m2: 1})
    return PhotonState.from_amplitudes({occ: 1.0}, normalize=True)


def is_coincidence(term: OccupationTerm) -> bool:
    """Exactly one photon in a path-A mode and one in a path-B mode."""
    return term.photons_in_path(Path.A) == 1 and term.photons_in_path(Path.B) == 1


def post_select_coincidence(state: PhotonState) -> Tuple[PhotonState, float]:
    """Keep only coincidence terms and renormalize.

    Args:
        state: Two-photon state

    Returns:
        Tuple of (post-selected normalized state, success probability)

    Raises:
        NumericalDomainError: If the state is not a two-photon state
        EmptyPostSelectionError: If no coincidence term survives
    """
    if state.total_photon_number != 2:
        raise NumericalDomainError(
            f"Coincidence post-selection needs 2 photons, got {state.total_photon_number}"
        )

    probability = state.probability_of(is_coincidence)
    kept = {t.occupations: t.amplitude for t in state.terms if is_coincidence(t)}
    if not kept or probability < AMPLITUDE_CUTOFF**2:
        raise EmptyPostSelectionError("No coincidence terms survive post-selection", 0.0)

    logger.debug(f"Post-selection kept {len(kept)}/{len(state)} terms, p={probability:.6g}")
    return PhotonState.from_amplitudes(kept, normalize=True), probability


def inner_product(x: PhotonState, y: PhotonState) -> complex:
    """<x|y> in the normalized occupation-number basis.

    Conjugate-linear in x; basis states are orthonormal, so double
    occupations need no extra factor here.
    """
    xs = x.as_dict()
    total = 0j
    for term in y.terms:
        amp = xs.get(term.occupations)
        if amp is not None:
            total += np.conj(amp) * term.amplitude
    return complex(total)


def superpose(
    states: Iterable[Tuple[complex, PhotonState]], normalize: bool = False
) -> PhotonState:
    """Linear combination sum_k c_k |state_k>.

    Args:
        states: (coefficient, state) pairs
        normalize: Rescale the result to unit norm

    Returns:
        Combined state with merged amplitudes
    """
    merged: Dict[Occupation, complex] = {}
    for coefficient, state in states:
        for term in state.terms:
            previous = merged.get(term.occupations, 0j)
            merged[term.occupations] = previous + coefficient * term.amplitude
    return PhotonState.from_amplitudes(merged, normalize=normalize)
