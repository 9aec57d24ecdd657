"""Creation-operator substitution and two-photon transition amplitudes."""

import itertools
import logging
from collections import Counter, defaultdict
from math import factorial, prod, sqrt
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple

import numpy as np
from thewalrus import perm

from loolsim.fock.modes import ModeIndex
from loolsim.fock.state import PhotonState, canonical_occupation
from loolsim.fock.unitary import ModeUnitary
from loolsim.utils.errors import UnmappedModeError

logger = logging.getLogger(__name__)

ModeImage = Iterable[Tuple[ModeIndex, complex]]
LiftTable = Dict[Tuple[ModeIndex, ModeIndex], complex]


def _occupation_factor(counts: Iterable[int]) -> float:
    return sqrt(prod(factorial(n) for n in counts))


def substitute_modes(state: PhotonState, image: Callable[[ModeIndex], ModeImage]) -> PhotonState:
    """Replace every creation operator a†_m by a linear combination of others.

    Each term is rewritten as a product of creation operators acting on the
    vacuum, every operator is expanded through ``image`` and the product is
    converted back into normalized occupation states.

    Args:
        state: Input state
        image: Maps a mode to the (mode, coefficient) pairs it is substituted by

    Returns:
        Expanded state with merged amplitudes, renormalized only when the
        input was flagged normalized
    """
    cache: Dict[ModeIndex, Tuple[Tuple[ModeIndex, complex], ...]] = {}
    merged: Dict[tuple, complex] = defaultdict(complex)

    for term in state.terms:
        prefactor = term.amplitude / _occupation_factor(n for _, n in term.occupations)
        expansions = []
        for mode in term.creation_list():
            if mode not in cache:
                cache[mode] = tuple(image(mode))
            expansions.append(cache[mode])

        for choice in itertools.product(*expansions):
            coefficient = prefactor
            counts: Counter = Counter()
            for out_mode, c in choice:
                coefficient *= c
                counts[out_mode] += 1
            if coefficient == 0:
                continue
            occ = canonical_occupation(counts)
            merged[occ] += coefficient * _occupation_factor(counts.values())

    result = PhotonState.from_amplitudes(merged, normalize=state.normalized)
    logger.debug(f"Substitution expanded {len(state)} terms into {len(result)}")
    return result


def apply_mode_unitary(
    state: PhotonState,
    u: ModeUnitary,
    mode_map: Optional[Sequence[ModeIndex]] = None,
) -> PhotonState:
    """Evolve a state under a mode unitary.

    Args:
        state: Input state
        u: Unitary; a bare matrix is accepted together with ``mode_map``
        mode_map: Overrides the unitary's own mode labels

    Returns:
        Output state with the same photon number

    Raises:
        NonUnitaryError: If the matrix is not unitary within tolerance
        UnmappedModeError: If an occupied mode has no row in the map
    """
    if not isinstance(u, ModeUnitary):
        if mode_map is None:
            raise UnmappedModeError("A bare matrix needs an explicit mode map")
        u = ModeUnitary(np.asarray(u), tuple(mode_map))
    elif mode_map is not None:
        u = ModeUnitary(u.matrix, tuple(mode_map))

    missing = [m for m in state.modes() if not u.covers(m)]
    if missing:
        raise UnmappedModeError(
            f"Modes {', '.join(str(m) for m in missing)} are not covered by the unitary"
        )
    return substitute_modes(state, u.image)


def two_photon_lift(u: ModeUnitary, input_pair: Tuple[ModeIndex, ModeIndex]) -> LiftTable:
    """Two-photon transition amplitudes from matrix permanents.

    For output modes k1 <= k2 (mode-map order) the amplitude is
    perm(U[[k1, k2], [i1, i2]]) / sqrt(prod n_out! * prod n_in!).

    Args:
        u: Single-photon unitary
        input_pair: The two input modes (may coincide)

    Returns:
        Mapping from every unordered output pair to its amplitude
    """
    i1, i2 = (u.index_of(m) for m in input_pair)
    in_factor = 2 if i1 == i2 else 1
    table: LiftTable = {}
    for k1, k2 in itertools.combinations_with_replacement(range(u.dimension), 2):
        sub = u.matrix[np.ix_([k1, k2], [i1, i2])]
        out_factor = 2 if k1 == k2 else 1
        table[(u.mode_map[k1], u.mode_map[k2])] = complex(perm(sub)) / sqrt(in_factor * out_factor)
    return table


def amplitude_table(state: PhotonState, modes: Sequence[ModeIndex]) -> LiftTable:
    """Read a two-photon state into the same layout two_photon_lift returns."""
    table: LiftTable = {}
    for k1, k2 in itertools.combinations_with_replacement(range(len(modes)), 2):
        m1, m2 = modes[k1], modes[k2]
        occupation = {m1: 2} if k1 == k2 else {m1: 1, m2: 1}
        table[(m1, m2)] = state.amplitude(occupation)
    return table


def lift_state(u: ModeUnitary, input_pair: Tuple[ModeIndex, ModeIndex]) -> PhotonState:
    """Output state of a†_{m1} a†_{m2}|0> (normalized) built from the permanent table."""
    amplitudes = {}
    for (m1, m2), amp in two_photon_lift(u, input_pair).items():
        occupation = {m1: 2} if m1 == m2 else {m1: 1, m2: 1}
        amplitudes[canonical_occupation(occupation)] = amp
    return PhotonState.from_amplitudes(amplitudes, normalize=True)
