"""Coincidence-count records, Poisson count simulation and record codecs.

CSV column order (stable):
    alice, bob, alice_c0_re, alice_c0_im, alice_c1_re, alice_c1_im,
    bob_c0_re, bob_c0_im, bob_c1_re, bob_c1_im,
    basis_tag, subspace_index, counts, integration_window_s
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from loolsim.fock.modes import BasisTag
from loolsim.measurement.density import DensityMatrix
from loolsim.measurement.kets import Ket2, Subspace
from loolsim.utils.constants import COINCIDENCE_WINDOW_S
from loolsim.utils.errors import ConfigError, NumericalDomainError, SubspaceMismatchError

logger = logging.getLogger(__name__)

Setting = Tuple[Ket2, Ket2]

CSV_COLUMNS = [
    "alice",
    "bob",
    "alice_c0_re",
    "alice_c0_im",
    "alice_c1_re",
    "alice_c1_im",
    "bob_c0_re",
    "bob_c0_im",
    "bob_c1_re",
    "bob_c1_im",
    "basis_tag",
    "subspace_index",
    "counts",
    "integration_window_s",
]


@dataclass(frozen=True)
class CoincidenceRecord:
    """Coincidences registered for one measurement setting."""

    alice: Ket2
    bob: Ket2
    counts: int
    integration_window: float = COINCIDENCE_WINDOW_S

    def __post_init__(self):
        if self.counts < 0:
            raise NumericalDomainError(f"Counts must be non-negative, got {self.counts}")
        object.__setattr__(self, "counts", int(self.counts))

    @property
    def setting(self) -> Setting:
        return (self.alice, self.bob)

    def with_counts(self, counts: int) -> "CoincidenceRecord":
        return CoincidenceRecord(self.alice, self.bob, counts, self.integration_window)


def born_probability(rho: DensityMatrix, alice: Ket2, bob: Ket2) -> float:
    """Tr(rho |a><a| (x) |b><b|), clipped at zero."""
    if alice.subspace != rho.subspace or bob.subspace != rho.subspace:
        raise SubspaceMismatchError("Setting kets and state live on different subspaces")
    return max(0.0, rho.expectation(np.kron(alice.projector(), bob.projector())))


def simulate_counts(
    rho: DensityMatrix,
    settings: Sequence[Setting],
    total_per_setting: int,
    seed: int,
    background: float = 0.0,
) -> List[CoincidenceRecord]:
    """Draw Poisson coincidence counts for every setting.

    Each setting has its own child generator spawned from ``seed``, so the
    records do not depend on evaluation order.

    Args:
        rho: True state
        settings: (Alice ket, Bob ket) pairs
        total_per_setting: Mean number of heralded pairs per setting
        seed: Seed of the generator tree
        background: Mean accidental coincidences added per setting

    Returns:
        One CoincidenceRecord per setting, in input order
    """
    if total_per_setting <= 0:
        raise NumericalDomainError(f"Counts per setting must be positive, got {total_per_setting}")
    if background < 0:
        raise NumericalDomainError(f"Background rate must be non-negative, got {background}")

    children = np.random.SeedSequence(seed).spawn(len(settings))
    records = []
    for (alice, bob), child in zip(settings, children):
        mean = total_per_setting * born_probability(rho, alice, bob) + background
        counts = int(np.random.default_rng(child).poisson(mean))
        records.append(CoincidenceRecord(alice, bob, counts))
    logger.debug(
        f"Simulated {len(records)} settings at {total_per_setting} pairs/setting, seed {seed}"
    )
    return records


def expected_records(
    rho: DensityMatrix, settings: Sequence[Setting], total_per_setting: int
) -> List[CoincidenceRecord]:
    """Noise-free records: counts are the rounded Born-rule means."""
    return [
        CoincidenceRecord(a, b, int(round(total_per_setting * born_probability(rho, a, b))))
        for a, b in settings
    ]


def _ket_fields(ket: Ket2) -> List[float]:
    return [ket.c0.real, ket.c0.imag, ket.c1.real, ket.c1.imag]


def records_to_csv_rows(records: Sequence[CoincidenceRecord]) -> List[List[Any]]:
    """Header row followed by one row per record."""
    rows: List[List[Any]] = [list(CSV_COLUMNS)]
    for record in records:
        subspace = record.alice.subspace
        rows.append(
            [record.alice.label(), record.bob.label()]
            + _ket_fields(record.alice)
            + _ket_fields(record.bob)
            + [subspace.basis_tag.name.lower(), subspace.index]
            + [record.counts, record.integration_window]
        )
    return rows


def _ket_json(ket: Ket2) -> Dict[str, Any]:
    return {"name": ket.name, "c0": [ket.c0.real, ket.c0.imag], "c1": [ket.c1.real, ket.c1.imag]}


def records_to_json(records: Sequence[CoincidenceRecord]) -> List[Dict[str, Any]]:
    """JSON-ready dictionaries, one per record."""
    payload = []
    for record in records:
        subspace = record.alice.subspace
        payload.append(
            {
                "alice": _ket_json(record.alice),
                "bob": _ket_json(record.bob),
                "basis_tag": subspace.basis_tag.name.lower(),
                "subspace_index": subspace.index,
                "counts": record.counts,
                "integration_window_s": record.integration_window,
            }
        )
    return payload


def records_from_json(payload: Sequence[Dict[str, Any]]) -> List[CoincidenceRecord]:
    """Inverse of records_to_json.

    Raises:
        ConfigError: If an entry lacks a required field
    """
    records = []
    for index, entry in enumerate(payload):
        try:
            subspace = Subspace(BasisTag[entry["basis_tag"].upper()], entry["subspace_index"])
            kets = []
            for party in ("alice", "bob"):
                ket = entry[party]
                c0, c1 = complex(*ket["c0"]), complex(*ket["c1"])
                kets.append(Ket2(c0, c1, subspace, ket.get("name", "")))
            records.append(
                CoincidenceRecord(
                    kets[0],
                    kets[1],
                    entry["counts"],
                    entry.get("integration_window_s", COINCIDENCE_WINDOW_S),
                )
            )
        except (KeyError, TypeError) as e:
            raise ConfigError(f"Malformed coincidence record #{index}: {e}") from e
    return records
