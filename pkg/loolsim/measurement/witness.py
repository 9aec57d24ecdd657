"""Fidelity witness from correlations in three mutually unbiased bases.

For the antisymmetric target (|l0> - |0l>)/sqrt(2) the fidelity is
F = (1 - <XX> - <YY> - <ZZ>) / 4, where MUB 1 measures Z, MUB 2 measures X
and MUB 3 measures Y. Each correlation is estimated from the four
coincidence counts of its MUB, normalized within that MUB.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from loolsim.measurement.bootstrap import poisson_bootstrap
from loolsim.measurement.counts import CoincidenceRecord, Setting
from loolsim.measurement.kets import Subspace, locate_in_mubs, mub_settings
from loolsim.utils.constants import BOOTSTRAP_RESAMPLES
from loolsim.utils.errors import MissingSettingError, NumericalDomainError

logger = logging.getLogger(__name__)

MUB_OBSERVABLES = ("Z", "X", "Y")


def witness_settings(subspace: Subspace = Subspace()) -> List[Setting]:
    """The 12 settings with both parties in the same MUB."""
    return [(a, b) for basis in mub_settings(subspace) for a in basis for b in basis]


def mub_count_tables(records: Sequence[CoincidenceRecord]) -> np.ndarray:
    """3 x 2 x 2 table of counts indexed by (MUB, Alice outcome, Bob outcome).

    Records mixing two MUBs are ignored; repeated settings are summed.

    Raises:
        MissingSettingError: If any of the 12 same-MUB settings is absent
    """
    tables = np.zeros((3, 2, 2))
    seen = np.zeros((3, 2, 2), dtype=bool)
    for record in records:
        try:
            basis_a, outcome_a = locate_in_mubs(record.alice)
            basis_b, outcome_b = locate_in_mubs(record.bob)
        except NumericalDomainError:
            continue
        if basis_a != basis_b:
            continue
        tables[basis_a, outcome_a, outcome_b] += record.counts
        seen[basis_a, outcome_a, outcome_b] = True

    if not seen.all():
        missing = ", ".join(f"MUB {k + 1} ({i}, {j})" for k, i, j in zip(*np.nonzero(~seen)))
        raise MissingSettingError(f"Witness needs all 12 same-MUB settings, missing {missing}")
    return tables


def mub_correlations(records: Sequence[CoincidenceRecord]) -> Dict[str, float]:
    """Correlation <OO> per MUB from counts normalized within that MUB."""
    tables = mub_count_tables(records)
    signs = np.array([[1.0, -1.0], [-1.0, 1.0]])
    correlations = {}
    for k, name in enumerate(MUB_OBSERVABLES):
        total = tables[k].sum()
        if total <= 0:
            raise MissingSettingError(f"MUB {k + 1} registered no coincidences")
        correlations[name] = float(np.sum(signs * tables[k]) / total)
    return correlations


def fidelity_from_correlations(correlations: Dict[str, float]) -> float:
    return (1.0 - correlations["X"] - correlations["Y"] - correlations["Z"]) / 4.0


def witness_point_estimate(records: Sequence[CoincidenceRecord]) -> float:
    """F without error bar."""
    return fidelity_from_correlations(mub_correlations(records))


@dataclass(frozen=True)
class WitnessResult:
    """Witness fidelity with its bootstrap standard deviation."""

    fidelity: float
    sigma: float
    correlations: Dict[str, float] = field(default_factory=dict)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.fidelity, self.sigma)


def witness_fidelity(
    records: Sequence[CoincidenceRecord],
    n_bootstrap: int = BOOTSTRAP_RESAMPLES,
    seed: int = 0,
) -> WitnessResult:
    """Fidelity with the antisymmetric target from MUB coincidence records.

    Args:
        records: Records covering the 12 same-MUB settings
        n_bootstrap: Poisson resamples for the error bar (0 skips it)
        seed: Bootstrap seed

    Returns:
        WitnessResult(fidelity, sigma, correlations)
    """
    correlations = mub_correlations(records)
    fidelity = fidelity_from_correlations(correlations)
    sigma = 0.0
    if n_bootstrap > 0:
        sigma = poisson_bootstrap(records, witness_point_estimate, n_bootstrap, seed).std
    logger.info(f"Witness fidelity {fidelity:.4f} +/- {sigma:.4f}")
    return WitnessResult(fidelity, sigma, correlations)
