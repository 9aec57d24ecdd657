"""Parametric Poisson bootstrap over coincidence records."""

import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence

import numpy as np

from loolsim.measurement.counts import CoincidenceRecord
from loolsim.utils.constants import BOOTSTRAP_RESAMPLES, BOOTSTRAP_STREAM
from loolsim.utils.errors import MissingSettingError, NumericalDomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BootstrapResult:
    """Statistic over resampled data sets."""

    samples: np.ndarray
    dropped: int = 0

    @property
    def mean(self) -> float:
        if self.samples.size == 0:
            return float("nan")
        return float(np.mean(self.samples))

    @property
    def std(self) -> float:
        """Sample standard deviation (ddof=1)."""
        if self.samples.size < 2:
            return 0.0
        return float(np.std(self.samples, ddof=1))


def resample_records(
    records: Sequence[CoincidenceRecord], rng: np.random.Generator
) -> List[CoincidenceRecord]:
    """Redraw every count from a Poisson law with the observed count as mean."""
    counts = rng.poisson([record.counts for record in records])
    return [record.with_counts(int(n)) for record, n in zip(records, counts)]


def poisson_bootstrap(
    records: Sequence[CoincidenceRecord],
    statistic: Callable[[Sequence[CoincidenceRecord]], float],
    n_resamples: int = BOOTSTRAP_RESAMPLES,
    seed: int = 0,
) -> BootstrapResult:
    """Evaluate a statistic on Poisson-resampled copies of the records.

    Resample k uses the k-th child of SeedSequence([seed, BOOTSTRAP_STREAM]),
    so results are reproducible and independent of evaluation order.
    Resamples on which the statistic raises MissingSettingError (a whole
    group redrawn to zero counts) are dropped and counted.

    Args:
        records: Observed records
        statistic: Function of a record list
        n_resamples: Number of resampled data sets
        seed: Seed of the generator tree

    Returns:
        BootstrapResult holding one statistic value per kept resample
    """
    if n_resamples < 1:
        raise NumericalDomainError(f"Bootstrap needs at least one resample, got {n_resamples}")
    children = np.random.SeedSequence([seed, BOOTSTRAP_STREAM]).spawn(n_resamples)
    values = []
    dropped = 0
    for child in children:
        try:
            values.append(statistic(resample_records(records, np.random.default_rng(child))))
        except MissingSettingError:
            dropped += 1

    result = BootstrapResult(np.array(values, dtype=float), dropped)
    if dropped:
        log = logger.warning if len(values) < 2 else logger.info
        log(f"Bootstrap dropped {dropped} of {n_resamples} resamples with an empty group")
    logger.debug(f"Bootstrap over {len(values)} resamples: std {result.std:.3e}")
    return result
