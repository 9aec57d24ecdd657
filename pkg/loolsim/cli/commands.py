"""Command handlers for the command-line front end.

Each handler turns a validated RunConfig into a CommandResult: scalar
summary values, a JSON document and CSV rows with unit-bearing headers.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from loolsim.cli.config import RunConfig
from loolsim.fock.evolution import two_photon_lift
from loolsim.fock.modes import Path
from loolsim.measurement.counts import records_to_csv_rows, records_to_json, simulate_counts
from loolsim.measurement.density import (
    BASIS_LABELS,
    DensityMatrix,
    chi_density,
    chi_ket,
    classically_correlated,
    crosstalk_state,
    dephased_chi,
    white_noise,
)
from loolsim.measurement.eraser import conditional_probability, eraser_scan
from loolsim.measurement.kets import Subspace, antisymmetric_projector, symmetric_projector
from loolsim.measurement.witness import witness_fidelity, witness_settings
from loolsim.optics.elements import slm_after_beamsplitter
from loolsim.spectral.coincidence import coincidence_prob_entangled
from loolsim.spectral.models import JointSpectralAmplitude, SpectralModel
from loolsim.spectral.scan import InterferenceSource, hom_scan
from loolsim.spectral.schmidt import coincidence_prob_schmidt, schmidt_decompose
from loolsim.tomography.pipeline import tomo_pipeline

logger = logging.getLogger(__name__)

Table = Tuple[List[str], List[List[Any]]]


@dataclass
class CommandResult:
    """Output of one command.

    Attributes:
        command: Subcommand name
        summary: Scalar values shown in the summary table
        document: JSON body (metadata is added by the writer)
        csv: Header and rows for CSV output
        vectors: Named complex vectors printed after the summary
    """

    command: str
    summary: Dict[str, Any]
    document: Dict[str, Any]
    csv: Table
    vectors: Dict[str, Tuple[List[str], np.ndarray]] = field(default_factory=dict)


def _complex_json(values: Sequence[complex]) -> Dict[str, List[float]]:
    values = np.asarray(values, dtype=complex)
    return {"real": values.real.tolist(), "imag": values.imag.tolist()}


def _zero_delay_index(tau: np.ndarray) -> int:
    return int(np.argmin(np.abs(tau)))


def build_source(config: RunConfig) -> InterferenceSource:
    """Identical-spectrum photon pair for delay scans."""
    if config.get("profile") == "sinc":
        model = SpectralModel.sinc(config.get("width"))
    else:
        model = SpectralModel.gaussian(config.get("sigma"))
    return InterferenceSource.identical(model, mode_overlap=config.get("eta"))


def build_state(config: RunConfig) -> DensityMatrix:
    """Two-qubit state selected by ``--state``."""
    subspace = config.subspace
    name = config.get("state")
    if name == "mixed":
        return classically_correlated(subspace)
    if name == "white":
        return white_noise(subspace)
    if name == "crosstalk":
        return crosstalk_state(config.get("eta"), subspace, config.get("r"))
    return chi_density(subspace)


class ExperimentCommands:
    """Handlers for the six subcommands."""

    def handle_hom_scan(self, config: RunConfig) -> CommandResult:
        """Coincidence probability versus delay for one spectral profile."""
        source = build_source(config)
        tau_range = (config.get("tau_min"), config.get("tau_max"))
        result = hom_scan(source, tau_range, config.get("points"))
        center = _zero_delay_index(result.tau)
        summary = {
            "source": source.describe(),
            "visibility": result.visibility.value,
            "shape": result.visibility.kind,
            "baseline": result.visibility.baseline,
            "p_at_zero_delay": float(result.probability[center]),
        }
        document = {
            "tau_seconds": result.tau.tolist(),
            "probability": result.probability.tolist(),
            "visibility": {
                "value": result.visibility.value,
                "kind": result.visibility.kind,
                "baseline": result.visibility.baseline,
                "extremum": result.visibility.extremum,
            },
            "source": source.describe(),
        }
        rows = [[float(t), float(p)] for t, p in zip(result.tau, result.probability)]
        return CommandResult("hom-scan", summary, document, (["tau_seconds", "probability"], rows))

    def handle_eraser(self, config: RunConfig) -> CommandResult:
        """Symmetric and antisymmetric eraser curves over the delay range."""
        source = build_source(config)
        subspace = config.subspace
        tau_range = (config.get("tau_min"), config.get("tau_max"))
        points = config.get("points")
        sym = eraser_scan(source, symmetric_projector(subspace), tau_range, points)
        asym = eraser_scan(source, antisymmetric_projector(subspace), tau_range, points)
        center = _zero_delay_index(sym.tau)
        heralded = dephased_chi(float(sym.coherence[center]), subspace)
        summary = {
            "subspace": str(subspace),
            "p_sym_at_zero_delay": float(sym.values[center]),
            "p_asym_at_zero_delay": float(asym.values[center]),
            "p_sym_at_edge": float(sym.values[-1]),
            "p_asym_at_edge": float(asym.values[-1]),
            "conditional_asym_at_zero_delay": conditional_probability(
                heralded, antisymmetric_projector(subspace)
            ),
        }
        document = {
            "subspace": str(subspace),
            "tau_seconds": sym.tau.tolist(),
            "p_sym": sym.values.tolist(),
            "p_asym": asym.values.tolist(),
            "coherence": sym.coherence.tolist(),
            "source": source.describe(),
        }
        header = ["tau_seconds", "p_sym", "p_asym", "coherence"]
        rows = [
            [float(t), float(s), float(a), float(g)]
            for t, s, a, g in zip(sym.tau, sym.values, asym.values, sym.coherence)
        ]
        return CommandResult("eraser", summary, document, (header, rows))

    def handle_witness(self, config: RunConfig) -> CommandResult:
        """Simulated MUB coincidences and the witness fidelity."""
        rho = build_state(config)
        records = simulate_counts(
            rho,
            witness_settings(rho.subspace),
            config.get("counts"),
            config.seed,
            config.get("background"),
        )
        result = witness_fidelity(records, n_bootstrap=config.get("bootstrap"), seed=config.seed)
        exact = rho.fidelity_with(chi_ket(rho.subspace))
        summary = {
            "state": config.get("state"),
            "fidelity": result.fidelity,
            "sigma": result.sigma,
            "exact_fidelity": exact,
        }
        summary.update({f"<{k}{k}>": v for k, v in sorted(result.correlations.items())})
        document = {
            "fidelity": result.fidelity,
            "sigma": result.sigma,
            "exact_fidelity": exact,
            "correlations": result.correlations,
            "records": records_to_json(records),
        }
        rows = records_to_csv_rows(records)
        return CommandResult("witness", summary, document, (rows[0], rows[1:]))

    def handle_tomo(self, config: RunConfig) -> CommandResult:
        """Simulated 36-setting tomography with projection onto physical states."""
        rho = build_state(config)
        rho_hat, estimate, report = tomo_pipeline(
            rho,
            config.get("counts"),
            config.seed,
            n_bootstrap=config.get("bootstrap"),
            weighted=config.get("weighted"),
            background=config.get("background"),
        )
        summary = {
            "state": config.get("state"),
            "fidelity": estimate,
            "sigma": report.sigma,
            "purity": rho_hat.purity(),
            "raw_negativity": report.negativity,
        }
        document = report.to_dict()
        document["records"] = records_to_json(report.records)
        labels = [label.replace("l", str(rho.subspace.index)) for label in BASIS_LABELS]
        matrix = rho_hat.matrix
        rows = [
            [labels[i], labels[j], float(matrix[i, j].real), float(matrix[i, j].imag)]
            for i in range(4)
            for j in range(4)
        ]
        return CommandResult("tomo", summary, document, (["row", "column", "real", "imag"], rows))

    def handle_schmidt(self, config: RunConfig) -> CommandResult:
        """Schmidt decomposition of a double-Gaussian joint spectrum."""
        jsa = JointSpectralAmplitude.double_gaussian(
            config.get("sigma_plus"),
            config.get("sigma_minus"),
            points=config.get("grid_points"),
            half_width=config.get("half_width"),
        )
        decomposition = schmidt_decompose(jsa, rank_cutoff=config.get("rank"))
        coefficients = decomposition.coefficients
        summary = {
            "rank": decomposition.rank,
            "schmidt_number": decomposition.schmidt_number,
            "truncation_weight": decomposition.truncation_weight,
            "p_at_zero_delay": coincidence_prob_schmidt(decomposition, 0.0),
            "p_at_zero_delay_direct": coincidence_prob_entangled(jsa, 0.0),
        }
        document = {
            "omega_rad_per_s": decomposition.omega.tolist(),
            "coefficients": coefficients.tolist(),
            "schmidt_number": decomposition.schmidt_number,
            "truncation_weight": decomposition.truncation_weight,
            "coincidence_probability_at_zero_delay": summary["p_at_zero_delay"],
        }
        rows = [[k, float(u), float(u**2)] for k, u in enumerate(coefficients)]
        return CommandResult("schmidt", summary, document, (["k", "coefficient", "weight"], rows))

    def handle_lift(self, config: RunConfig) -> CommandResult:
        """Single-photon images and the two-photon lift of a_l1 b_l2."""
        subspace: Subspace = config.subspace
        u = slm_after_beamsplitter(
            config.get("theta"), subspace.labels, config.get("r"), subspace.basis_tag
        )
        first, second = subspace.mode(Path.A, 0), subspace.mode(Path.B, 1)
        image_first = u.matrix[:, u.index_of(first)]
        image_second = u.matrix[:, u.index_of(second)]
        total = image_first + image_second
        # Second column with its path-A entries zeroed.
        on_a = np.array([mode.path == Path.A for mode in u.mode_map])
        truncated = image_first + np.where(on_a, 0.0, image_second)
        modes = [str(mode) for mode in u.mode_map]

        table = two_photon_lift(u, (first, second))
        lift_rows = []
        coincidence = 0.0
        for (m1, m2), amplitude in table.items():
            probability = abs(amplitude) ** 2
            if m1.path != m2.path:
                coincidence += probability
            lift_rows.append([str(m1), str(m2), amplitude.real, amplitude.imag, probability])

        summary = {
            "theta": config.get("theta"),
            "r": config.get("r"),
            "input": f"{first} + {second}",
            "coincidence_probability": coincidence,
        }
        document = {
            "modes": modes,
            "image_first": _complex_json(image_first),
            "image_second": _complex_json(image_second),
            "image_sum": _complex_json(total),
            "image_sum_truncated": _complex_json(truncated),
            "lift": [
                {"first": r[0], "second": r[1], "real": r[2], "imag": r[3], "probability": r[4]}
                for r in lift_rows
            ],
            "coincidence_probability": coincidence,
        }
        header = ["first_mode", "second_mode", "amplitude_real", "amplitude_imag", "probability"]
        vectors = {
            f"U {first}": (modes, image_first),
            f"U {second}": (modes, image_second),
            "sum": (modes, total),
        }
        return CommandResult("lift", summary, document, (header, lift_rows), vectors)
