"""Tests for configuration layering, routing and the command-line front end."""

import csv
import io
import json

import numpy as np
import pytest
from rich.console import Console

from loolsim.cli import CommandResult, CommandRouter, RunConfig, exit_code_for, load_defaults, run
from loolsim.utils.constants import EXIT_CONFIG_ERROR, EXIT_NUMERICAL_ERROR, EXIT_OK
from loolsim.utils.errors import ConfigError, ModeTagError
from simulator import main


def read_json(path):
    with open(path) as f:
        return json.load(f)


def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


class TestRunConfig:
    """Test parameter layering and validation."""

    def test_builtin_defaults_without_file(self, tmp_path):
        """Test the fallback when no default file exists."""
        defaults = load_defaults(tmp_path / "missing.json")
        assert defaults["parameters"]["l"] == 3
        assert defaults["metadata"]["coincidence_window_s"] == pytest.approx(0.2e-9)

    def test_layering_order(self, tmp_path):
        """Test defaults < YAML file < flags."""
        config_file = tmp_path / "run.yaml"
        config_file.write_text("sigma: 2.0\npoints: 11\n")
        config = RunConfig.from_sources("hom-scan", config_file, {"points": 21, "eta": None})
        assert config.get("sigma") == 2.0
        assert config.get("points") == 21
        assert config.get("eta") == 1.0

    def test_json_file(self, tmp_path):
        """Test a JSON parameter file."""
        config_file = tmp_path / "run.json"
        config_file.write_text(json.dumps({"theta": 0.5, "r": 0.3}))
        config = RunConfig.from_sources("lift", config_file)
        assert (config.get("theta"), config.get("r")) == (0.5, 0.3)

    def test_unknown_file_key(self, tmp_path):
        """Test rejection of keys nobody knows."""
        config_file = tmp_path / "run.yaml"
        config_file.write_text("sigmaa: 2.0\n")
        with pytest.raises(ConfigError):
            RunConfig.from_sources("hom-scan", config_file)

    def test_missing_file(self, tmp_path):
        """Test a config path that does not exist."""
        with pytest.raises(ConfigError):
            RunConfig.from_sources("hom-scan", tmp_path / "nope.yaml")

    def test_non_mapping_file(self, tmp_path):
        """Test a YAML file that is not a mapping."""
        config_file = tmp_path / "run.yaml"
        config_file.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            RunConfig.from_sources("hom-scan", config_file)

    @pytest.mark.parametrize(
        "command, overrides",
        [
            ("hom-scan", {"sigma": -1.0}),
            ("witness", {"eta": 1.5}),
            ("lift", {"r": 1.2}),
            ("hom-scan", {"tau_min": 3.0, "tau_max": 1.0}),
            ("witness", {"counts": 0}),
            ("tomo", {"state": "bell"}),
            ("eraser", {"points": 2.5}),
        ],
    )
    def test_invalid_values(self, command, overrides):
        """Test out-of-range and badly typed values."""
        with pytest.raises(ConfigError):
            RunConfig.from_sources(command, overrides=overrides)

    def test_parameters_of_other_commands_rejected(self):
        """Test that a command only takes its own parameters."""
        with pytest.raises(ConfigError):
            RunConfig("hom-scan", {"r": 0.5})

    def test_unknown_command(self):
        """Test rejection of an unknown command name."""
        with pytest.raises(ConfigError):
            RunConfig.from_sources("teleport")

    def test_seed_from_environment(self):
        """Test the environment fallback and its precedence."""
        environ = {"LOOLSIM_SEED": "11"}
        assert RunConfig.from_sources("witness", environ=environ).seed == 11
        explicit = RunConfig.from_sources("witness", overrides={"seed": 4}, environ=environ)
        assert explicit.seed == 4
        assert RunConfig.from_sources("witness", environ={}).seed == 0

    def test_subspace_and_output_path(self):
        """Test derived properties."""
        config = RunConfig.from_sources("eraser", overrides={"basis": "radial", "p": 2})
        assert str(config.subspace) == "p=2"
        assert str(config.output_path) == "results/eraser.json"
        assert "out" not in config.describe()


class TestRouter:
    """Test handler registration and dispatch."""

    def test_default_handlers(self):
        """Test that every command has a handler."""
        router = CommandRouter()
        assert set(router.handlers) == {"hom-scan", "eraser", "witness", "tomo", "schmidt", "lift"}

    def test_register_handler(self, tmp_path):
        """Test dispatch to a replacement handler."""
        router = CommandRouter()
        calls = []

        def handler(config):
            calls.append(config.command)
            return CommandResult("lift", {"answer": 42}, {"answer": 42}, (["answer"], [[42]]))

        router.register_handler("lift", handler)
        out = tmp_path / "lift.json"
        config = RunConfig.from_sources("lift", overrides={"out": str(out)})
        console = Console(file=io.StringIO())
        assert run(config, router, console) == EXIT_OK
        assert calls == ["lift"]
        assert read_json(out)["result"] == {"answer": 42}
        assert "answer" in console.file.getvalue()

    def test_missing_handler(self):
        """Test dispatch of a command without a handler."""
        router = CommandRouter()
        del router.handlers["tomo"]
        with pytest.raises(ConfigError):
            router.dispatch(RunConfig.from_sources("tomo"))

    def test_exit_codes(self):
        """Test the mapping from error class to exit status."""
        assert exit_code_for(ConfigError("x")) == EXIT_CONFIG_ERROR
        assert exit_code_for(ModeTagError("x")) == EXIT_NUMERICAL_ERROR


class TestMain:
    """Test complete runs through the entry point."""

    def test_eraser_csv(self, tmp_path):
        """Test eraser endpoints in the CSV output."""
        out = tmp_path / "eraser.csv"
        status = main(["eraser", "--l", "3", "--format", "csv", "--out", str(out)])
        assert status == EXIT_OK
        rows = read_csv(out)
        assert rows[0] == ["tau_seconds", "p_sym", "p_asym", "coherence"]
        values = np.array(rows[1:], dtype=float)
        center = int(np.argmin(np.abs(values[:, 0])))
        assert values[center, 1] == pytest.approx(0.0, abs=1e-9)
        assert values[center, 2] == pytest.approx(0.5, abs=1e-9)
        for edge in (0, -1):
            assert values[edge, 1] == pytest.approx(0.25, abs=1e-4)
            assert values[edge, 2] == pytest.approx(0.25, abs=1e-4)

    def test_hom_scan_json(self, tmp_path):
        """Test the visibility of a partially overlapping pair."""
        out = tmp_path / "hom.json"
        assert main(["hom-scan", "--eta", "0.85", "--out", str(out)]) == EXIT_OK
        document = read_json(out)
        assert document["metadata"]["command"] == "hom-scan"
        assert document["result"]["visibility"]["value"] == pytest.approx(0.85, abs=1e-4)
        assert len(document["result"]["tau_seconds"]) == 101

    def test_hom_scan_csv_header(self, tmp_path):
        """Test the HOM CSV columns."""
        out = tmp_path / "hom.csv"
        assert main(["hom-scan", "--points", "5", "--format", "csv", "--out", str(out)]) == 0
        rows = read_csv(out)
        assert rows[0] == ["tau_seconds", "probability"]
        assert len(rows) == 6

    def test_witness_ideal(self, tmp_path):
        """Test the witness on the ideal state."""
        out = tmp_path / "witness.json"
        argv = ["witness", "--state", "ideal", "--counts", "100000", "--seed", "7"]
        assert main(argv + ["--bootstrap", "50", "--out", str(out)]) == EXIT_OK
        result = read_json(out)["result"]
        assert result["fidelity"] == pytest.approx(1.0, abs=0.005)
        assert result["sigma"] > 0
        assert len(result["records"]) == 12

    def test_same_seed_same_bytes(self, tmp_path):
        """Test byte-identical output for repeated runs."""
        paths = [tmp_path / "first.json", tmp_path / "second.json"]
        for path in paths:
            argv = ["tomo", "--state", "crosstalk", "--eta", "0.9", "--counts", "1000"]
            assert main(argv + ["--seed", "5", "--bootstrap", "5", "--out", str(path)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_tomo_csv(self, tmp_path):
        """Test the density-matrix CSV rows."""
        out = tmp_path / "tomo.csv"
        argv = ["tomo", "--counts", "1000", "--bootstrap", "0", "--format", "csv"]
        assert main(argv + ["--out", str(out)]) == EXIT_OK
        rows = read_csv(out)
        assert rows[0] == ["row", "column", "real", "imag"]
        assert len(rows) == 17
        assert rows[1][:2] == ["00", "00"]

    def test_schmidt(self, tmp_path):
        """Test the Schmidt number of the default double Gaussian."""
        out = tmp_path / "schmidt.json"
        assert main(["schmidt", "--out", str(out)]) == EXIT_OK
        document = read_json(out)
        assert document["result"]["schmidt_number"] == pytest.approx(5 / 3, abs=1e-3)

    def test_lift_vector(self, tmp_path):
        """Test the summed single-photon images."""
        out = tmp_path / "lift.json"
        theta = 0.7
        argv = ["lift", "--theta", str(theta), "--r", "0.5", "--out", str(out)]
        assert main(argv) == EXIT_OK
        document = read_json(out)["result"]
        c, s = np.cos(theta), np.sin(theta)
        expected = np.array([c + 1j * s, c - 1j * s, c + 1j * s, 1j * s - c]) / np.sqrt(2)
        image_sum = document["image_sum"]
        image = np.array(image_sum["real"]) + 1j * np.array(image_sum["imag"])
        np.testing.assert_allclose(image, expected, atol=1e-12)
        truncated_sum = document["image_sum_truncated"]
        truncated = np.array(truncated_sum["real"]) + 1j * np.array(truncated_sum["imag"])
        expected_truncated = np.array([c, c - 1j * s, 1j * s, 1j * s - c]) / np.sqrt(2)
        np.testing.assert_allclose(truncated, expected_truncated, atol=1e-12)
        total = sum(entry["probability"] for entry in document["lift"])
        assert total == pytest.approx(1.0)

    def test_radial_p_zero(self, tmp_path):
        """Test exit status 3 for the Gaussian radial index."""
        out = tmp_path / "lift.json"
        assert main(["lift", "--basis", "radial", "--p", "0", "--out", str(out)]) == 3
        assert not out.exists()

    def test_unwritable_output_exit_2(self, tmp_path):
        """Test exit status 2 when the output directory sits under a regular file."""
        blocker = tmp_path / "file"
        blocker.write_text("")
        out = blocker / "sub" / "schmidt.json"
        assert main(["schmidt", "--out", str(out)]) == EXIT_CONFIG_ERROR
        assert blocker.read_text() == ""

    def test_witness_low_counts(self, tmp_path):
        """Test a finite error bar when resamples leave a MUB empty."""
        successes = 0
        for seed in range(5):
            out = tmp_path / f"witness{seed}.json"
            argv = ["witness", "--counts", "3", "--bootstrap", "200", "--seed", str(seed)]
            if main(argv + ["--out", str(out)]) != EXIT_OK:
                continue
            successes += 1
            assert np.isfinite(read_json(out)["result"]["sigma"])
        assert successes > 0

    @pytest.mark.parametrize(
        "argv",
        [
            ["hom-scan", "--sigma", "-1"],
            ["witness", "--eta", "1.5"],
            ["lift", "--r", "2"],
        ],
    )
    def test_invalid_parameters_exit_2(self, argv, tmp_path):
        """Test exit status 2 for configuration errors."""
        assert main(argv + ["--out", str(tmp_path / "x.json")]) == EXIT_CONFIG_ERROR

    def test_bad_config_file_exit_2(self, tmp_path):
        """Test exit status 2 for an unknown key in the config file."""
        config_file = tmp_path / "bad.yaml"
        config_file.write_text("colour: blue\n")
        assert main(["lift", "--config", str(config_file)]) == EXIT_CONFIG_ERROR

    def test_foreign_flag(self):
        """Test that a flag of another command is a usage error."""
        with pytest.raises(SystemExit) as excinfo:
            main(["hom-scan", "--r", "0.5"])
        assert excinfo.value.code == 2
