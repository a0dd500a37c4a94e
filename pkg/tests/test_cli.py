"""Tests for the qfidelity command-line interface."""

import json

import numpy as np
import pytest

from qfidelity import __version__
from qfidelity.cli import EXIT_COMPUTATION, EXIT_INPUT, EXIT_OK, cli
from qfidelity.const import MAX_DEPOLARIZING_QUBITS
from tests.helpers import pairs, spec_document


class TestGlobalOptions:
    """Tests for group-level options."""

    def test_version(self, cli_runner):
        result = cli_runner.invoke(cli, ["--version"])
        assert result.exit_code == EXIT_OK
        assert __version__ in result.output

    def test_help_lists_commands(self, cli_runner):
        result = cli_runner.invoke(cli, ["--help"])
        assert result.exit_code == EXIT_OK
        for command in ("avg", "mc", "protocol", "check"):
            assert command in result.output

    def test_invalid_tolerance_env(self, cli_runner, identity_spec):
        result = cli_runner.invoke(cli, ["avg", str(identity_spec)], env={"QFIDELITY_TOL": "-3"})
        assert result.exit_code == EXIT_INPUT
        assert "QFIDELITY_TOL" in result.stderr

    def test_verbose_enables_debug(self, cli_runner, identity_spec):
        result = cli_runner.invoke(cli, ["--verbose", "avg", str(identity_spec)])
        assert result.exit_code == EXIT_OK


class TestAvg:
    """Tests for the avg command."""

    def test_identity(self, cli_runner, identity_spec):
        result = cli_runner.invoke(cli, ["avg", str(identity_spec)])
        assert result.exit_code == EXIT_OK
        report = json.loads(result.stdout)
        assert report["value"] == pytest.approx(1.0)
        assert report["method"] == "closed_form"
        assert report["format_version"] == 1

    def test_depolarizing(self, cli_runner, depolarizing_spec):
        result = cli_runner.invoke(cli, ["avg", str(depolarizing_spec(0.4))])
        assert result.exit_code == EXIT_OK
        assert json.loads(result.stdout)["value"] == pytest.approx(0.8, abs=1e-12)

    def test_leaky_kraus_is_input_error(self, cli_runner, leaky_kraus_spec):
        result = cli_runner.invoke(cli, ["avg", str(leaky_kraus_spec)])
        assert result.exit_code == EXIT_INPUT
        assert "trace_preservation" in result.stderr

    def test_tol_override_accepts_leaky_channel(self, cli_runner, leaky_kraus_spec):
        result = cli_runner.invoke(cli, ["--tol", "0.5", "avg", str(leaky_kraus_spec)])
        assert result.exit_code == EXIT_OK

    def test_max_qubits_override(self, cli_runner, depolarizing_spec):
        result = cli_runner.invoke(cli, ["--max-qubits", "1", "avg", str(depolarizing_spec(0.1, 2))])
        assert result.exit_code == EXIT_INPUT

    def test_unphysical_map_is_computation_error(self, cli_runner, write_spec):
        path = write_spec(spec_document(1, {"kind": "kraus", "operators": [pairs(1.4 * np.eye(2))]}))
        result = cli_runner.invoke(cli, ["--tol", "0.99", "avg", str(path)])
        assert result.exit_code == EXIT_COMPUTATION

    def test_missing_file(self, cli_runner, tmp_path):
        result = cli_runner.invoke(cli, ["avg", str(tmp_path / "absent.json")])
        assert result.exit_code == EXIT_INPUT

    def test_oversized_qubit_count_is_input_error(self, cli_runner, write_spec):
        path = write_spec(spec_document(40, {"kind": "identity"}))
        result = cli_runner.invoke(cli, ["avg", str(path)])
        assert result.exit_code == EXIT_INPUT
        assert isinstance(result.exception, SystemExit)
        assert "spec_file" in result.stderr

    def test_depolarizing_above_its_cap_is_input_error(self, cli_runner, depolarizing_spec):
        result = cli_runner.invoke(cli, ["avg", str(depolarizing_spec(0.1, MAX_DEPOLARIZING_QUBITS + 1))])
        assert result.exit_code == EXIT_INPUT
        assert isinstance(result.exception, SystemExit)


class TestMc:
    """Tests for the mc command."""

    def test_identity(self, cli_runner, identity_spec):
        result = cli_runner.invoke(cli, ["mc", str(identity_spec), "--samples", "500", "--seed", "4"])
        assert result.exit_code == EXIT_OK
        report = json.loads(result.stdout)
        assert report["value"] == pytest.approx(1.0)
        assert report["stderr"] == pytest.approx(0.0, abs=1e-12)
        assert report["seed"] == 4
        assert report["samples"] == 500

    def test_same_seed_same_output(self, cli_runner, depolarizing_spec):
        path = str(depolarizing_spec(0.2))
        args = ["mc", path, "--samples", "2000", "--seed", "11", "--chunks", "3"]
        first = cli_runner.invoke(cli, args)
        second = cli_runner.invoke(cli, args + ["--workers", "2"])
        assert first.exit_code == second.exit_code == EXIT_OK
        assert first.stdout == second.stdout

    def test_seed_drawn_when_absent(self, cli_runner, identity_spec):
        result = cli_runner.invoke(cli, ["mc", str(identity_spec), "--samples", "10"])
        assert result.exit_code == EXIT_OK
        assert isinstance(json.loads(result.stdout)["seed"], int)

    def test_needs_two_samples(self, cli_runner, identity_spec):
        result = cli_runner.invoke(cli, ["mc", str(identity_spec), "--samples", "1"])
        assert result.exit_code == 2

    def test_depolarizing_within_four_stderr(self, cli_runner, depolarizing_spec):
        result = cli_runner.invoke(
            cli, ["mc", str(depolarizing_spec(0.2)), "--samples", "100000", "--seed", "1"]
        )
        report = json.loads(result.stdout)
        assert abs(report["value"] - 0.9) <= 4 * report["stderr"]


class TestProtocol:
    """Tests for the protocol command."""

    def test_writes_six_preparations(self, cli_runner, identity_spec, tmp_path):
        out = tmp_path / "protocol.json"
        result = cli_runner.invoke(cli, ["protocol", str(identity_spec), "--out", str(out)])
        assert result.exit_code == EXIT_OK
        document = json.loads(out.read_text())
        assert len(document["preparations"]) == 6
        assert document["offset"] == pytest.approx(0.5)

    def test_evaluate_prints_both_values(self, cli_runner, depolarizing_spec, tmp_path):
        out = tmp_path / "protocol.json"
        result = cli_runner.invoke(
            cli, ["protocol", str(depolarizing_spec(0.4, 2)), "--out", str(out), "--evaluate"]
        )
        assert result.exit_code == EXIT_OK
        summary = json.loads(result.stdout)
        assert summary["preparations"] == 36
        assert summary["protocol_value"] == pytest.approx(summary["closed_form"], abs=1e-10)

    def test_qubit_cap(self, cli_runner, depolarizing_spec, tmp_path):
        result = cli_runner.invoke(
            cli, ["protocol", str(depolarizing_spec(0.1, 4)), "--out", str(tmp_path / "p.json")]
        )
        assert result.exit_code == EXIT_INPUT


class TestCheck:
    """Tests for the check command."""

    def test_amplitude_damping_passes(self, cli_runner, amplitude_damping_spec):
        result = cli_runner.invoke(cli, ["check", str(amplitude_damping_spec)])
        assert result.exit_code == EXIT_OK
        assert json.loads(result.stdout)["ok"] is True

    def test_leaky_kraus_fails_with_deviation(self, cli_runner, leaky_kraus_spec):
        result = cli_runner.invoke(cli, ["check", str(leaky_kraus_spec)])
        assert result.exit_code == EXIT_INPUT
        report = json.loads(result.stdout)
        entry = next(e for e in report["checks"] if e["check"] == "trace_preservation")
        assert entry["max_deviation"] == pytest.approx(0.19)
        assert "trace_preservation" in result.stderr

    def test_non_square_unitary(self, cli_runner, non_square_spec):
        result = cli_runner.invoke(cli, ["check", str(non_square_spec)])
        assert result.exit_code == EXIT_INPUT
        assert result.stdout == ""
