"""Tests for the JSON document models."""

import json

import numpy as np
import pytest
from pydantic import ValidationError

from qfidelity.const import MAX_DENSE_QUBITS, FidelityMethod
from qfidelity.models import (
    ChannelSpecFile,
    DepolarizingChannelSpec,
    FidelityReport,
    PhaseDampingChannelSpec,
    ProtocolDocument,
    matrix_to_pairs,
    pairs_to_matrix,
)
from tests.helpers import pairs, spec_document


class TestMatrixPairs:
    """Tests for [re, im] pair encoding."""

    def test_encodes_real_and_imaginary_parts(self):
        data = matrix_to_pairs(np.array([[1, 2j], [-0.5j, 3]]))
        assert data[0][1] == (0.0, 2.0)
        assert data[1][0] == (0.0, -0.5)

    def test_decodes_to_complex128(self):
        matrix = pairs_to_matrix([[[1, 0], [0, 1]], [[0, -1], [2, 0]]])
        assert matrix.dtype == np.complex128
        np.testing.assert_array_equal(matrix, np.array([[1, 1j], [-1j, 2]]))

    def test_rejects_bad_grid(self):
        with pytest.raises(ValueError):
            pairs_to_matrix([[1, 2], [3, 4]])


class TestFidelityReport:
    """Tests for FidelityReport invariants."""

    def test_closed_form_defaults(self):
        report = FidelityReport(method="closed_form", value=0.9, n=1)
        assert report.format_version == 1
        assert report.samples == 0
        assert report.stderr == 0.0
        assert report.seed is None

    def test_json_round_trip(self):
        report = FidelityReport(
            method=FidelityMethod.MONTE_CARLO, value=0.5, n=2, samples=10, stderr=0.01,
            seed=3, rng="PCG64", chunks=2,
        )
        assert FidelityReport.model_validate_json(report.model_dump_json()) == report

    def test_rejects_value_outside_unit_interval(self):
        with pytest.raises(ValidationError):
            FidelityReport(method="closed_form", value=1.1, n=1)

    def test_monte_carlo_needs_seed(self):
        with pytest.raises(ValidationError):
            FidelityReport(method="monte_carlo", value=0.5, n=1, samples=10)

    def test_rejects_other_format_version(self):
        with pytest.raises(ValidationError):
            FidelityReport(format_version=2, method="closed_form", value=0.5, n=1)

    def test_rejects_unknown_fields(self):
        with pytest.raises(ValidationError):
            FidelityReport(method="closed_form", value=0.5, n=1, comment="x")


class TestChannelSpecFile:
    """Tests for ChannelSpecFile parsing and dimension checks."""

    def test_parses_depolarizing(self):
        spec = ChannelSpecFile.model_validate(spec_document(1, {"kind": "depolarizing", "p": 0.4}))
        assert isinstance(spec.channel, DepolarizingChannelSpec)
        assert spec.channel.p == 0.4
        assert spec.target_unitary is None

    def test_phase_damping_uses_lambda_key(self):
        text = json.dumps(spec_document(1, {"kind": "phase_damping", "lambda": 0.2}))
        spec = ChannelSpecFile.model_validate_json(text)
        assert isinstance(spec.channel, PhaseDampingChannelSpec)
        assert spec.channel.lam == 0.2

    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            ChannelSpecFile.model_validate(spec_document(1, {"kind": "teleport"}))

    def test_target_dimension_must_match_n(self):
        document = spec_document(2, {"kind": "identity"}, target=np.eye(2))
        with pytest.raises(ValidationError):
            ChannelSpecFile.model_validate(document)

    def test_kraus_dimension_must_match_n(self):
        document = spec_document(1, {"kind": "kraus", "operators": [pairs(np.eye(4))]})
        with pytest.raises(ValidationError):
            ChannelSpecFile.model_validate(document)

    def test_non_square_matrix(self):
        matrix = [[[1.0, 0.0], [0.0, 0.0]]]
        with pytest.raises(ValidationError):
            ChannelSpecFile.model_validate(spec_document(1, {"kind": "unitary", "matrix": matrix}))

    def test_damping_needs_one_qubit(self):
        with pytest.raises(ValidationError):
            ChannelSpecFile.model_validate(
                spec_document(2, {"kind": "amplitude_damping", "gamma": 0.1})
            )

    def test_probability_range(self):
        with pytest.raises(ValidationError):
            ChannelSpecFile.model_validate(spec_document(1, {"kind": "depolarizing", "p": 1.5}))

    @pytest.mark.parametrize("n", [MAX_DENSE_QUBITS + 1, 40])
    def test_qubit_count_is_bounded(self, n):
        with pytest.raises(ValidationError) as exc_info:
            ChannelSpecFile.model_validate(spec_document(n, {"kind": "identity"}))
        assert exc_info.value.errors()[0]["loc"] == ("n",)

    def test_qubit_count_at_dense_cap(self):
        spec = ChannelSpecFile.model_validate(spec_document(MAX_DENSE_QUBITS, {"kind": "identity"}))
        assert spec.n == MAX_DENSE_QUBITS


class TestProtocolDocument:
    """Tests for ProtocolDocument shape checks."""

    def _state(self):
        return pairs(np.array([[1, 0], [0, 0]]))

    def test_lengths_must_agree(self):
        with pytest.raises(ValidationError):
            ProtocolDocument(
                n=1, labels=[[(3, 1)]], preparations=[self._state()], projectors=[],
                weight=[[1.0]], offset=0.5, scale=1 / 12,
            )

    def test_weight_must_be_square(self):
        with pytest.raises(ValidationError):
            ProtocolDocument(
                n=1, labels=[[(3, 1)]], preparations=[self._state()],
                projectors=[self._state()], weight=[[1.0, 2.0]], offset=0.5, scale=1 / 12,
            )
