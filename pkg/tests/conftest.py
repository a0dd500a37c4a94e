"""Shared pytest fixtures for the qfidelity test suite.

This module provides reusable fixtures for testing:
- CLI runners
- Spec-file writers for the common channel kinds
- Settings and clients with test defaults
"""

import json
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import numpy as np
import pytest
from click.testing import CliRunner

from qfidelity.client import FidelityClient
from qfidelity.config import FidelitySettings
from tests.helpers import pairs, spec_document

SpecWriter = Callable[..., Path]


# ========================== Basic Fixtures ==========================


@pytest.fixture
def cli_runner(monkeypatch: pytest.MonkeyPatch) -> CliRunner:
    """Create a Click CliRunner with no QFIDELITY_* overrides in the environment."""
    for variable in (
        "QFIDELITY_TOL",
        "QFIDELITY_MAX_QUBITS",
        "QFIDELITY_MC_CHUNK_SIZE",
        "QFIDELITY_MC_WORKERS",
    ):
        monkeypatch.delenv(variable, raising=False)
    return CliRunner()


@pytest.fixture
def settings() -> FidelitySettings:
    """Default settings, independent of the environment."""
    return FidelitySettings.from_env(environ={})


@pytest.fixture
def client(settings: FidelitySettings) -> FidelityClient:
    """A FidelityClient with default settings."""
    return FidelityClient(settings)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for building random fixtures."""
    return np.random.default_rng(20240611)


# ========================== Spec Files ==========================


@pytest.fixture
def write_spec(tmp_path: Path) -> SpecWriter:
    """Factory writing a spec document to a JSON file and returning its path."""
    counter = {"count": 0}

    def _write(document: Dict[str, Any], name: Optional[str] = None) -> Path:
        counter["count"] += 1
        path = tmp_path / (name or f"spec_{counter['count']}.json")
        path.write_text(json.dumps(document, indent=2))
        return path

    return _write


@pytest.fixture
def identity_spec(write_spec: SpecWriter) -> Path:
    """n=1 identity channel against U=I."""
    return write_spec(spec_document(1, {"kind": "identity"}))


@pytest.fixture
def depolarizing_spec(write_spec: SpecWriter) -> Callable[..., Path]:
    """Factory for depolarizing specs against U=I."""

    def _make(p: float, n: int = 1) -> Path:
        return write_spec(spec_document(n, {"kind": "depolarizing", "p": p}))

    return _make


@pytest.fixture
def amplitude_damping_spec(write_spec: SpecWriter) -> Path:
    """Valid amplitude damping with gamma = 0.3."""
    return write_spec(spec_document(1, {"kind": "amplitude_damping", "gamma": 0.3}))


@pytest.fixture
def leaky_kraus_spec(write_spec: SpecWriter) -> Path:
    """Kraus family {0.9 I}: sum K^dagger K = 0.81 I, deviation 0.19."""
    return write_spec(spec_document(1, {"kind": "kraus", "operators": [pairs(0.9 * np.eye(2))]}))


@pytest.fixture
def non_square_spec(write_spec: SpecWriter) -> Path:
    """Unitary channel whose matrix is 2x3."""
    matrix = [[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]]
    return write_spec(spec_document(1, {"kind": "unitary", "matrix": matrix}))
