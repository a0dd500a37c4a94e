"""Shared fixtures for integration tests.

Provides spec files with non-trivial targets for multi-command workflows.
"""

from pathlib import Path

import numpy as np
import pytest

from tests.helpers import pairs, random_unitary, spec_document


@pytest.fixture
def two_qubit_kraus_spec(write_spec, rng: np.random.Generator) -> Path:
    """n=2 spec: random target and a random rank-2 Kraus channel near it."""
    target = random_unitary(4, rng)
    noise = random_unitary(8, rng)[:, :4]
    operators = [target @ noise[:4, :], target @ noise[4:, :]]
    return write_spec(
        spec_document(2, {"kind": "kraus", "operators": [pairs(k) for k in operators]}, target),
        name="two_qubit_kraus.json",
    )
