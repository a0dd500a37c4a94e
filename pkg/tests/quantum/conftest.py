"""Fixtures for the quantum toolkit tests: random unitaries and channels."""

from typing import Callable, List, Tuple

import numpy as np
import pytest

from qfidelity.quantum import Channel
from tests.helpers import random_kraus_channel, random_unitary


@pytest.fixture
def unitary_factory(rng: np.random.Generator) -> Callable[[int], np.ndarray]:
    """Factory for Haar-random unitaries of a given dimension."""
    return lambda dim: random_unitary(dim, rng)


@pytest.fixture
def kraus_factory(rng: np.random.Generator) -> Callable[..., Channel]:
    """Factory for random trace-preserving channels on n qubits."""

    def _make(n: int, rank: int = 2) -> Channel:
        return random_kraus_channel(n, rank, rng)

    return _make


@pytest.fixture
def single_qubit_pairs(rng: np.random.Generator) -> List[Tuple[np.ndarray, Channel]]:
    """Fifty random (U, M) pairs on one qubit with Kraus ranks 1 to 4."""
    return [
        (random_unitary(2, rng), random_kraus_channel(1, 1 + k % 4, rng)) for k in range(50)
    ]
