"""Plain helpers shared by test modules (builders for specs, unitaries and channels)."""

from typing import Any, Dict, List, Optional

import numpy as np

from qfidelity.models import matrix_to_pairs
from qfidelity.quantum import Channel, kraus_channel


def pairs(matrix: np.ndarray) -> List[List[List[float]]]:
    """Matrix as nested [re, im] lists."""
    return [[list(cell) for cell in row] for row in matrix_to_pairs(matrix)]


def spec_document(
    n: int, channel: Dict[str, Any], target: Optional[np.ndarray] = None
) -> Dict[str, Any]:
    """Build a ChannelSpecFile document as plain JSON data."""
    document: Dict[str, Any] = {"format_version": 1, "n": n, "channel": channel}
    if target is not None:
        document["target_unitary"] = pairs(target)
    return document


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_kraus_channel(n: int, rank: int, rng: np.random.Generator) -> Channel:
    """Random trace-preserving channel: blocks of an isometry C^N -> C^(N*rank)."""
    dim = 2**n
    isometry = random_unitary(dim * rank, rng)[:, :dim]
    operators = [isometry[k * dim : (k + 1) * dim, :] for k in range(rank)]
    return kraus_channel(operators, name=f"random(n={n}, rank={rank})")
