"""Pauli strings: n-fold Kronecker products of Pauli matrices.

A PauliString is stored symbolically as a tuple of labels 0..3 (identity,
sigma_x, sigma_y, sigma_z). The polarization basis f_j of n qubits is the set
of 4^n - 1 non-identity strings, indexed by j in [1, 4^n - 1] through the
base-4 digits of j with the first tensor factor as most significant digit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Tuple

import numpy as np

from ..const import MAX_CLOSED_FORM_QUBITS, MAX_DENSE_QUBITS, PAULI_LABEL_CHARS
from ..exceptions import QFidelityDomainException
from .base import ComplexMatrix, as_complex_matrix, check_qubit_cap, kron_all

_LOGGER = logging.getLogger(__name__)

PAULI_MATRICES: Tuple[np.ndarray, ...] = (
    np.array([[1, 0], [0, 1]], dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)
for _matrix in PAULI_MATRICES:
    _matrix.setflags(write=False)

# Powers of i, indexed by exponent mod 4
_PHASES: Tuple[complex, ...] = (1 + 0j, 1j, -1 + 0j, -1j)

# sigma_a sigma_b = i sigma_c for cyclic (a, b, c)
_CYCLIC_PAIRS = frozenset({(1, 2), (2, 3), (3, 1)})


@dataclass(frozen=True)
class PauliString:
    """Symbolic Kronecker product of n Pauli matrices.

    Attributes:
        labels: One label per qubit; 0 = identity, 1/2/3 = sigma_x/y/z
    """

    labels: Tuple[int, ...]

    def __post_init__(self) -> None:
        labels = tuple(int(label) for label in self.labels)
        if not labels:
            raise QFidelityDomainException("labels", "a Pauli string needs at least one qubit")
        if any(label not in (0, 1, 2, 3) for label in labels):
            raise QFidelityDomainException("labels", f"labels must lie in 0..3, got {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_label(cls, text: str) -> "PauliString":
        """Build a string from text such as ``"XZ"`` or ``"IY"``."""
        try:
            return cls(tuple(PAULI_LABEL_CHARS.index(char) for char in text.upper()))
        except ValueError:
            raise QFidelityDomainException("text", f"unknown Pauli label in {text!r}")

    @property
    def n(self) -> int:
        """Number of qubits."""
        return len(self.labels)

    @property
    def is_identity(self) -> bool:
        """True when every factor is the identity."""
        return not any(self.labels)

    def __str__(self) -> str:
        return "".join(PAULI_LABEL_CHARS[label] for label in self.labels)


def _single_product(a: int, b: int) -> Tuple[int, int]:
    """Multiply two single-qubit Paulis; returns (power of i, label)."""
    if a == 0 or b == 0 or a == b:
        return 0, a ^ b
    return (1 if (a, b) in _CYCLIC_PAIRS else 3), a ^ b


def pauli_product(a: PauliString, b: PauliString) -> Tuple[complex, PauliString]:
    """Multiply two Pauli strings factor by factor.

    Args:
        a: Left factor
        b: Right factor

    Returns:
        (phase, result) with phase in {1, -1, i, -i} and
        phase * to_matrix(result) == to_matrix(a) @ to_matrix(b)

    Raises:
        QFidelityDomainException: If the strings act on different qubit counts
    """
    if a.n != b.n:
        raise QFidelityDomainException("b", f"qubit counts differ ({a.n} vs {b.n})")
    exponent = 0
    labels = []
    for left, right in zip(a.labels, b.labels):
        power, label = _single_product(left, right)
        exponent += power
        labels.append(label)
    return _PHASES[exponent % 4], PauliString(tuple(labels))


def pauli_trace(p: PauliString) -> int:
    """Exact trace of a Pauli string: 2^n for the identity, 0 otherwise."""
    return 2**p.n if p.is_identity else 0


def pauli_hs_inner(a: PauliString, b: PauliString) -> int:
    """Exact Hilbert-Schmidt inner product tr(a^dagger b) of two Pauli strings.

    Pauli strings are Hermitian, so this is tr(a b) evaluated symbolically.
    """
    phase, product = pauli_product(a, b)
    trace = phase * pauli_trace(product)
    # Only a == b leaves an identity product, and then the phase is exactly 1
    return int(trace.real)


def basis_element(j: int, n: int) -> PauliString:
    """Return the polarization basis element f_j of n qubits.

    Args:
        j: Basis index in [1, 4^n - 1]
        n: Number of qubits

    Returns:
        The Pauli string whose labels are the base-4 digits of j, first factor
        most significant

    Raises:
        QFidelityDomainException: If j is out of range
    """
    n = check_qubit_cap(n)
    if isinstance(j, bool) or not isinstance(j, (int, np.integer)):
        raise QFidelityDomainException("j", f"basis index must be an integer, got {j!r}")
    if not 1 <= j <= 4**n - 1:
        raise QFidelityDomainException("j", f"basis index {j} outside [1, {4**n - 1}]")
    labels = []
    for _ in range(n):
        j, digit = divmod(int(j), 4)
        labels.append(digit)
    return PauliString(tuple(reversed(labels)))


def basis_index(p: PauliString) -> int:
    """Inverse of basis_element.

    Raises:
        QFidelityDomainException: If p is the identity string
    """
    if p.is_identity:
        raise QFidelityDomainException("p", "the identity string is not a basis element")
    index = 0
    for label in p.labels:
        index = index * 4 + label
    return index


def basis_elements(n: int) -> Iterator[Tuple[int, PauliString]]:
    """Iterate over (j, f_j) for j = 1 .. 4^n - 1."""
    n = check_qubit_cap(n)
    for j in range(1, 4**n):
        yield j, basis_element(j, n)


@lru_cache(maxsize=256)
def _dense(labels: Tuple[int, ...]) -> ComplexMatrix:
    matrix = kron_all([PAULI_MATRICES[label] for label in labels])
    matrix.setflags(write=False)
    return matrix


def to_matrix(p: PauliString) -> ComplexMatrix:
    """Dense 2^n x 2^n matrix of a Pauli string (read-only).

    Raises:
        QFidelityDomainException: If n exceeds the dense-matrix cap
    """
    check_qubit_cap(p.n, MAX_DENSE_QUBITS, argument="p")
    return _dense(p.labels)


@lru_cache(maxsize=None)
def basis_matrices(n: int, cap: int = MAX_CLOSED_FORM_QUBITS) -> np.ndarray:
    """Stacked dense basis matrices, shape (4^n - 1, 2^n, 2^n), entry j-1 = f_j.

    The stack is cached per n and read-only.

    Raises:
        QFidelityDomainException: If n exceeds ``cap``
    """
    n = check_qubit_cap(n, cap)
    _LOGGER.debug("Building %d dense basis matrices for %d qubits", 4**n - 1, n)
    paulis = np.stack(PAULI_MATRICES)
    stack = paulis
    for _ in range(n - 1):
        count, dim = stack.shape[0], stack.shape[1]
        stack = np.einsum("aij,bkl->abikjl", stack, paulis).reshape(count * 4, dim * 2, dim * 2)
    stack = np.ascontiguousarray(stack[1:])
    stack.setflags(write=False)
    return stack


def hs_inner(a: ComplexMatrix, b: ComplexMatrix) -> complex:
    """Hilbert-Schmidt inner product tr(A^dagger B).

    Raises:
        QFidelityDomainException: If the dimensions differ
    """
    a = as_complex_matrix(a, "A")
    b = as_complex_matrix(b, "B")
    if a.shape != b.shape:
        raise QFidelityDomainException("B", f"dimension mismatch {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product of two square matrices, dim = dim(A) * dim(B)."""
    return np.kron(as_complex_matrix(a, "A"), as_complex_matrix(b, "B"))


def rotor(generator: PauliString, angle: float) -> ComplexMatrix:
    """Return exp(-i * angle * P) = cos(angle) 1 - i sin(angle) P.

    With angle = pi/4 this is the quarter-turn that carries one Pauli string
    into another: rotor(Z, pi/4) maps X to Y, rotor(ZX, pi/4) maps XI to YX.
    """
    matrix = to_matrix(generator)
    return np.cos(angle) * np.eye(matrix.shape[0], dtype=np.complex128) - 1j * np.sin(
        angle
    ) * matrix
