"""Shared dense-matrix plumbing for the quantum modules."""

from __future__ import annotations

import logging
from typing import Any, Sequence

import numpy as np

from ..const import IMAG_TOLERANCE, MAX_DENSE_QUBITS, ValidationCheck
from ..exceptions import (
    QFidelityConsistencyException,
    QFidelityDomainException,
    QFidelityValidationException,
)

_LOGGER = logging.getLogger(__name__)

# Dense n-qubit matrices are complex128, row-major, dim x dim
ComplexMatrix = np.ndarray


def as_complex_matrix(value: Any, name: str = "matrix") -> ComplexMatrix:
    """Coerce a value into a read-only square complex128 matrix.

    Args:
        value: Anything numpy can turn into a 2-D array
        name: Argument name used in error messages

    Returns:
        A read-only complex128 copy of the input

    Raises:
        QFidelityValidationException: If the input is not a non-empty square matrix
    """
    try:
        matrix = np.array(value, dtype=np.complex128)
    except (TypeError, ValueError) as err:
        raise QFidelityValidationException(
            ValidationCheck.SHAPE, f"{name} is not a numeric matrix: {err}"
        )
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise QFidelityValidationException(
            ValidationCheck.SHAPE, f"{name} must be a non-empty square matrix, got {matrix.shape}"
        )
    matrix.setflags(write=False)
    return matrix


def qubit_count(dim: int, name: str = "matrix") -> int:
    """Return n for a dimension 2^n.

    Raises:
        QFidelityValidationException: If dim is not a power of two
    """
    if dim < 1 or dim & (dim - 1):
        raise QFidelityValidationException(
            ValidationCheck.SHAPE, f"{name} dimension {dim} is not a power of two"
        )
    return dim.bit_length() - 1


def check_qubit_cap(n: int, cap: int = MAX_DENSE_QUBITS, argument: str = "n") -> int:
    """Check that a qubit count is a positive integer not above ``cap``.

    Returns:
        The qubit count, unchanged

    Raises:
        QFidelityDomainException: If n is not an integer in [1, cap]
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise QFidelityDomainException(argument, f"qubit count must be an integer, got {n!r}")
    if n < 1:
        raise QFidelityDomainException(argument, f"qubit count must be positive, got {n}")
    if n > cap:
        raise QFidelityDomainException(argument, f"{n} qubits exceeds the cap of {cap}")
    return int(n)


def require_dim(matrix: ComplexMatrix, dim: int, name: str = "matrix") -> None:
    """Raise a domain error unless ``matrix`` is dim x dim."""
    if matrix.shape != (dim, dim):
        raise QFidelityDomainException(
            name, f"expected a {dim}x{dim} matrix, got {matrix.shape[0]}x{matrix.shape[1]}"
        )


def dagger(matrix: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose."""
    return matrix.conj().T


def max_abs_deviation(matrix: ComplexMatrix, reference: ComplexMatrix) -> float:
    """Largest absolute entry of ``matrix - reference``."""
    return float(np.max(np.abs(matrix - reference))) if matrix.size else 0.0


def checked_real(value: complex, quantity: str, tol: float = IMAG_TOLERANCE) -> float:
    """Return the real part of ``value`` after asserting its imaginary part is negligible.

    Args:
        value: A complex scalar that should be real
        quantity: Name of the quantity, used in the error message
        tol: Largest tolerated absolute imaginary part

    Raises:
        QFidelityConsistencyException: If the imaginary part exceeds ``tol``
    """
    value = complex(value)
    if abs(value.imag) >= tol:
        raise QFidelityConsistencyException(
            quantity, f"imaginary residual {value.imag:.3g} exceeds {tol:.1g}"
        )
    return value.real


def conjugate(unitary: ComplexMatrix, operator: ComplexMatrix) -> ComplexMatrix:
    """Return U A U^dagger."""
    return unitary @ operator @ dagger(unitary)


def kron_all(factors: Sequence[ComplexMatrix]) -> ComplexMatrix:
    """Kronecker product of a non-empty sequence, first factor most significant."""
    result = np.asarray(factors[0], dtype=np.complex128)
    for factor in factors[1:]:
        result = np.kron(result, factor)
    return result
