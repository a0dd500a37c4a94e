"""Density matrices, polarization vectors and Haar-random pure states.

An n-qubit state is expanded in the polarization basis as
rho = (1/N)(1 + sum_j w^j f_j) with N = 2^n; the real coefficients
w^j = tr(rho f_j) form its polarization vector (the Bloch vector for n = 1).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from ..const import (
    DEFAULT_TOLERANCE,
    IMAG_TOLERANCE,
    MAX_CLOSED_FORM_QUBITS,
    MAX_DENSE_QUBITS,
    MC_CHUNK_SIZE,
    ValidationCheck,
)
from ..exceptions import (
    QFidelityConsistencyException,
    QFidelityDomainException,
    QFidelityInadmissibleStateException,
    QFidelityValidationException,
)
from ..rng import RandomStream
from .base import (
    ComplexMatrix,
    as_complex_matrix,
    check_qubit_cap,
    dagger,
    kron_all,
    max_abs_deviation,
    qubit_count,
)
from .pauli import PAULI_MATRICES, PauliString, basis_elements, basis_index, basis_matrices, to_matrix

_LOGGER = logging.getLogger(__name__)

RandomSource = Union[RandomStream, np.random.Generator]


@dataclass(frozen=True)
class DensityMatrix:
    """An n-qubit density matrix.

    Build instances through validate_density() or the constructors below;
    the dataclass itself does not re-check the matrix.

    Attributes:
        n: Number of qubits
        mat: Read-only 2^n x 2^n complex128 matrix
    """

    n: int
    mat: ComplexMatrix

    @property
    def dim(self) -> int:
        """Hilbert-space dimension N = 2^n."""
        return self.mat.shape[0]

    def purity(self) -> float:
        """tr(rho^2)."""
        return purity(self)

    def is_pure(self, tol: float = 1e-10) -> bool:
        """True when tr(rho^2) = 1 within ``tol``."""
        return abs(purity(self) - 1.0) <= tol


@dataclass(frozen=True)
class PolarizationVector:
    """The 4^n - 1 real coefficients w^j of a state in the f_j basis.

    Attributes:
        n: Number of qubits
        w: Read-only float64 array, entry j - 1 holds w^j
    """

    n: int
    w: np.ndarray

    def __post_init__(self) -> None:
        check_qubit_cap(self.n)
        w = np.array(self.w, dtype=np.float64)
        if w.shape != (4**self.n - 1,):
            raise QFidelityDomainException(
                "w", f"expected {4**self.n - 1} components for {self.n} qubits, got {w.shape}"
            )
        if not np.all(np.isfinite(w)):
            raise QFidelityDomainException("w", "components must be finite")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    def norm_squared(self) -> float:
        """sum_j (w^j)^2; equals N - 1 exactly for pure states."""
        return float(np.dot(self.w, self.w))

    def component(self, p: PauliString) -> float:
        """The coefficient w^j belonging to the basis element ``p``."""
        if p.n != self.n:
            raise QFidelityDomainException("p", f"expected {self.n} qubits, got {p.n}")
        return float(self.w[basis_index(p) - 1])


def _trusted(mat: np.ndarray) -> DensityMatrix:
    """Wrap a matrix known to be a valid state (built from exact constructions)."""
    mat = np.array(mat, dtype=np.complex128)
    mat.setflags(write=False)
    return DensityMatrix(qubit_count(mat.shape[0]), mat)


def validate_density(m: ComplexMatrix, tol: float = DEFAULT_TOLERANCE) -> DensityMatrix:
    """Check a matrix against the density-matrix contract.

    Args:
        m: Square matrix with power-of-two dimension
        tol: Tolerance for Hermiticity, trace and the smallest eigenvalue

    Returns:
        The checked DensityMatrix

    Raises:
        QFidelityValidationException: With check ``shape``, ``hermiticity``,
            ``trace`` or ``positivity`` naming the failed invariant
    """
    mat = as_complex_matrix(m, "density matrix")
    n = qubit_count(mat.shape[0], "density matrix")
    if n > MAX_DENSE_QUBITS:
        raise QFidelityDomainException("m", f"{n} qubits exceeds the cap of {MAX_DENSE_QUBITS}")

    hermiticity = max_abs_deviation(mat, dagger(mat))
    if hermiticity > tol:
        raise QFidelityValidationException(
            ValidationCheck.HERMITICITY, "matrix is not Hermitian", hermiticity
        )
    trace_deviation = abs(complex(np.trace(mat)) - 1.0)
    if trace_deviation > tol:
        raise QFidelityValidationException(
            ValidationCheck.TRACE, "trace differs from 1", trace_deviation
        )
    smallest = float(np.linalg.eigvalsh((mat + dagger(mat)) / 2)[0])
    if smallest < -tol:
        raise QFidelityValidationException(
            ValidationCheck.POSITIVITY, "matrix has a negative eigenvalue", -smallest
        )
    return DensityMatrix(n, mat)


def maximally_mixed(n: int) -> DensityMatrix:
    """The unpolarized state 1/N."""
    n = check_qubit_cap(n)
    return _trusted(np.eye(2**n, dtype=np.complex128) / 2**n)


def pure_state(ket: Sequence[complex]) -> DensityMatrix:
    """|psi><psi| for a (not necessarily normalized) state vector."""
    vector = np.asarray(ket, dtype=np.complex128).reshape(-1)
    norm = np.linalg.norm(vector)
    if norm == 0:
        raise QFidelityDomainException("ket", "the zero vector is not a state")
    vector = vector / norm
    qubit_count(vector.shape[0], "ket")
    return _trusted(np.outer(vector, vector.conj()))


def axial_state(axis: int, sign: int) -> DensityMatrix:
    """The single-qubit pure state rho_{+-j} = (1 +- sigma_j) / 2.

    Args:
        axis: 1, 2 or 3 for x, y, z
        sign: +1 or -1

    Raises:
        QFidelityDomainException: For a bad axis or sign
    """
    if axis not in (1, 2, 3):
        raise QFidelityDomainException("axis", f"axis must be 1, 2 or 3, got {axis}")
    if sign not in (1, -1):
        raise QFidelityDomainException("sign", f"sign must be +1 or -1, got {sign}")
    return _trusted((PAULI_MATRICES[0] + sign * PAULI_MATRICES[axis]) / 2)


def product_state(labels: Sequence[Tuple[int, int]]) -> DensityMatrix:
    """Tensor product of axial states, one (axis, sign) pair per qubit."""
    if not labels:
        raise QFidelityDomainException("labels", "need at least one qubit")
    return _trusted(kron_all([axial_state(axis, sign).mat for axis, sign in labels]))


def purity(rho: DensityMatrix) -> float:
    """tr(rho^2), which equals (1/N)(1 + sum_j (w^j)^2)."""
    # rho is Hermitian, so tr(rho^2) = tr(rho^dagger rho) = sum |rho_ab|^2
    return float(np.vdot(rho.mat, rho.mat).real)


def polarization_expand(rho: DensityMatrix) -> PolarizationVector:
    """Return the polarization vector w^j = tr(rho f_j).

    Raises:
        QFidelityConsistencyException: If any tr(rho f_j) has an imaginary
            part of 1e-10 or more
    """
    if rho.n <= MAX_CLOSED_FORM_QUBITS:
        # tr(rho f) = sum_ab rho_ab f_ba
        values = np.einsum("jba,ab->j", basis_matrices(rho.n), rho.mat)
    else:
        values = np.array(
            [np.sum(rho.mat * to_matrix(p).T) for _, p in basis_elements(rho.n)],
            dtype=np.complex128,
        )
    residual = float(np.max(np.abs(values.imag)))
    if residual >= IMAG_TOLERANCE:
        raise QFidelityConsistencyException(
            "polarization vector", f"imaginary residual {residual:.3g} exceeds {IMAG_TOLERANCE:.1g}"
        )
    return PolarizationVector(rho.n, values.real)


def polarization_reconstruct(
    w: PolarizationVector, tol: float = DEFAULT_TOLERANCE
) -> DensityMatrix:
    """Rebuild rho = (1/N)(1 + sum_j w^j f_j).

    Raises:
        QFidelityInadmissibleStateException: If the result is not positive
            semidefinite (the vector lies outside the state space)
    """
    dim = 2**w.n
    if w.n <= MAX_CLOSED_FORM_QUBITS:
        traceless = np.einsum("j,jab->ab", w.w, basis_matrices(w.n))
    else:
        traceless = sum(
            (w.w[j - 1] * to_matrix(p) for j, p in basis_elements(w.n)),
            np.zeros((dim, dim), dtype=np.complex128),
        )
    mat = (np.eye(dim, dtype=np.complex128) + traceless) / dim
    try:
        return validate_density(mat, tol)
    except QFidelityValidationException as err:
        if err.check != ValidationCheck.POSITIVITY.value:
            raise
        raise QFidelityInadmissibleStateException(
            ValidationCheck.POSITIVITY,
            f"polarization vector with sum w^2 = {w.norm_squared():.6g} is not a state "
            f"(pure-state bound {dim - 1})",
            err.deviation,
        )


def polarization_overlap(w1: PolarizationVector, w2: PolarizationVector) -> float:
    """tr(rho1 rho2) = (1/N)(1 + sum_j w1^j w2^j)."""
    if w1.n != w2.n:
        raise QFidelityDomainException("w2", f"qubit counts differ ({w1.n} vs {w2.n})")
    return (1.0 + float(np.dot(w1.w, w2.w))) / 2**w1.n


def _generator_of(rng: RandomSource) -> np.random.Generator:
    return rng.generator if isinstance(rng, RandomStream) else rng


def haar_random_kets(n: int, size: int, rng: RandomSource) -> np.ndarray:
    """Draw ``size`` Haar-random normalized state vectors, shape (size, 2^n).

    Each vector has independent standard complex Gaussian entries before
    normalization, which makes the distribution unitarily invariant.
    """
    n = check_qubit_cap(n)
    draws = _generator_of(rng).standard_normal((size, 2**n, 2))
    kets = draws[..., 0] + 1j * draws[..., 1]
    return kets / np.linalg.norm(kets, axis=1, keepdims=True)


def haar_random_pure(n: int, rng: RandomSource) -> DensityMatrix:
    """Draw one Haar-random pure state |psi><psi|."""
    ket = haar_random_kets(n, 1, rng)[0]
    return _trusted(np.outer(ket, ket.conj()))


def polarization_moments(
    n: int, samples: int, rng: RandomSource, chunk_size: int = MC_CHUNK_SIZE
) -> Tuple[np.ndarray, np.ndarray]:
    """Estimate <w^j> and <w^i w^j> over Haar-random pure states.

    The exact values are 0 and delta_ij / (1 + N).

    Returns:
        (mean vector of shape (4^n - 1,), second-moment matrix (4^n - 1, 4^n - 1))
    """
    n = check_qubit_cap(n, MAX_CLOSED_FORM_QUBITS)
    if samples < 1:
        raise QFidelityDomainException("samples", "need at least one sample")
    stack = basis_matrices(n)
    count = stack.shape[0]
    first = np.zeros(count)
    second = np.zeros((count, count))
    remaining = samples
    while remaining:
        batch = min(chunk_size, remaining)
        kets = haar_random_kets(n, batch, rng)
        # w^j = <psi| f_j |psi>
        w = np.einsum("si,jik,sk->sj", kets.conj(), stack, kets).real
        first += w.sum(axis=0)
        second += w.T @ w
        remaining -= batch
    return first / samples, second / samples
