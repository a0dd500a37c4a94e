"""State fidelity and the average fidelity of a channel against a target unitary.

For a target unitary U and a trace-preserving map M on n qubits (N = 2^n),
the fidelity tr(U rho0 U^dagger M(rho0)) averaged over all pure inputs rho0 is

    <F> = 1/N + 1/((N+1) N^2) * sum_{j=1}^{N^2-1} tr[U f_j U^dagger M(f_j)]

because Haar-random pure states have <w^i w^j> = delta_ij / (1 + N). The
Monte-Carlo estimator samples rho0 directly and serves as an independent check.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np

from ..const import (
    DEFAULT_TOLERANCE,
    EIGENVALUE_CLIP,
    FIDELITY_RANGE_TOLERANCE,
    IMAG_TOLERANCE,
    MAX_CLOSED_FORM_QUBITS,
    MAX_DENSE_QUBITS,
    MC_CHUNK_SIZE,
    MIN_MC_SAMPLES,
    PURITY_TOLERANCE,
    FidelityMethod,
    ValidationCheck,
)
from ..exceptions import (
    QFidelityConsistencyException,
    QFidelityDomainException,
    QFidelityValidationException,
)
from ..logging import get_array_logger
from ..models import FidelityReport
from ..rng import RandomStream, draw_seed
from .base import (
    ComplexMatrix,
    as_complex_matrix,
    check_qubit_cap,
    checked_real,
    conjugate,
    require_dim,
)
from .channels import Channel, apply_batch, apply_to_operator, check_trace_preserving, check_unitary
from .pauli import PAULI_MATRICES, basis_matrices
from .states import DensityMatrix, axial_state, haar_random_kets, purity

_LOGGER = get_array_logger(__name__)

# Upper bound on complex entries held by one Monte-Carlo batch of density matrices
_MAX_BATCH_ENTRIES = 2**22

# Per-sample values spread no wider than this are constant up to rounding
_ROUNDING_SPREAD = 1e-12


def pure_fidelity(
    rho: DensityMatrix, rho_prime: DensityMatrix, purity_tol: float = PURITY_TOLERANCE
) -> float:
    """F = tr(rho rho') for a pure state rho.

    Raises:
        QFidelityDomainException: If rho is not pure or the qubit counts differ
        QFidelityConsistencyException: If the trace has an imaginary residual
    """
    if rho.n != rho_prime.n:
        raise QFidelityDomainException("rho_prime", f"qubit counts differ ({rho.n} vs {rho_prime.n})")
    deviation = abs(purity(rho) - 1.0)
    if deviation > purity_tol:
        raise QFidelityDomainException("rho", f"state is not pure (|tr rho^2 - 1| = {deviation:.3g})")
    return checked_real(np.trace(rho.mat @ rho_prime.mat), "pure-state fidelity")


def _clipped_sqrt(values: np.ndarray, clip: float) -> np.ndarray:
    """Elementwise square root with every |lambda| <= clip set to exactly 0."""
    return np.sqrt(np.where(np.abs(values) <= clip, 0.0, values))


def _psd_sqrt(matrix: ComplexMatrix, clip: float, what: str) -> np.ndarray:
    """Square root of a Hermitian PSD matrix with rounding-level eigenvalues zeroed."""
    hermitian = (matrix + matrix.conj().T) / 2
    values, vectors = np.linalg.eigh(hermitian)
    if values[0] < -clip:
        raise QFidelityValidationException(
            ValidationCheck.POSITIVITY, f"{what} has a negative eigenvalue", -float(values[0])
        )
    if values[0] < -clip / 2:
        _LOGGER.warning("Clipping eigenvalue %.3g of %s (clip %.1g)", values[0], what, clip)
    roots = _clipped_sqrt(values, clip)
    return (vectors * roots) @ vectors.conj().T


def uhlmann_fidelity(
    rho: DensityMatrix, rho_prime: DensityMatrix, clip: float = EIGENVALUE_CLIP
) -> float:
    """F = (tr sqrt(sqrt(rho) rho' sqrt(rho)))^2 for arbitrary states.

    Eigenvalues in [-clip, clip] are treated as rounding and set to 0, so a
    pure rho agrees with pure_fidelity to rounding level.

    Raises:
        QFidelityDomainException: If the qubit counts differ
        QFidelityValidationException: If an eigenvalue is below -clip
    """
    if rho.n != rho_prime.n:
        raise QFidelityDomainException("rho_prime", f"qubit counts differ ({rho.n} vs {rho_prime.n})")
    root = _psd_sqrt(rho.mat, clip, "rho")
    inner = root @ rho_prime.mat @ root
    values = np.linalg.eigvalsh((inner + inner.conj().T) / 2)
    if values[0] < -clip:
        raise QFidelityValidationException(
            ValidationCheck.POSITIVITY, "sqrt(rho) rho' sqrt(rho) is not positive", -float(values[0])
        )
    return float(np.sum(_clipped_sqrt(values, clip)) ** 2)


def _checked_target(u: ComplexMatrix, channel: Channel, n: int, tol: float) -> ComplexMatrix:
    u = as_complex_matrix(u, "U")
    require_dim(u, 2**n, "U")
    if channel.n != n:
        raise QFidelityDomainException("M", f"channel acts on {channel.n} qubits, expected {n}")
    report = check_unitary(u, tol)
    if not report.ok:
        raise QFidelityValidationException(
            ValidationCheck.UNITARITY, "target U is not unitary", report.max_deviation
        )
    return u


def _range_checked(value: float, quantity: str) -> float:
    if not -FIDELITY_RANGE_TOLERANCE <= value <= 1.0 + FIDELITY_RANGE_TOLERANCE:
        raise QFidelityConsistencyException(
            quantity, f"value {value:.12g} outside [0, 1]; the map is not physical"
        )
    return min(max(value, 0.0), 1.0)


def average_fidelity(
    u: ComplexMatrix,
    channel: Channel,
    n: int,
    max_qubits: int = MAX_CLOSED_FORM_QUBITS,
    tol: float = DEFAULT_TOLERANCE,
) -> FidelityReport:
    """Closed-form average fidelity over Haar-random pure inputs.

    Evaluates 1/N + 1/((N+1)N^2) sum_j tr[U f_j U^dagger M(f_j)] with dense
    basis matrices; the cost grows as 16^n.

    Args:
        u: Target unitary of dimension 2^n
        channel: The implemented map M
        n: Number of qubits
        max_qubits: Largest n accepted (raise it deliberately for n > 5)
        tol: Unitarity tolerance for U

    Returns:
        FidelityReport with method ``closed_form``

    Raises:
        QFidelityDomainException: For mismatched dimensions or n above max_qubits
        QFidelityConsistencyException: If the result falls outside [0, 1]
    """
    n = check_qubit_cap(n, min(max_qubits, MAX_DENSE_QUBITS))
    u = _checked_target(u, channel, n, tol)
    dim = 2**n
    _LOGGER.debug("Closed-form average fidelity for %d qubits (%s)", n, channel.name)

    stack = basis_matrices(n, cap=max_qubits)
    rotated = u @ stack @ u.conj().T
    mapped = apply_batch(channel, stack)
    total = np.einsum("jab,jba->", rotated, mapped)

    value = checked_real(1.0 / dim + total / ((dim + 1) * dim**2), "average fidelity")
    return FidelityReport(
        method=FidelityMethod.CLOSED_FORM,
        value=_range_checked(value, "average fidelity"),
        n=n,
    )


def average_fidelity_single_qubit_bloch(
    u: ComplexMatrix, channel: Channel, tol: float = DEFAULT_TOLERANCE
) -> FidelityReport:
    """Single-qubit closed form in Bloch language: 1/2 + (1/12) sum_j tr(U s_j U^dagger M(s_j)).

    Raises:
        QFidelityDomainException: If the channel is not a single-qubit channel
    """
    if channel.n != 1:
        raise QFidelityDomainException("M", f"the Bloch form needs one qubit, got {channel.n}")
    u = _checked_target(u, channel, 1, tol)
    total = sum(
        np.trace(conjugate(u, sigma) @ apply_to_operator(channel, sigma))
        for sigma in PAULI_MATRICES[1:]
    )
    value = checked_real(0.5 + total / 12.0, "average fidelity")
    return FidelityReport(
        method=FidelityMethod.CLOSED_FORM, value=_range_checked(value, "average fidelity"), n=1
    )


def average_fidelity_six_state(
    u: ComplexMatrix, channel: Channel, tol: float = DEFAULT_TOLERANCE
) -> FidelityReport:
    """Single-qubit average fidelity as a finite sum over the six axial states.

    <F> = (1/6) sum_j tr(U rho_j U^dagger M(rho_j) + U rho_-j U^dagger M(rho_-j))

    Raises:
        QFidelityDomainException: If the channel is not a single-qubit channel
    """
    if channel.n != 1:
        raise QFidelityDomainException("M", f"the six-state form needs one qubit, got {channel.n}")
    u = _checked_target(u, channel, 1, tol)
    total = 0j
    for axis in (1, 2, 3):
        for sign in (1, -1):
            state = axial_state(axis, sign).mat
            total += np.trace(conjugate(u, state) @ apply_to_operator(channel, state))
    value = checked_real(total / 6.0, "six-state fidelity")
    return FidelityReport(
        method=FidelityMethod.SIX_STATE, value=_range_checked(value, "six-state fidelity"), n=1
    )


def unitary_pair_fidelity(u: ComplexMatrix, v: ComplexMatrix) -> float:
    """Average fidelity of conjugation by V against target U: (|tr(U^dagger V)|^2/N + 1)/(N + 1)."""
    u = as_complex_matrix(u, "U")
    v = as_complex_matrix(v, "V")
    if u.shape != v.shape:
        raise QFidelityDomainException("V", f"dimension mismatch {u.shape} vs {v.shape}")
    dim = u.shape[0]
    overlap = abs(np.trace(u.conj().T @ v)) ** 2
    return float((overlap / dim + 1.0) / (dim + 1.0))


def _chunk_values(
    u: ComplexMatrix, channel: Channel, n: int, count: int, stream: RandomStream, batch: int
) -> np.ndarray:
    """Per-sample fidelities tr(U rho0 U^dagger M(rho0)) for one substream."""
    values = np.empty(count)
    done = 0
    while done < count:
        size = min(batch, count - done)
        kets = haar_random_kets(n, size, stream)
        states = np.einsum("si,sj->sij", kets, kets.conj())
        outputs = apply_batch(channel, states)
        targets = kets @ u.T  # row s holds U psi_s
        raw = np.einsum("si,sij,sj->s", targets.conj(), outputs, targets)
        residual = float(np.max(np.abs(raw.imag)))
        if residual >= IMAG_TOLERANCE:
            raise QFidelityConsistencyException(
                "Monte-Carlo sample", f"imaginary residual {residual:.3g} exceeds {IMAG_TOLERANCE:.1g}"
            )
        values[done : done + size] = raw.real
        done += size
    return values


def mc_average_fidelity(
    u: ComplexMatrix,
    channel: Channel,
    n: int,
    samples: int,
    seed: Optional[int] = None,
    chunks: int = 1,
    workers: int = 1,
    chunk_size: int = MC_CHUNK_SIZE,
    tol: float = DEFAULT_TOLERANCE,
) -> FidelityReport:
    """Monte-Carlo estimate of the average fidelity over Haar-random pure inputs.

    Samples are split into ``chunks`` contiguous blocks, block k drawn from
    substream k of the master seed. The result depends only on (seed, samples,
    chunks), never on ``workers``.

    Args:
        u: Target unitary of dimension 2^n
        channel: The implemented map M
        n: Number of qubits
        samples: Number of Haar samples (at least 2)
        seed: Master seed; drawn from the OS when None and recorded in the report
        chunks: Number of deterministic substreams
        workers: Threads evaluating chunks concurrently
        chunk_size: Largest number of states materialized at once
        tol: Unitarity / trace-preservation tolerance

    Returns:
        FidelityReport with method ``monte_carlo``; stderr uses the unbiased
        sample variance

    Raises:
        QFidelityDomainException: For fewer than 2 samples or a bad chunk layout
        QFidelityValidationException: If U is not unitary or M not trace preserving
    """
    n = check_qubit_cap(n)
    if samples < MIN_MC_SAMPLES:
        raise QFidelityDomainException("samples", f"need at least {MIN_MC_SAMPLES} samples")
    if not 1 <= chunks <= samples:
        raise QFidelityDomainException("chunks", f"chunks must lie in [1, {samples}]")
    if workers < 1:
        raise QFidelityDomainException("workers", "need at least one worker")
    u = _checked_target(u, channel, n, tol)
    report = check_trace_preserving(channel, tol)
    if not report.ok:
        raise QFidelityValidationException(
            ValidationCheck.TRACE_PRESERVATION,
            f"{channel.name} is not trace preserving",
            report.max_deviation,
        )

    if seed is None:
        seed = draw_seed()
        _LOGGER.info("No seed given, drew %d", seed)
    streams = RandomStream(seed, name="mc").spawn(chunks)
    base, extra = divmod(samples, chunks)
    counts = [base + (1 if k < extra else 0) for k in range(chunks)]
    batch = max(1, min(chunk_size, _MAX_BATCH_ENTRIES // 4**n))
    _LOGGER.debug(
        "Monte Carlo: %d samples on %d qubits, %d chunks, %d workers, seed %d",
        samples, n, chunks, workers, seed,
    )

    if workers == 1 or chunks == 1:
        parts: List[np.ndarray] = [
            _chunk_values(u, channel, n, count, stream, batch)
            for count, stream in zip(counts, streams)
        ]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    lambda job: _chunk_values(u, channel, n, job[0], job[1], batch),
                    zip(counts, streams),
                )
            )
    values = np.concatenate(parts)
    mean = float(np.mean(values))
    if float(np.ptp(values)) <= _ROUNDING_SPREAD:
        stderr = 0.0
    else:
        stderr = float(np.std(values, ddof=1) / np.sqrt(samples))
    return FidelityReport(
        method=FidelityMethod.MONTE_CARLO,
        value=_range_checked(mean, "Monte-Carlo fidelity"),
        n=n,
        samples=samples,
        stderr=stderr,
        seed=seed,
        rng=streams[0].algorithm,
        chunks=chunks,
    )
