"""Trace-preserving channels: unitary conjugations and Kraus families.

A channel M acts on operators either as U A U^dagger (unitary) or as
sum_k K_k A K_k^dagger (Kraus). Only trace preservation is checked; complete
positivity follows from the Kraus form itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..const import (
    DEFAULT_TOLERANCE,
    MAX_DENSE_QUBITS,
    MAX_DEPOLARIZING_QUBITS,
    ChannelKind,
    ValidationCheck,
)
from ..exceptions import (
    QFidelityChannelDefectException,
    QFidelityDomainException,
    QFidelityValidationException,
)
from ..logging import get_array_logger
from .base import (
    ComplexMatrix,
    as_complex_matrix,
    check_qubit_cap,
    dagger,
    max_abs_deviation,
    qubit_count,
    require_dim,
)
from .pauli import basis_elements, to_matrix
from .states import DensityMatrix, validate_density

_LOGGER = get_array_logger(__name__)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a unitarity or trace-preservation check.

    Attributes:
        check: Name of the check
        max_deviation: Largest absolute entry of the deviation from the identity
        ok: True when max_deviation is within the tolerance
        tolerance: Tolerance the verdict was reached with
    """

    check: str
    max_deviation: float
    ok: bool
    tolerance: float


@dataclass(frozen=True)
class Channel:
    """A linear map on n-qubit operators.

    Attributes:
        n: Number of qubits
        kind: ChannelKind.UNITARY (operators holds U) or ChannelKind.KRAUS
        operators: Read-only 2^n x 2^n matrices
        name: Human-readable label used in logs and error messages
    """

    n: int
    kind: ChannelKind
    operators: Tuple[ComplexMatrix, ...]
    name: str = "channel"

    @property
    def dim(self) -> int:
        """Hilbert-space dimension N = 2^n."""
        return 2**self.n

    @property
    def kraus_operators(self) -> Tuple[ComplexMatrix, ...]:
        """The operators as a Kraus family (a unitary is a one-element family)."""
        return self.operators


def _coerce_operators(operators: Sequence[ComplexMatrix], name: str) -> Tuple[int, tuple]:
    if len(operators) == 0:
        raise QFidelityValidationException(ValidationCheck.SHAPE, f"{name} needs at least one operator")
    matrices = tuple(as_complex_matrix(op, f"{name} operator {k}") for k, op in enumerate(operators))
    dim = matrices[0].shape[0]
    n = qubit_count(dim, f"{name} operator")
    check_qubit_cap(n, MAX_DENSE_QUBITS)
    for k, matrix in enumerate(matrices):
        if matrix.shape != (dim, dim):
            raise QFidelityValidationException(
                ValidationCheck.SHAPE,
                f"{name} operator {k} has shape {matrix.shape}, expected ({dim}, {dim})",
            )
    return n, matrices


def check_unitary(u: ComplexMatrix, tol: float = DEFAULT_TOLERANCE) -> CheckReport:
    """Report max |U^dagger U - 1|."""
    u = as_complex_matrix(u, "unitary")
    deviation = max_abs_deviation(dagger(u) @ u, np.eye(u.shape[0]))
    return CheckReport(ValidationCheck.UNITARITY.value, deviation, deviation <= tol, tol)


def check_trace_preserving(c: Channel, tol: float = DEFAULT_TOLERANCE) -> CheckReport:
    """Report the trace-preservation deviation of a channel.

    For Kraus channels this is max |sum_k K_k^dagger K_k - 1|, for unitary
    channels max |U^dagger U - 1|.
    """
    total = sum(
        (dagger(k) @ k for k in c.kraus_operators),
        np.zeros((c.dim, c.dim), dtype=np.complex128),
    )
    deviation = max_abs_deviation(total, np.eye(c.dim))
    return CheckReport(ValidationCheck.TRACE_PRESERVATION.value, deviation, deviation <= tol, tol)


def unitary_channel(
    u: ComplexMatrix, tol: float = DEFAULT_TOLERANCE, name: str = "unitary", validate: bool = True
) -> Channel:
    """Conjugation by U.

    Raises:
        QFidelityValidationException: If U^dagger U deviates from 1 by more than tol
    """
    n, (matrix,) = _coerce_operators([u], name)
    if validate:
        report = check_unitary(matrix, tol)
        if not report.ok:
            raise QFidelityValidationException(
                ValidationCheck.UNITARITY, f"{name} is not unitary", report.max_deviation
            )
    return Channel(n, ChannelKind.UNITARY, (matrix,), name)


def kraus_channel(
    operators: Sequence[ComplexMatrix],
    tol: float = DEFAULT_TOLERANCE,
    name: str = "kraus",
    validate: bool = True,
) -> Channel:
    """Channel with Kraus family {K_k}.

    Args:
        operators: Non-empty sequence of equally sized square matrices
        tol: Trace-preservation tolerance
        name: Label for logs and errors
        validate: Skip the trace-preservation check when False (used by
            diagnostics that want to report the deviation instead)

    Raises:
        QFidelityValidationException: If sum K^dagger K deviates from 1 by more than tol
    """
    n, matrices = _coerce_operators(operators, name)
    channel = Channel(n, ChannelKind.KRAUS, matrices, name)
    if validate:
        report = check_trace_preserving(channel, tol)
        if not report.ok:
            raise QFidelityValidationException(
                ValidationCheck.TRACE_PRESERVATION,
                f"{name} is not trace preserving",
                report.max_deviation,
            )
    _LOGGER.debug("Built %s with %d Kraus operators on %d qubits", name, len(matrices), n)
    return channel


def identity_channel(n: int) -> Channel:
    """The identity map on n qubits."""
    n = check_qubit_cap(n)
    return Channel(n, ChannelKind.KRAUS, (np.eye(2**n, dtype=np.complex128),), "identity")


def depolarizing(n: int, p: float) -> Channel:
    """M(rho) = (1 - p) rho + p tr(rho) 1 / 2^n.

    Realized with Kraus operators sqrt(1 - p + p/4^n) 1 and sqrt(p/4^n) f_j.

    Raises:
        QFidelityDomainException: If p lies outside [0, 1] or n exceeds the
            depolarizing cap (the Kraus family holds 4^n matrices)
    """
    n = check_qubit_cap(n, MAX_DEPOLARIZING_QUBITS)
    if not 0.0 <= p <= 1.0:
        raise QFidelityDomainException("p", f"depolarizing probability {p} outside [0, 1]")
    share = p / 4**n
    operators = [np.sqrt(1.0 - p + share) * np.eye(2**n, dtype=np.complex128)]
    if p > 0:
        operators.extend(np.sqrt(share) * to_matrix(f) for _, f in basis_elements(n))
    return kraus_channel(operators, name=f"depolarizing(n={n}, p={p:g})")


def amplitude_damping(gamma: float) -> Channel:
    """Single-qubit amplitude damping with decay probability gamma.

    Raises:
        QFidelityDomainException: If gamma lies outside [0, 1]
    """
    if not 0.0 <= gamma <= 1.0:
        raise QFidelityDomainException("gamma", f"damping {gamma} outside [0, 1]")
    k0 = np.array([[1, 0], [0, np.sqrt(1.0 - gamma)]], dtype=np.complex128)
    k1 = np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=np.complex128)
    return kraus_channel([k0, k1], name=f"amplitude_damping(gamma={gamma:g})")


def phase_damping(lam: float) -> Channel:
    """Single-qubit phase damping; off-diagonal terms shrink by sqrt(1 - lam).

    Raises:
        QFidelityDomainException: If lam lies outside [0, 1]
    """
    if not 0.0 <= lam <= 1.0:
        raise QFidelityDomainException("lam", f"damping {lam} outside [0, 1]")
    k0 = np.array([[1, 0], [0, np.sqrt(1.0 - lam)]], dtype=np.complex128)
    k1 = np.array([[0, 0], [0, np.sqrt(lam)]], dtype=np.complex128)
    return kraus_channel([k0, k1], name=f"phase_damping(lambda={lam:g})")


def apply_to_operator(c: Channel, a: ComplexMatrix) -> ComplexMatrix:
    """Apply the channel's linear action to any operator, without validation.

    Raises:
        QFidelityDomainException: If the operator's dimension differs from the channel's
    """
    matrix = np.asarray(a, dtype=np.complex128)
    require_dim(matrix, c.dim, "A")
    result = np.zeros((c.dim, c.dim), dtype=np.complex128)
    for k in c.kraus_operators:
        result += k @ matrix @ dagger(k)
    return result


def apply_batch(c: Channel, stack: np.ndarray) -> np.ndarray:
    """Apply the channel to a stack of operators of shape (count, N, N)."""
    if stack.ndim != 3 or stack.shape[1:] != (c.dim, c.dim):
        raise QFidelityDomainException("stack", f"expected shape (count, {c.dim}, {c.dim})")
    result = np.zeros(stack.shape, dtype=np.complex128)
    for k in c.kraus_operators:
        result += k @ stack @ dagger(k)
    return result


def apply(c: Channel, rho: DensityMatrix, tol: float = DEFAULT_TOLERANCE) -> DensityMatrix:
    """Apply the channel to a state and revalidate the output.

    Raises:
        QFidelityDomainException: If the state has a different qubit count
        QFidelityChannelDefectException: If the output is not a density matrix
    """
    if rho.n != c.n:
        raise QFidelityDomainException("rho", f"channel acts on {c.n} qubits, state has {rho.n}")
    output = apply_to_operator(c, rho.mat)
    try:
        return validate_density(output, tol)
    except QFidelityValidationException as err:
        _LOGGER.warning("Channel %s produced an invalid state: %s", c.name, err.message)
        raise QFidelityChannelDefectException(c.name, err.message)


def compose(outer: Channel, inner: Channel) -> Channel:
    """The channel rho -> outer(inner(rho)).

    Two unitaries compose to the unitary product; otherwise the Kraus family
    is every product K_outer K_inner.

    Raises:
        QFidelityDomainException: If the qubit counts differ
    """
    if outer.n != inner.n:
        raise QFidelityDomainException(
            "inner", f"qubit counts differ ({outer.n} vs {inner.n})"
        )
    name = f"{outer.name}*{inner.name}"
    if outer.kind is ChannelKind.UNITARY and inner.kind is ChannelKind.UNITARY:
        product = outer.operators[0] @ inner.operators[0]
        product.setflags(write=False)
        return Channel(outer.n, ChannelKind.UNITARY, (product,), name)
    operators = []
    for k_outer in outer.kraus_operators:
        for k_inner in inner.kraus_operators:
            product = k_outer @ k_inner
            product.setflags(write=False)
            operators.append(product)
    return Channel(outer.n, ChannelKind.KRAUS, tuple(operators), name)
