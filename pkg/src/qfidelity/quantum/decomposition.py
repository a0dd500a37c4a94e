"""Pure-state decompositions of the polarization basis and measurement protocols.

Every basis element f_j is written as a signed sum of pure-state density
matrices, so that the closed-form average fidelity turns into a finite set of
"prepare rho_t, apply M, measure U rho_s U^dagger" experiments.

Single qubit: sigma_j = rho_{+j} - rho_{-j} and 1 = rho_{+j} + rho_{-j}, with
rho_{+-j} = (1 +- sigma_j)/2. Tensoring these per factor covers every n.
Two qubits additionally admit the products of commuting idempotents
P_{+-mn} = (1 +- sigma_m (x) sigma_n)/2, which may be entangled.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..const import (
    DEFAULT_TOLERANCE,
    IDEMPOTENT_TOLERANCE,
    MAX_DENSE_QUBITS,
    MAX_PROTOCOL_QUBITS,
    IdempotentBranch,
    ValidationCheck,
)
from ..exceptions import (
    QFidelityConstructionException,
    QFidelityDomainException,
    QFidelityValidationException,
)
from .base import ComplexMatrix, as_complex_matrix, check_qubit_cap, checked_real, conjugate, require_dim
from .channels import Channel, apply_batch, check_unitary
from .pauli import PauliString, basis_elements, to_matrix
from .states import DensityMatrix, axial_state, product_state, validate_density

_LOGGER = logging.getLogger(__name__)

# One (axis, sign) pair per qubit identifies an axial product state
StateLabel = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class Term:
    """One signed pure state in a decomposition.

    Attributes:
        coeff: Real coefficient
        state: Pure density matrix
        label: Axial product-state label, or None for entangled states
    """

    coeff: float
    state: DensityMatrix
    label: Optional[StateLabel] = None


@dataclass(frozen=True)
class PureStateCombination:
    """A signed combination sum_k coeff_k rho_k of pure states."""

    n: int
    terms: Tuple[Term, ...]

    def reconstruct(self) -> ComplexMatrix:
        """Return sum_k coeff_k rho_k as a dense matrix."""
        dim = 2**self.n
        total = np.zeros((dim, dim), dtype=np.complex128)
        for term in self.terms:
            total += term.coeff * term.state.mat
        return total


@dataclass(frozen=True)
class ProtocolSpec:
    """A finite measurement protocol realizing the average fidelity.

    <F> = offset + scale * sum_{s,t} weight[s, t] tr(projectors[s] M(preparations[t]))

    Attributes:
        n: Number of qubits
        labels: Axial product-state label of preparation t (and of projector t
            before conjugation by U)
        preparations: Pure input states fed to the channel
        projectors: Pure measurement effects U rho_s U^dagger
        weight: Read-only (projector, preparation) weight matrix
        offset: 1/N
        scale: 1/((N+1) N^2)
    """

    n: int
    labels: Tuple[StateLabel, ...]
    preparations: Tuple[DensityMatrix, ...]
    projectors: Tuple[DensityMatrix, ...]
    weight: np.ndarray
    offset: float
    scale: float


def _check_axis(axis: int, argument: str) -> int:
    if isinstance(axis, bool) or axis not in (1, 2, 3):
        raise QFidelityDomainException(argument, f"axis must be 1, 2 or 3, got {axis!r}")
    return int(axis)


def decompose_single_qubit_pauli(j: int) -> PureStateCombination:
    """sigma_j = (+1) rho_{+j} + (-1) rho_{-j}."""
    j = _check_axis(j, "j")
    return PureStateCombination(
        1,
        (
            Term(1.0, axial_state(j, 1), ((j, 1),)),
            Term(-1.0, axial_state(j, -1), ((j, -1),)),
        ),
    )


def decompose_identity_factor(axis: int) -> PureStateCombination:
    """1 = (+1) rho_{+axis} + (+1) rho_{-axis}."""
    axis = _check_axis(axis, "axis")
    return PureStateCombination(
        1,
        (
            Term(1.0, axial_state(axis, 1), ((axis, 1),)),
            Term(1.0, axial_state(axis, -1), ((axis, -1),)),
        ),
    )


def _pauli_string_terms(f: PauliString, identity_axis: int) -> List[Tuple[float, StateLabel]]:
    """Symbolic tensor expansion: 2^n (coefficient, label) pairs."""
    if f.is_identity:
        raise QFidelityDomainException("f", "the identity string is excluded from the basis")
    identity_axis = _check_axis(identity_axis, "identity_axis")
    per_factor = []
    for label in f.labels:
        if label:
            per_factor.append(((1.0, (label, 1)), (-1.0, (label, -1))))
        else:
            per_factor.append(((1.0, (identity_axis, 1)), (1.0, (identity_axis, -1))))
    terms = []
    for branch in itertools.product(*per_factor):
        coeff = float(np.prod([sign for sign, _ in branch]))
        terms.append((coeff, tuple(state for _, state in branch)))
    return terms


def decompose_pauli_string(f: PauliString, identity_axis: int = 3) -> PureStateCombination:
    """Write a non-identity Pauli string as 2^n signed axial product states.

    Each non-identity factor sigma_m splits into rho_{+m} - rho_{-m}; each
    identity factor into rho_{+a} + rho_{-a} along ``identity_axis``.

    Raises:
        QFidelityDomainException: For the all-identity string or a bad axis
    """
    check_qubit_cap(f.n, MAX_DENSE_QUBITS, argument="f")
    terms = tuple(
        Term(coeff, product_state(label), label)
        for coeff, label in _pauli_string_terms(f, identity_axis)
    )
    return PureStateCombination(f.n, terms)


def _idempotent(mu: int, nu: int, sign: int) -> ComplexMatrix:
    """P_{+-mn} = (1 +- sigma_m (x) sigma_n) / 2."""
    return (np.eye(4, dtype=np.complex128) + sign * to_matrix(PauliString((mu, nu)))) / 2


def _rank_one_state(matrix: ComplexMatrix, what: str) -> DensityMatrix:
    trace_error = abs(complex(np.trace(matrix)) - 1.0)
    idempotency_error = float(np.max(np.abs(matrix @ matrix - matrix)))
    if trace_error > IDEMPOTENT_TOLERANCE or idempotency_error > IDEMPOTENT_TOLERANCE:
        raise QFidelityConstructionException(
            f"{what} is not a rank-1 projector (trace error {trace_error:.3g}, "
            f"idempotency error {idempotency_error:.3g})"
        )
    return validate_density(matrix)


def two_qubit_idempotent_decomposition(
    mu: int, nu: int, branch: Union[IdempotentBranch, str]
) -> PureStateCombination:
    """Expand sigma_m (x) sigma_n as a product of commuting idempotents.

    EXCHANGE (mu > nu): (P_{+mn} - P_{-mn})(P_{+nm} + P_{-nm}); the terms
        P_{s,mn} P_{t,nm} carry coefficient s and are entangled when nu > 0.
    PRODUCT (mu > 0, nu > 0): (P_{+m0} - P_{-m0})(P_{+0n} - P_{-0n}); the terms
        are the product states rho_{s m} (x) rho_{t n} with coefficient s t.

    Args:
        mu: First-qubit label 0..3
        nu: Second-qubit label 0..3
        branch: Which identity to expand; where both apply the caller decides

    Raises:
        QFidelityDomainException: For labels out of range, (0, 0), or a branch
            whose condition on (mu, nu) fails
        QFidelityConstructionException: If a term is not a rank-1 projector
    """
    for name, value in (("mu", mu), ("nu", nu)):
        if isinstance(value, bool) or value not in (0, 1, 2, 3):
            raise QFidelityDomainException(name, f"label must lie in 0..3, got {value!r}")
    if mu == 0 and nu == 0:
        raise QFidelityDomainException("mu", "the identity is excluded from the basis")
    try:
        branch = IdempotentBranch(branch)
    except ValueError:
        raise QFidelityDomainException("branch", f"unknown branch {branch!r}")

    terms = []
    if branch is IdempotentBranch.EXCHANGE:
        if not mu > nu:
            raise QFidelityDomainException("branch", f"exchange form needs mu > nu, got ({mu}, {nu})")
        for s, t in itertools.product((1, -1), repeat=2):
            matrix = _idempotent(mu, nu, s) @ _idempotent(nu, mu, t)
            label = ((mu, s), (mu, t)) if nu == 0 else None
            state = _rank_one_state(matrix, f"P[{s:+d},{mu}{nu}] P[{t:+d},{nu}{mu}]")
            terms.append(Term(float(s), state, label))
    else:
        if not (mu > 0 and nu > 0):
            raise QFidelityDomainException(
                "branch", f"product form needs mu > 0 and nu > 0, got ({mu}, {nu})"
            )
        for s, t in itertools.product((1, -1), repeat=2):
            matrix = _idempotent(mu, 0, s) @ _idempotent(0, nu, t)
            state = _rank_one_state(matrix, f"P[{s:+d},{mu}0] P[{t:+d},0{nu}]")
            terms.append(Term(float(s * t), state, ((mu, s), (nu, t))))
    return PureStateCombination(2, tuple(terms))


def build_protocol(
    u: ComplexMatrix,
    n: int,
    identity_axis: int = 3,
    max_qubits: int = MAX_PROTOCOL_QUBITS,
    tol: float = DEFAULT_TOLERANCE,
) -> ProtocolSpec:
    """Synthesize the prepare-and-measure protocol for target U on n qubits.

    Preparations are the distinct axial product states appearing in the
    decompositions of all f_j (6^n of them); with coefficients c_js,
    weight[s, t] = sum_j c_js c_jt, so that by linearity of M the protocol
    value equals the closed-form average fidelity for every channel.

    Raises:
        QFidelityDomainException: If n exceeds ``max_qubits`` or U has the wrong size
        QFidelityValidationException: If U is not unitary
    """
    n = check_qubit_cap(n, max_qubits)
    u = as_complex_matrix(u, "U")
    require_dim(u, 2**n, "U")
    report = check_unitary(u, tol)
    if not report.ok:
        raise QFidelityValidationException(
            ValidationCheck.UNITARITY, "target U is not unitary", report.max_deviation
        )

    index: Dict[StateLabel, int] = {}
    rows: List[Dict[int, float]] = []
    for _, f in basis_elements(n):
        row: Dict[int, float] = {}
        for coeff, label in _pauli_string_terms(f, identity_axis):
            position = index.setdefault(label, len(index))
            row[position] = row.get(position, 0.0) + coeff
        rows.append(row)
    coefficients = np.zeros((len(rows), len(index)))
    for j, row in enumerate(rows):
        for position, coeff in row.items():
            coefficients[j, position] = coeff
    weight = coefficients.T @ coefficients
    weight.setflags(write=False)

    labels = tuple(sorted(index, key=index.__getitem__))
    preparations = tuple(product_state(label) for label in labels)
    projectors = tuple(validate_density(conjugate(u, state.mat), tol) for state in preparations)
    dim = 2**n
    _LOGGER.debug("Protocol for %d qubits: %d preparations", n, len(labels))
    return ProtocolSpec(
        n=n,
        labels=labels,
        preparations=preparations,
        projectors=projectors,
        weight=weight,
        offset=1.0 / dim,
        scale=1.0 / ((dim + 1) * dim**2),
    )


def evaluate_protocol(protocol: ProtocolSpec, channel: Channel) -> float:
    """Evaluate offset + scale * sum_{s,t} weight[s, t] tr(projector_s M(preparation_t)).

    Raises:
        QFidelityDomainException: If the channel acts on a different qubit count
    """
    if channel.n != protocol.n:
        raise QFidelityDomainException(
            "M", f"channel acts on {channel.n} qubits, protocol on {protocol.n}"
        )
    preparations = np.stack([state.mat for state in protocol.preparations])
    projectors = np.stack([state.mat for state in protocol.projectors])
    outputs = apply_batch(channel, preparations)
    overlaps = np.einsum("sab,tba->st", projectors, outputs)
    total = np.sum(protocol.weight * overlaps)
    return checked_real(protocol.offset + protocol.scale * total, "protocol value")


def protocol_from_matrices(
    n: int,
    labels: Sequence[StateLabel],
    preparations: Sequence[ComplexMatrix],
    projectors: Sequence[ComplexMatrix],
    weight: Sequence[Sequence[float]],
    offset: float,
    scale: float,
    tol: float = DEFAULT_TOLERANCE,
) -> ProtocolSpec:
    """Rebuild a ProtocolSpec from raw matrices, validating every state as pure.

    Raises:
        QFidelityValidationException: If a state is invalid or not pure
    """
    states = []
    for what, group in (("preparation", preparations), ("projector", projectors)):
        checked = []
        for k, matrix in enumerate(group):
            state = validate_density(matrix, tol)
            if state.n != n or not state.is_pure(IDEMPOTENT_TOLERANCE):
                raise QFidelityValidationException(
                    ValidationCheck.SPEC_FILE, f"{what} {k} is not a pure {n}-qubit state"
                )
            checked.append(state)
        states.append(tuple(checked))
    weight_matrix = np.array(weight, dtype=np.float64)
    weight_matrix.setflags(write=False)
    return ProtocolSpec(
        n=n,
        labels=tuple(tuple((int(a), int(s)) for a, s in label) for label in labels),
        preparations=states[0],
        projectors=states[1],
        weight=weight_matrix,
        offset=float(offset),
        scale=float(scale),
    )
