"""Dense-matrix quantum toolkit: Pauli strings, states, channels, fidelities."""

from .channels import (
    Channel,
    CheckReport,
    amplitude_damping,
    apply,
    apply_batch,
    apply_to_operator,
    check_trace_preserving,
    check_unitary,
    compose,
    depolarizing,
    identity_channel,
    kraus_channel,
    phase_damping,
    unitary_channel,
)
from .decomposition import (
    ProtocolSpec,
    PureStateCombination,
    Term,
    build_protocol,
    decompose_identity_factor,
    decompose_pauli_string,
    decompose_single_qubit_pauli,
    evaluate_protocol,
    protocol_from_matrices,
    two_qubit_idempotent_decomposition,
)
from .fidelity import (
    average_fidelity,
    average_fidelity_single_qubit_bloch,
    average_fidelity_six_state,
    mc_average_fidelity,
    pure_fidelity,
    uhlmann_fidelity,
    unitary_pair_fidelity,
)
from .pauli import (
    PauliString,
    basis_element,
    basis_elements,
    basis_index,
    basis_matrices,
    hs_inner,
    kron,
    pauli_hs_inner,
    pauli_product,
    rotor,
    to_matrix,
)
from .states import (
    DensityMatrix,
    PolarizationVector,
    axial_state,
    haar_random_kets,
    haar_random_pure,
    maximally_mixed,
    polarization_expand,
    polarization_moments,
    polarization_overlap,
    polarization_reconstruct,
    product_state,
    pure_state,
    purity,
    validate_density,
)

__all__ = [
    # Pauli strings
    "PauliString",
    "basis_element",
    "basis_elements",
    "basis_index",
    "basis_matrices",
    "hs_inner",
    "kron",
    "pauli_hs_inner",
    "pauli_product",
    "rotor",
    "to_matrix",
    # States
    "DensityMatrix",
    "PolarizationVector",
    "axial_state",
    "haar_random_kets",
    "haar_random_pure",
    "maximally_mixed",
    "polarization_expand",
    "polarization_moments",
    "polarization_overlap",
    "polarization_reconstruct",
    "product_state",
    "pure_state",
    "purity",
    "validate_density",
    # Channels
    "Channel",
    "CheckReport",
    "amplitude_damping",
    "apply",
    "apply_batch",
    "apply_to_operator",
    "check_trace_preserving",
    "check_unitary",
    "compose",
    "depolarizing",
    "identity_channel",
    "kraus_channel",
    "phase_damping",
    "unitary_channel",
    # Fidelity
    "average_fidelity",
    "average_fidelity_single_qubit_bloch",
    "average_fidelity_six_state",
    "mc_average_fidelity",
    "pure_fidelity",
    "uhlmann_fidelity",
    "unitary_pair_fidelity",
    # Decomposition
    "ProtocolSpec",
    "PureStateCombination",
    "Term",
    "build_protocol",
    "decompose_identity_factor",
    "decompose_pauli_string",
    "decompose_single_qubit_pauli",
    "evaluate_protocol",
    "protocol_from_matrices",
    "two_qubit_idempotent_decomposition",
]
