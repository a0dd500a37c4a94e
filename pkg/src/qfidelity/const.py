"""Constants for the qfidelity package."""

from enum import Enum
from typing import Final

# Serialized documents (specs, reports, protocols)
FORMAT_VERSION: Final[int] = 1

# Validation tolerances
DEFAULT_TOLERANCE: Final[float] = 1e-9  # Hermiticity, trace, eigenvalue floor, unitarity
IMAG_TOLERANCE: Final[float] = 1e-10  # Residual imaginary part before taking a real part
PURITY_TOLERANCE: Final[float] = 1e-8  # pure_fidelity precondition
EIGENVALUE_CLIP: Final[float] = 1e-10  # Uhlmann: eigenvalues in [-clip, 0) are rounding
IDEMPOTENT_TOLERANCE: Final[float] = 1e-10  # Rank-1 check on idempotent terms
FIDELITY_RANGE_TOLERANCE: Final[float] = 1e-9

# Qubit caps. Dense matrices at the dense cap hold 65536 entries; the closed form
# evaluates 4^n - 1 trace terms, the protocol carries 6^n preparations.
MAX_DENSE_QUBITS: Final[int] = 8
MAX_CLOSED_FORM_QUBITS: Final[int] = 5
MAX_PROTOCOL_QUBITS: Final[int] = 3
MAX_DEPOLARIZING_QUBITS: Final[int] = 5  # 4^n Kraus operators of size 2^n x 2^n

# Monte Carlo
RNG_ALGORITHM: Final[str] = "PCG64"
MC_CHUNK_SIZE: Final[int] = 4096  # Haar states materialized per vectorized batch
MIN_MC_SAMPLES: Final[int] = 2

# Environment variables read by FidelitySettings.from_env()
ENV_TOLERANCE: Final[str] = "QFIDELITY_TOL"
ENV_MAX_QUBITS: Final[str] = "QFIDELITY_MAX_QUBITS"
ENV_MC_CHUNK_SIZE: Final[str] = "QFIDELITY_MC_CHUNK_SIZE"
ENV_MC_WORKERS: Final[str] = "QFIDELITY_MC_WORKERS"

# Pauli labels 0..3 <-> text
PAULI_LABEL_CHARS: Final[str] = "IXYZ"


class ChannelKind(str, Enum):
    """Enum for the concrete representation of a channel."""

    UNITARY = "unitary"
    KRAUS = "kraus"


class FidelityMethod(str, Enum):
    """Enum for the way an average fidelity was obtained."""

    CLOSED_FORM = "closed_form"
    SIX_STATE = "six_state"
    MONTE_CARLO = "monte_carlo"


class IdempotentBranch(str, Enum):
    """Enum for the two-qubit idempotent identities.

    EXCHANGE: (P+mn - P-mn)(P+nm + P-nm), valid for mu > nu.
    PRODUCT: (P+m0 - P-m0)(P+0n - P-0n), valid for mu > 0 and nu > 0.
    """

    EXCHANGE = "exchange"
    PRODUCT = "product"


class ValidationCheck(str, Enum):
    """Enum for the named invariant checks reported by validation errors."""

    SHAPE = "shape"
    HERMITICITY = "hermiticity"
    TRACE = "trace"
    POSITIVITY = "positivity"
    UNITARITY = "unitarity"
    TRACE_PRESERVATION = "trace_preservation"
    SPEC_FILE = "spec_file"
    SETTINGS = "settings"
