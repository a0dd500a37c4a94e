"""qfidelity - Average fidelity of n-qubit quantum channels."""

from .client import FidelityClient, LoadedSpec
from .config import FidelitySettings
from .exceptions import (
    QFidelityChannelDefectException,
    QFidelityConsistencyException,
    QFidelityConstructionException,
    QFidelityDomainException,
    QFidelityException,
    QFidelityInadmissibleStateException,
    QFidelityValidationException,
)
from .logging import ArraySummaryLoggerAdapter, get_array_logger, summarize_array
from .models import ChannelSpecFile, CheckReportDocument, FidelityReport, ProtocolDocument
from .quantum import (
    Channel,
    DensityMatrix,
    PauliString,
    PolarizationVector,
    ProtocolSpec,
    average_fidelity,
    build_protocol,
    evaluate_protocol,
    mc_average_fidelity,
)
from .rng import RandomStream

__all__ = [
    "FidelityClient",
    "FidelitySettings",
    "LoadedSpec",
    "QFidelityException",
    "QFidelityChannelDefectException",
    "QFidelityConsistencyException",
    "QFidelityConstructionException",
    "QFidelityDomainException",
    "QFidelityInadmissibleStateException",
    "QFidelityValidationException",
    # Documents
    "ChannelSpecFile",
    "CheckReportDocument",
    "FidelityReport",
    "ProtocolDocument",
    # Core types and entry points
    "Channel",
    "DensityMatrix",
    "PauliString",
    "PolarizationVector",
    "ProtocolSpec",
    "RandomStream",
    "average_fidelity",
    "build_protocol",
    "evaluate_protocol",
    "mc_average_fidelity",
    # Array-summarizing logging utilities
    "get_array_logger",
    "ArraySummaryLoggerAdapter",
    "summarize_array",
]

__version__ = "1.0.0"
