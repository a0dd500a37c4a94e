"""High-level client tying spec files, settings and the quantum toolkit together.

The CLI is a thin layer over FidelityClient; library users who keep their
channel descriptions in JSON can use the client directly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import ValidationError

from .config import FidelitySettings
from .const import ChannelKind, ValidationCheck
from .exceptions import QFidelityValidationException
from .models import (
    AmplitudeDampingChannelSpec,
    ChannelSpecFile,
    CheckEntry,
    CheckReportDocument,
    DepolarizingChannelSpec,
    FidelityReport,
    IdentityChannelSpec,
    KrausChannelSpec,
    PhaseDampingChannelSpec,
    ProtocolDocument,
    UnitaryChannelSpec,
    matrix_to_pairs,
    pairs_to_matrix,
)
from .quantum.base import check_qubit_cap, dagger, max_abs_deviation
from .quantum.channels import (
    Channel,
    amplitude_damping,
    apply_to_operator,
    check_trace_preserving,
    check_unitary,
    depolarizing,
    identity_channel,
    kraus_channel,
    phase_damping,
    unitary_channel,
)
from .quantum.decomposition import (
    ProtocolSpec,
    build_protocol,
    evaluate_protocol,
    protocol_from_matrices,
)
from .quantum.fidelity import average_fidelity, mc_average_fidelity
from .quantum.states import haar_random_pure, maximally_mixed, product_state
from .rng import RandomStream

_LOGGER = logging.getLogger(__name__)

PathLike = Union[str, Path]

# Fixed seed for the sample states used by the output-density check
_SAMPLE_SEED = 20070101
_SAMPLE_HAAR_STATES = 8


@dataclass(frozen=True)
class LoadedSpec:
    """A parsed spec file turned into matrices and a Channel.

    Attributes:
        n: Number of qubits
        target: Target unitary (identity when the file gives none)
        channel: The implemented map
        document: The parsed document
    """

    n: int
    target: np.ndarray
    channel: Channel
    document: ChannelSpecFile


def _spec_error(message: str) -> QFidelityValidationException:
    return QFidelityValidationException(ValidationCheck.SPEC_FILE, message)


def _read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise _spec_error(f"cannot read {path}: {err.strerror or err}")


def _first_error(err: ValidationError) -> str:
    first = err.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "document"
    return f"{location}: {first['msg']}"


class FidelityClient:
    """Evaluate spec files: closed form, Monte Carlo, protocols and checks."""

    def __init__(self, settings: Optional[FidelitySettings] = None) -> None:
        """Initialize the FidelityClient.

        Args:
            settings: Settings to use; read from the environment when None
        """
        self._settings = settings or FidelitySettings.from_env()

    @property
    def settings(self) -> FidelitySettings:
        """The active settings."""
        return self._settings

    # ==================== Spec files ====================

    def parse_spec(self, text: str) -> ChannelSpecFile:
        """Parse a spec document.

        Raises:
            QFidelityValidationException: With check ``spec_file`` on malformed input
        """
        try:
            return ChannelSpecFile.model_validate_json(text)
        except ValidationError as err:
            raise _spec_error(_first_error(err))

    def build_spec(self, document: ChannelSpecFile, validate: bool = True) -> LoadedSpec:
        """Turn a parsed document into matrices and a Channel.

        Args:
            document: Parsed spec
            validate: Enforce unitarity and trace preservation (False is used by
                ``check``, which reports deviations instead of raising)

        Raises:
            QFidelityValidationException: If an invariant fails and validate is True
            QFidelityDomainException: If n exceeds the dense-matrix qubit cap
        """
        tol = self._settings.tolerance
        n = check_qubit_cap(document.n)
        if document.target_unitary is None:
            target = np.eye(2**n, dtype=np.complex128)
        else:
            target = pairs_to_matrix(document.target_unitary)
            report = check_unitary(target, tol)
            if validate and not report.ok:
                raise QFidelityValidationException(
                    ValidationCheck.UNITARITY, "target_unitary is not unitary", report.max_deviation
                )
        return LoadedSpec(n, target, self._build_channel(document, validate), document)

    def _build_channel(self, document: ChannelSpecFile, validate: bool) -> Channel:
        tol = self._settings.tolerance
        spec = document.channel
        if isinstance(spec, IdentityChannelSpec):
            return identity_channel(document.n)
        if isinstance(spec, UnitaryChannelSpec):
            return unitary_channel(pairs_to_matrix(spec.matrix), tol, validate=validate)
        if isinstance(spec, KrausChannelSpec):
            operators = [pairs_to_matrix(op) for op in spec.operators]
            return kraus_channel(operators, tol, validate=validate)
        if isinstance(spec, DepolarizingChannelSpec):
            return depolarizing(document.n, spec.p)
        if isinstance(spec, AmplitudeDampingChannelSpec):
            return amplitude_damping(spec.gamma)
        if isinstance(spec, PhaseDampingChannelSpec):
            return phase_damping(spec.lam)
        raise _spec_error(f"unsupported channel kind {spec.kind!r}")

    def load_spec(self, path: PathLike, validate: bool = True) -> LoadedSpec:
        """Read, parse and build a spec file."""
        _LOGGER.debug("Loading spec %s", path)
        return self.build_spec(self.parse_spec(_read_text(path)), validate)

    # ==================== Fidelity ====================

    def average(self, spec: LoadedSpec) -> FidelityReport:
        """Closed-form average fidelity of the spec's channel against its target."""
        return average_fidelity(
            spec.target,
            spec.channel,
            spec.n,
            max_qubits=self._settings.max_closed_form_qubits,
            tol=self._settings.tolerance,
        )

    def monte_carlo(
        self, spec: LoadedSpec, samples: int, seed: Optional[int] = None, chunks: int = 1
    ) -> FidelityReport:
        """Monte-Carlo estimate over Haar-random inputs."""
        return mc_average_fidelity(
            spec.target,
            spec.channel,
            spec.n,
            samples,
            seed=seed,
            chunks=chunks,
            workers=self._settings.mc_workers,
            chunk_size=self._settings.mc_chunk_size,
            tol=self._settings.tolerance,
        )

    # ==================== Protocols ====================

    def protocol(self, spec: LoadedSpec) -> ProtocolSpec:
        """Build the measurement protocol for the spec's target unitary."""
        return build_protocol(
            spec.target,
            spec.n,
            max_qubits=self._settings.max_protocol_qubits,
            tol=self._settings.tolerance,
        )

    def evaluate_protocol(self, protocol: ProtocolSpec, spec: LoadedSpec) -> float:
        """Value of a protocol on the spec's channel."""
        return evaluate_protocol(protocol, spec.channel)

    @staticmethod
    def protocol_to_document(protocol: ProtocolSpec) -> ProtocolDocument:
        """Serialize a protocol."""
        return ProtocolDocument(
            n=protocol.n,
            labels=[list(label) for label in protocol.labels],
            preparations=[matrix_to_pairs(state.mat) for state in protocol.preparations],
            projectors=[matrix_to_pairs(state.mat) for state in protocol.projectors],
            weight=protocol.weight.tolist(),
            offset=protocol.offset,
            scale=protocol.scale,
        )

    def document_to_protocol(self, document: ProtocolDocument) -> ProtocolSpec:
        """Deserialize a protocol, revalidating every state as pure."""
        try:
            preparations = [pairs_to_matrix(m) for m in document.preparations]
            projectors = [pairs_to_matrix(m) for m in document.projectors]
        except ValueError as err:
            raise _spec_error(str(err))
        return protocol_from_matrices(
            document.n,
            document.labels,
            preparations,
            projectors,
            document.weight,
            document.offset,
            document.scale,
            tol=self._settings.tolerance,
        )

    def load_protocol(self, path: PathLike) -> ProtocolSpec:
        """Read a protocol file written by ``qfidelity protocol``."""
        try:
            document = ProtocolDocument.model_validate_json(_read_text(path))
        except ValidationError as err:
            raise _spec_error(_first_error(err))
        return self.document_to_protocol(document)

    # ==================== Reports ====================

    @staticmethod
    def load_report(text: str) -> FidelityReport:
        """Parse a report printed by ``avg`` or ``mc``."""
        try:
            return FidelityReport.model_validate_json(text)
        except ValidationError as err:
            raise _spec_error(_first_error(err))

    # ==================== Checks ====================

    def check(self, spec: LoadedSpec) -> CheckReportDocument:
        """Run unitarity, trace-preservation and output-density checks.

        The spec should be built with ``validate=False`` so that failing
        invariants are reported rather than raised.
        """
        tol = self._settings.tolerance
        entries: List[CheckEntry] = []

        target = check_unitary(spec.target, tol)
        entries.append(CheckEntry(check="target_unitarity", max_deviation=target.max_deviation,
                                  ok=target.ok, tolerance=tol))
        if spec.channel.kind is ChannelKind.UNITARY:
            channel_report = check_unitary(spec.channel.operators[0], tol)
            name = "channel_unitarity"
        else:
            channel_report = check_trace_preserving(spec.channel, tol)
            name = ValidationCheck.TRACE_PRESERVATION.value
        entries.append(CheckEntry(check=name, max_deviation=channel_report.max_deviation,
                                  ok=channel_report.ok, tolerance=tol))

        density_deviation = self._output_density_deviation(spec)
        entries.append(CheckEntry(check="output_density", max_deviation=density_deviation,
                                  ok=density_deviation <= tol, tolerance=tol))

        for entry in entries:
            _LOGGER.debug("Check %s: deviation %.3g ok=%s", entry.check, entry.max_deviation, entry.ok)
        return CheckReportDocument(n=spec.n, ok=all(e.ok for e in entries), checks=entries)

    def _output_density_deviation(self, spec: LoadedSpec) -> float:
        """Worst violation of the density contract over a fixed set of sample inputs."""
        inputs = [maximally_mixed(spec.n), product_state([(3, 1)] * spec.n)]
        stream = RandomStream(_SAMPLE_SEED, name="density-check")
        inputs.extend(haar_random_pure(spec.n, stream) for _ in range(_SAMPLE_HAAR_STATES))
        worst = 0.0
        for state in inputs:
            output = apply_to_operator(spec.channel, state.mat)
            hermitized = (output + dagger(output)) / 2
            worst = max(
                worst,
                max_abs_deviation(output, dagger(output)),
                abs(complex(np.trace(output)) - 1.0),
                max(0.0, -float(np.linalg.eigvalsh(hermitized)[0])),
            )
        return worst
