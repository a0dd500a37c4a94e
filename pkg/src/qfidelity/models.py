"""Pydantic models for every JSON document qfidelity reads or writes.

Complex numbers travel as ``[re, im]`` pairs and matrices as nested lists of
such pairs. Every document carries ``format_version``.
"""

from __future__ import annotations

from typing import Annotated, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .const import FORMAT_VERSION, MAX_DENSE_QUBITS, FidelityMethod

ComplexPair = Tuple[float, float]
MatrixData = List[List[ComplexPair]]
StateLabel = List[Tuple[int, int]]

_RANGE_SLACK = 1e-12


def matrix_to_pairs(matrix: np.ndarray) -> MatrixData:
    """Serialize a complex matrix as nested [re, im] pairs."""
    return [[(float(cell.real), float(cell.imag)) for cell in row] for row in np.asarray(matrix)]


def pairs_to_matrix(data: MatrixData) -> np.ndarray:
    """Deserialize nested [re, im] pairs into a complex128 array."""
    array = np.asarray(data, dtype=np.float64)
    if array.ndim != 3 or array.shape[-1] != 2:
        raise ValueError(f"matrix must be a 2-D grid of [re, im] pairs, got shape {array.shape}")
    return array[..., 0] + 1j * array[..., 1]


def _matrix_dim(data: MatrixData, what: str) -> int:
    rows = len(data)
    if rows == 0 or any(len(row) != rows for row in data):
        raise ValueError(f"{what} must be a non-empty square matrix")
    return rows


class _Document(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    format_version: Literal[1] = FORMAT_VERSION


class FidelityReport(_Document):
    """An average-fidelity result.

    Deterministic methods carry ``samples = 0`` and ``stderr = 0``; Monte-Carlo
    reports also record the seed, RNG algorithm and chunk layout.
    """

    method: FidelityMethod
    value: float
    n: int = Field(ge=1)
    samples: int = Field(default=0, ge=0)
    stderr: float = Field(default=0.0, ge=0.0)
    seed: Optional[int] = None
    rng: Optional[str] = None
    chunks: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_invariants(self) -> "FidelityReport":
        if not -_RANGE_SLACK <= self.value <= 1.0 + _RANGE_SLACK:
            raise ValueError(f"fidelity {self.value} outside [0, 1]")
        if self.method is FidelityMethod.MONTE_CARLO:
            if self.samples < 1:
                raise ValueError("monte_carlo reports need at least one sample")
            if self.seed is None:
                raise ValueError("monte_carlo reports must record their seed")
        return self


class IdentityChannelSpec(BaseModel):
    """The identity map."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["identity"]


class UnitaryChannelSpec(BaseModel):
    """Conjugation by a unitary matrix."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["unitary"]
    matrix: MatrixData


class KrausChannelSpec(BaseModel):
    """An explicit Kraus family."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["kraus"]
    operators: List[MatrixData] = Field(min_length=1)


class DepolarizingChannelSpec(BaseModel):
    """n-qubit depolarizing channel."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["depolarizing"]
    p: float = Field(ge=0.0, le=1.0)


class AmplitudeDampingChannelSpec(BaseModel):
    """Single-qubit amplitude damping."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["amplitude_damping"]
    gamma: float = Field(ge=0.0, le=1.0)


class PhaseDampingChannelSpec(BaseModel):
    """Single-qubit phase damping."""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    kind: Literal["phase_damping"]
    lam: float = Field(ge=0.0, le=1.0, alias="lambda")


ChannelSpec = Annotated[
    Union[
        IdentityChannelSpec,
        UnitaryChannelSpec,
        KrausChannelSpec,
        DepolarizingChannelSpec,
        AmplitudeDampingChannelSpec,
        PhaseDampingChannelSpec,
    ],
    Field(discriminator="kind"),
]


class ChannelSpecFile(_Document):
    """Input document: qubit count, target unitary (identity when absent), channel."""

    n: int = Field(ge=1, le=MAX_DENSE_QUBITS)
    target_unitary: Optional[MatrixData] = None
    channel: ChannelSpec

    @model_validator(mode="after")
    def _check_dimensions(self) -> "ChannelSpecFile":
        dim = 2**self.n
        if self.target_unitary is not None:
            if _matrix_dim(self.target_unitary, "target_unitary") != dim:
                raise ValueError(f"target_unitary must be {dim}x{dim} for n={self.n}")
        channel = self.channel
        if isinstance(channel, UnitaryChannelSpec):
            if _matrix_dim(channel.matrix, "channel matrix") != dim:
                raise ValueError(f"channel matrix must be {dim}x{dim} for n={self.n}")
        elif isinstance(channel, KrausChannelSpec):
            for k, operator in enumerate(channel.operators):
                if _matrix_dim(operator, f"Kraus operator {k}") != dim:
                    raise ValueError(f"Kraus operator {k} must be {dim}x{dim} for n={self.n}")
        elif isinstance(channel, (AmplitudeDampingChannelSpec, PhaseDampingChannelSpec)):
            if self.n != 1:
                raise ValueError(f"{channel.kind} is a single-qubit channel, got n={self.n}")
        return self


class CheckEntry(BaseModel):
    """One named check with its deviation and verdict."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    check: str
    max_deviation: float
    ok: bool
    tolerance: float


class CheckReportDocument(_Document):
    """Output of ``qfidelity check``."""

    n: int = Field(ge=1)
    ok: bool
    checks: List[CheckEntry]


class ProtocolDocument(_Document):
    """A serialized measurement protocol.

    <F> = offset + scale * sum_{s,t} weight[s][t] tr(projectors[s] M(preparations[t]))
    """

    n: int = Field(ge=1)
    labels: List[StateLabel]
    preparations: List[MatrixData]
    projectors: List[MatrixData]
    weight: List[List[float]]
    offset: float
    scale: float

    @model_validator(mode="after")
    def _check_shapes(self) -> "ProtocolDocument":
        count = len(self.preparations)
        if len(self.projectors) != count or len(self.labels) != count:
            raise ValueError("labels, preparations and projectors must have equal length")
        if len(self.weight) != count or any(len(row) != count for row in self.weight):
            raise ValueError(f"weight must be a {count}x{count} matrix")
        return self


class ProtocolEvaluationDocument(_Document):
    """Output of ``qfidelity protocol --evaluate``: protocol value next to the closed form."""

    n: int = Field(ge=1)
    preparations: int = Field(ge=1)
    protocol_value: float
    closed_form: float
