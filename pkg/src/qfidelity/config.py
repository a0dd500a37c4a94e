"""Run-time settings, read from the environment and overridden by CLI flags."""

from __future__ import annotations

import logging
import os
from typing import Any, Dict, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .const import (
    DEFAULT_TOLERANCE,
    ENV_MAX_QUBITS,
    ENV_MC_CHUNK_SIZE,
    ENV_MC_WORKERS,
    ENV_TOLERANCE,
    MAX_CLOSED_FORM_QUBITS,
    MAX_DENSE_QUBITS,
    MAX_PROTOCOL_QUBITS,
    MC_CHUNK_SIZE,
    ValidationCheck,
)
from .exceptions import QFidelityValidationException

_LOGGER = logging.getLogger(__name__)

_ENV_FIELDS: Dict[str, str] = {
    ENV_TOLERANCE: "tolerance",
    ENV_MAX_QUBITS: "max_closed_form_qubits",
    ENV_MC_CHUNK_SIZE: "mc_chunk_size",
    ENV_MC_WORKERS: "mc_workers",
}


class FidelitySettings(BaseModel):
    """Knobs shared by the client and the CLI.

    Attributes:
        tolerance: Validation tolerance (Hermiticity, trace, eigenvalues, unitarity,
            trace preservation)
        max_closed_form_qubits: Largest n the closed form accepts
        max_protocol_qubits: Largest n for protocol synthesis
        mc_chunk_size: Haar states materialized per vectorized batch
        mc_workers: Threads used by the Monte-Carlo estimator
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    tolerance: float = Field(default=DEFAULT_TOLERANCE, gt=0.0, lt=1.0)
    max_closed_form_qubits: int = Field(default=MAX_CLOSED_FORM_QUBITS, ge=1, le=MAX_DENSE_QUBITS)
    max_protocol_qubits: int = Field(default=MAX_PROTOCOL_QUBITS, ge=1, le=MAX_DENSE_QUBITS)
    mc_chunk_size: int = Field(default=MC_CHUNK_SIZE, ge=1)
    mc_workers: int = Field(default=1, ge=1)

    @classmethod
    def from_env(
        cls, environ: Optional[Mapping[str, str]] = None, **overrides: Any
    ) -> "FidelitySettings":
        """Build settings from QFIDELITY_* variables, then apply explicit overrides.

        Args:
            environ: Mapping to read instead of os.environ
            **overrides: Field values that win over the environment (None is ignored)

        Raises:
            QFidelityValidationException: If a variable or override is invalid
        """
        environ = os.environ if environ is None else environ
        values: Dict[str, Any] = {}
        for variable, field in _ENV_FIELDS.items():
            raw = environ.get(variable)
            if raw:
                _LOGGER.debug("Setting %s from %s", field, variable)
                values[field] = raw
        values.update({key: value for key, value in overrides.items() if value is not None})
        try:
            return cls(**values)
        except ValidationError as err:
            first = err.errors()[0]
            field = ".".join(str(part) for part in first["loc"])
            variable = next((v for v, f in _ENV_FIELDS.items() if f == field), field)
            raise QFidelityValidationException(
                ValidationCheck.SETTINGS, f"invalid value for {variable}: {first['msg']}"
            )
