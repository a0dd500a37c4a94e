"""Array-aware logging utilities for qfidelity.

This module provides an ArraySummaryLoggerAdapter that replaces large numpy
arrays in log arguments with a one-line summary, so that dense 2^n x 2^n
matrices never end up printed entry by entry in a log file.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Any, Dict, List, MutableMapping, Optional, Tuple

import numpy as np

# Arrays with more entries than this are summarized
DEFAULT_MAX_ENTRIES: int = 16


def summarize_array(array: np.ndarray) -> str:
    """Describe an array by dtype, shape and, for square matrices, trace.

    Args:
        array: The array to describe

    Returns:
        Summary string, e.g. ``<complex128 array shape=(4, 4) trace=1+0j>``
    """
    summary = f"<{array.dtype} array shape={array.shape}"
    if array.ndim == 2 and array.shape[0] == array.shape[1] and array.size:
        summary += f" trace={complex(np.trace(array)):.6g}"
    return summary + ">"


def summarize_value(value: Any, max_entries: int = DEFAULT_MAX_ENTRIES) -> Any:
    """Summarize large arrays inside any value for logging.

    This function can handle:
    - numpy arrays (summarized when larger than ``max_entries``)
    - Dictionaries (recursively summarized values)
    - Lists and tuples (element-wise)
    - Other types (returned as-is)

    Args:
        value: The value to potentially summarize
        max_entries: Largest array size that is logged verbatim

    Returns:
        Value with large arrays replaced by summary strings
    """
    if isinstance(value, np.ndarray):
        return summarize_array(value) if value.size > max_entries else value
    if isinstance(value, dict):
        return {key: summarize_value(item, max_entries) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        summarized: List[Any] = [summarize_value(item, max_entries) for item in value]
        return type(value)(summarized) if isinstance(value, tuple) else summarized
    return value


class ArraySummaryLoggerAdapter(logging.LoggerAdapter):  # type: ignore[type-arg]
    """Logger adapter that summarizes large arrays in log arguments.

    Example:
        logger = get_array_logger(__name__)
        logger.debug("Kraus operator: %s", np.eye(64))
        # Logs: "Kraus operator: <float64 array shape=(64, 64) trace=64+0j>"
    """

    def __init__(
        self,
        logger: logging.Logger,
        extra: Optional[Dict[str, Any]] = None,
        max_entries: int = DEFAULT_MAX_ENTRIES,
    ) -> None:
        """Initialize the adapter.

        Args:
            logger: The underlying logger to wrap
            extra: Extra context to include in all log messages
            max_entries: Largest array size that is logged verbatim
        """
        super().__init__(logger, extra or {})
        self._max_entries = max_entries

    def process(
        self, msg: Any, kwargs: MutableMapping[str, Any]
    ) -> Tuple[Any, MutableMapping[str, Any]]:
        """Summarize arrays found in the ``extra`` dict."""
        if "extra" in kwargs and isinstance(kwargs["extra"], dict):
            kwargs["extra"] = summarize_value(kwargs["extra"], self._max_entries)
        return super().process(msg, kwargs)

    def _log_summarized(
        self,
        level: int,
        msg: str,
        args: Tuple[Any, ...],
        **kwargs: Any,
    ) -> None:
        """Log with array arguments summarized.

        Args:
            level: Log level
            msg: Log message format string
            args: Positional arguments for string formatting
            **kwargs: Additional keyword arguments
        """
        if not self.isEnabledFor(level):
            return
        summarized = tuple(summarize_value(arg, self._max_entries) for arg in args)
        if isinstance(kwargs.get("extra"), dict):
            kwargs["extra"] = summarize_value(kwargs["extra"], self._max_entries)
        self.logger.log(level, msg, *summarized, **kwargs)

    def debug(self, msg: Any, *args: Any, **kwargs: Any) -> None:  # type: ignore[override]
        """Log debug message with arrays summarized."""
        self._log_summarized(logging.DEBUG, str(msg), args, **kwargs)

    def info(self, msg: Any, *args: Any, **kwargs: Any) -> None:  # type: ignore[override]
        """Log info message with arrays summarized."""
        self._log_summarized(logging.INFO, str(msg), args, **kwargs)

    def warning(self, msg: Any, *args: Any, **kwargs: Any) -> None:  # type: ignore[override]
        """Log warning message with arrays summarized."""
        self._log_summarized(logging.WARNING, str(msg), args, **kwargs)

    def error(self, msg: Any, *args: Any, **kwargs: Any) -> None:  # type: ignore[override]
        """Log error message with arrays summarized."""
        self._log_summarized(logging.ERROR, str(msg), args, **kwargs)

    def exception(self, msg: Any, *args: Any, **kwargs: Any) -> None:  # type: ignore[override]
        """Log exception with arrays summarized."""
        kwargs["exc_info"] = kwargs.get("exc_info", True)
        self._log_summarized(logging.ERROR, str(msg), args, **kwargs)


@lru_cache(maxsize=128)
def get_array_logger(name: str, max_entries: int = DEFAULT_MAX_ENTRIES) -> ArraySummaryLoggerAdapter:
    """Get a logger that summarizes large numpy arrays.

    This is a drop-in replacement for logging.getLogger() in modules that log
    matrices.

    Args:
        name: Logger name (typically __name__)
        max_entries: Largest array size that is logged verbatim

    Returns:
        ArraySummaryLoggerAdapter instance
    """
    return ArraySummaryLoggerAdapter(logging.getLogger(name), max_entries=max_entries)
