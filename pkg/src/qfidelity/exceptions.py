"""Exceptions for the qfidelity package."""

from typing import Optional


class QFidelityException(Exception):
    """Base exception for all qfidelity errors."""

    def __init__(self, message: str = "An error occurred"):
        self.message = message
        super().__init__(message)

    def is_input_error(self) -> bool:
        """Return True if this exception was caused by caller-supplied input."""
        return False


class QFidelityDomainException(QFidelityException):
    """Exception raised when an argument lies outside an operation's domain."""

    def __init__(self, argument: str, message: str):
        self.argument = argument
        super().__init__(f"Domain error for '{argument}': {message}")

    def is_input_error(self) -> bool:
        """Always True: the caller asked for something the operation cannot do."""
        return True


class QFidelityValidationException(QFidelityException):
    """Exception raised when an input fails a named invariant check."""

    def __init__(self, check: str, message: str, deviation: Optional[float] = None):
        self.check = str(getattr(check, "value", check))
        self.deviation = deviation
        detail = f" (deviation {deviation:.3g})" if deviation is not None else ""
        super().__init__(f"Validation failed [{self.check}]: {message}{detail}")

    def is_input_error(self) -> bool:
        """Always True: validation errors describe bad input."""
        return True


class QFidelityInadmissibleStateException(QFidelityValidationException):
    """Exception raised when a polarization vector does not describe a state."""

    pass


class QFidelityChannelDefectException(QFidelityException):
    """Exception raised when a channel maps a valid state to an invalid one."""

    def __init__(self, channel: str, message: str):
        self.channel = channel
        super().__init__(f"Channel '{channel}' produced an invalid state: {message}")


class QFidelityConsistencyException(QFidelityException):
    """Exception raised when a computed quantity breaks a numeric consistency check."""

    def __init__(self, quantity: str, message: str):
        self.quantity = quantity
        super().__init__(f"Consistency error in {quantity}: {message}")


class QFidelityConstructionException(QFidelityException):
    """Exception raised when a decomposition term fails its structural check."""

    pass
