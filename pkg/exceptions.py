# ==============================================================================
# exceptions.py - Custom exception classes for essig
# ==============================================================================

"""
Custom exception classes for the essig toolkit.
Every exception carries an error code, a details payload that the command
line serializes verbatim, and the process exit code the CLI maps it to.
"""

from typing import Any, Dict
import logging

logger = logging.getLogger(__name__)


class EssigBaseException(Exception):
    """Base exception class for all essig-specific exceptions"""

    exit_code: int = 1

    def __init__(self, message: str, error_code: str = None, details: Dict[str, Any] = None):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)

        # Log the exception when it's created
        logger.debug(f"Exception raised: {self.__class__.__name__} - {message}",
                     extra={"error_code": error_code, "details": details})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": self.__class__.__name__,
            "error_code": self.error_code,
            "message": self.message,
            "details": self.details,
        }


# ==============================================================================
# Validation exceptions
# ==============================================================================

class ValidationError(EssigBaseException):
    """Base exception for malformed user input"""
    pass


class UsageError(ValidationError):
    """Raised when the command line cannot be parsed"""

    def __init__(self, message: str):
        super().__init__(message, "USAGE")


class InvalidWeightError(ValidationError):
    """Raised when a weight cannot be parsed or is not dominant"""

    def __init__(self, value: Any, reason: str = None):
        message = f"Invalid weight: {value}"
        if reason:
            message += f" ({reason})"
        super().__init__(message, "INVALID_WEIGHT", {"value": str(value), "reason": reason})


class InvalidSignatureError(ValidationError):
    """Raised when an exponent vector is malformed"""

    def __init__(self, value: Any, reason: str = None):
        message = f"Invalid signature: {value}"
        if reason:
            message += f" ({reason})"
        super().__init__(message, "INVALID_SIGNATURE", {"value": str(value), "reason": reason})


class WeightMismatchError(ValidationError):
    """Raised when two signatures with different highest weights are compared"""

    def __init__(self, left: Any, right: Any):
        message = f"Signatures have different highest weights: {left} vs {right}"
        super().__init__(message, "WEIGHT_MISMATCH", {"left": list(left), "right": list(right)})


class NotInConeError(ValidationError):
    """Raised when an operation requires a point of the cone"""

    def __init__(self, hw: Any, p: Any, violated: list = None):
        message = f"Signature ({list(hw)}; {list(p)}) is not a point of the cone"
        super().__init__(message, "NOT_IN_CONE",
                         {"hw": list(hw), "p": list(p), "violated": violated or []})


# ==============================================================================
# Resource exceptions
# ==============================================================================

class AmbientTooLargeError(EssigBaseException):
    """Raised when a tensor ambient space exceeds the configured limit"""

    exit_code = 2

    def __init__(self, hw: Any, dimension: int, limit: int):
        message = f"Ambient tensor space for {list(hw)} has dimension {dimension} > limit {limit}"
        super().__init__(message, "AMBIENT_TOO_LARGE",
                         {"hw": list(hw), "dimension": dimension, "limit": limit})


# ==============================================================================
# Verification exceptions
# ==============================================================================

class VerificationError(EssigBaseException):
    """Base exception for computed results that disagree with a reference"""

    exit_code = 3


class TableMismatchError(VerificationError):
    """Raised when computed essential signatures differ from the transcribed table"""

    def __init__(self, fundamental: int, missing: list, unexpected: list):
        message = (f"Essential signatures of omega_{fundamental} differ from the transcribed table: "
                   f"{len(missing)} missing, {len(unexpected)} unexpected")
        super().__init__(message, "TABLE_MISMATCH",
                         {"fundamental": fundamental, "missing": missing, "unexpected": unexpected})


class FacetMismatchError(VerificationError):
    """Raised when the computed facets differ from the transcribed inequalities"""

    def __init__(self, missing: list, unexpected: list):
        message = f"Facet sets differ: {len(missing)} missing, {len(unexpected)} unexpected"
        super().__init__(message, "FACET_MISMATCH", {"missing": missing, "unexpected": unexpected})


class SweepMismatchError(VerificationError):
    """Raised when a lattice point count differs from the Weyl dimension"""

    def __init__(self, rows: list):
        message = f"{len(rows)} sweep row(s) with count != dim"
        super().__init__(message, "SWEEP_MISMATCH", {"rows": rows})


class RepresentationStructureError(VerificationError):
    """Raised when a representation model violates a structural invariant"""

    def __init__(self, model: str, reason: str, details: Dict[str, Any] = None):
        message = f"Representation model {model} is inconsistent: {reason}"
        payload = {"model": model, "reason": reason}
        payload.update(details or {})
        super().__init__(message, "REPRESENTATION_STRUCTURE", payload)


# ==============================================================================
# Decomposition exceptions
# ==============================================================================

class DecompositionError(EssigBaseException):
    """Raised when a cone point cannot be written as a sum of fundamental generators"""

    exit_code = 4

    def __init__(self, hw: Any, p: Any, explored: int, tight: list = None):
        message = f"No decomposition found for ({list(hw)}; {list(p)}) after {explored} states"
        super().__init__(message, "DECOMPOSITION_COUNTEREXAMPLE",
                         {"hw": list(hw), "p": list(p), "explored": explored, "tight": tight or []})


# ==============================================================================
# Cache and store exceptions
# ==============================================================================

class CacheError(EssigBaseException):
    """Raised when a cache file cannot be read or written"""

    def __init__(self, path: str, reason: str = None):
        message = f"Cache error at {path}"
        if reason:
            message += f" ({reason})"
        super().__init__(message, "CACHE_ERROR", {"path": path, "reason": reason})


class StoreError(EssigBaseException):
    """Raised when the sweep result store fails"""
    pass


# ==============================================================================
# Configuration exceptions
# ==============================================================================

class ConfigurationError(EssigBaseException):
    """Raised when configuration is invalid or missing"""
    pass


class InvalidConfigurationError(ConfigurationError):
    """Raised when configuration values are invalid"""

    def __init__(self, config_key: str, config_value: Any, reason: str = None):
        message = f"Invalid configuration - {config_key}: {config_value}"
        if reason:
            message += f" ({reason})"
        super().__init__(message, "INVALID_CONFIG", {"key": config_key, "value": config_value, "reason": reason})


# ==============================================================================
# Utility functions for exception handling
# ==============================================================================

def log_exception(exc: Exception, context: str = None, extra_data: Dict[str, Any] = None) -> None:
    """
    Log an exception with additional context and data.

    Args:
        exc: The exception to log
        context: Additional context about where the exception occurred
        extra_data: Additional data to include in the log
    """
    extra_info = {
        "exception_type": exc.__class__.__name__,
        "exception_message": str(exc)
    }

    if extra_data:
        extra_info.update(extra_data)

    if hasattr(exc, 'error_code'):
        extra_info["error_code"] = exc.error_code

    if hasattr(exc, 'details'):
        extra_info["exception_details"] = exc.details

    log_message = f"Exception occurred: {exc.__class__.__name__}"
    if context:
        log_message += f" in {context}"
    log_message += f" - {str(exc)}"

    logger.error(log_message, extra=extra_info)


def handle_database_error(exc: Exception, operation: str = None) -> EssigBaseException:
    """
    Convert SQLAlchemy exceptions raised by the sweep store into StoreError.

    Args:
        exc: The original database exception
        operation: The database operation that failed

    Returns:
        StoreError carrying the original message
    """
    from sqlalchemy.exc import IntegrityError, OperationalError

    context = f"during {operation}" if operation else ""

    if isinstance(exc, IntegrityError):
        return StoreError(f"Store integrity constraint violated {context}: {exc}", "STORE_INTEGRITY")
    elif isinstance(exc, OperationalError):
        return StoreError(f"Store unavailable {context}: {exc}", "STORE_UNAVAILABLE")
    else:
        return StoreError(f"Store operation failed {context}: {exc}", "STORE_ERROR")
