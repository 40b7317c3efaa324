"""
Error types raised by the model and service layers.

Parsers never raise these for malformed input; they return
(result, errors) tuples instead and the CLI decides the exit code.
"""


class QubitGeometryError(Exception):
    """Base class for all errors raised by this package"""
    pass


class InvalidDimensionError(QubitGeometryError):
    """Raised when matrix or vector dimensions do not fit the operation"""
    pass


class ContractViolationError(QubitGeometryError):
    """Raised when an input breaks an operation's precondition (e.g. non-Hermitian)"""
    pass


class NotPSDError(QubitGeometryError):
    """Raised when a matrix has an eigenvalue below the clamp tolerance"""
    pass


class DomainError(QubitGeometryError):
    """Raised when a parameter lies outside its allowed range"""
    pass


class NotInClassError(QubitGeometryError):
    """Raised when a density matrix does not commute with Sz^2"""
    pass
