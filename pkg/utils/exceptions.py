"""Custom exceptions for the application."""

from typing import Iterable, Optional

from fastapi import HTTPException, status


class BaseAppException(Exception):
    """Base exception class for application-specific exceptions."""

    def __init__(
        self, message: str, status_code: int = status.HTTP_500_INTERNAL_SERVER_ERROR
    ):
        self.message = message
        self.status_code = status_code
        super().__init__(self.message)


def _fmt(vertices: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(vertices)) + "}"


class InvalidGraphException(BaseAppException):
    """Raised when a mixed graph violates its structural invariants."""

    def __init__(self, message: str):
        super().__init__(
            f"Invalid graph: {message}", status_code=status.HTTP_422_UNPROCESSABLE_ENTITY
        )


class NotAChainGraphException(BaseAppException):
    """Raised when an operation needs a chain graph and gets a semi-directed cycle."""

    def __init__(self, operation: str):
        message = (
            f"Operation '{operation}' requires a chain graph, "
            "but the graph contains a partially directed cycle."
        )
        super().__init__(message, status_code=status.HTTP_422_UNPROCESSABLE_ENTITY)
        self.operation = operation


class GraphFormatException(BaseAppException):
    """Raised when a graph file cannot be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(
            f"Graph file line {line_number}: {message}",
            status_code=status.HTTP_400_BAD_REQUEST,
        )
        self.line_number = line_number


class InvalidQueryException(BaseAppException):
    """Raised when a separation or independence query is malformed."""

    def __init__(self, message: str):
        super().__init__(
            f"Invalid query: {message}", status_code=status.HTTP_422_UNPROCESSABLE_ENTITY
        )


class AdjacentPairException(BaseAppException):
    """Raised when a separator is requested for two adjacent vertices."""

    def __init__(self, u: int, v: int):
        super().__init__(
            f"Vertices {u} and {v} are adjacent; no separator exists.",
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        )
        self.u = u
        self.v = v


class SingularSubmatrixException(BaseAppException):
    """Raised when a correlation submatrix is numerically rank deficient."""

    def __init__(self, u: int, v: int, S: Iterable[int]):
        super().__init__(
            f"Correlation submatrix over ({u},{v}|{_fmt(S)}) is singular.",
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        )
        self.u = u
        self.v = v
        self.S = frozenset(S)


class InsufficientSamplesException(BaseAppException):
    """Raised when a Fisher-z test has too few samples for its conditioning set."""

    def __init__(self, n: int, size: int):
        super().__init__(
            f"Sample size {n} is too small for a conditioning set of size {size} "
            f"(need n >= {size + 4}).",
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        )
        self.n = n
        self.size = size


class OracleQueryException(BaseAppException):
    """Raised when an independence query fails during skeleton recovery."""

    def __init__(self, u: int, v: int, S: Iterable[int], details: Optional[str] = None):
        message = f"Independence query ({u},{v}|{_fmt(S)}) failed."
        if details:
            message += f" Details: {details}"
        super().__init__(message, status_code=status.HTTP_422_UNPROCESSABLE_ENTITY)
        self.u = u
        self.v = v
        self.S = frozenset(S)
        self.details = details


class MissingSepsetException(BaseAppException):
    """Raised when a nonadjacent pair has no recorded separating set."""

    def __init__(self, u: int, v: int):
        super().__init__(
            f"No separating set recorded for nonadjacent pair ({u},{v}).",
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        )
        self.u = u
        self.v = v


class EmptyFamilyException(BaseAppException):
    """Raised when no separating set exists for a nonadjacent pair."""

    def __init__(self, u: int, v: int):
        super().__init__(
            f"No separating set found for nonadjacent pair ({u},{v}); "
            "skeleton and oracle disagree.",
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        )
        self.u = u
        self.v = v


class NonPositiveDefiniteException(BaseAppException):
    """Raised when a component precision matrix is not positive definite."""

    def __init__(self, component: Iterable[int]):
        super().__init__(
            f"Precision matrix of component {_fmt(component)} is not positive definite.",
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        )
        self.component = frozenset(component)


class VertexMismatchException(BaseAppException):
    """Raised when two graphs compared by a metric have different vertex counts."""

    def __init__(self, p_left: int, p_right: int):
        super().__init__(
            f"Vertex sets differ: {p_left} vs {p_right} vertices.",
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        )
        self.p_left = p_left
        self.p_right = p_right


class ResultStoreException(BaseAppException):
    """Raised when benchmark records cannot be written to or read from the store."""

    def __init__(self, operation: str, details: Optional[str] = None):
        message = f"Result store operation '{operation}' failed."
        if details:
            message += f" Details: {details}"
        super().__init__(message, status_code=status.HTTP_500_INTERNAL_SERVER_ERROR)
        self.operation = operation
        self.details = details


class ValidationException(BaseAppException):
    """Raised when validation fails."""

    def __init__(self, field: str, message: str):
        self.field = field
        full_message = f"Validation error for field '{field}': {message}"
        super().__init__(full_message, status_code=status.HTTP_422_UNPROCESSABLE_ENTITY)


def handle_app_exception(exception: BaseAppException) -> HTTPException:
    """Convert application exception to FastAPI HTTPException.

    Args:
        exception: Application exception instance

    Returns:
        HTTPException: FastAPI HTTP exception
    """
    return HTTPException(
        status_code=exception.status_code,
        detail={
            "error": exception.__class__.__name__,
            "message": exception.message,
        },
    )
