"""
Simulator exception classes.
Error hierarchy shared by every module of the package.
"""

from typing import Any, Dict, Optional


class SimulationError(Exception):
    """Base class for all simulator errors."""

    def __init__(self, message: str, error_code: Optional[str] = None, details: Optional[Dict[str, Any]] = None):
        """Initialize the error.

        Args:
            message: Human readable message
            error_code: Stable machine readable code
            details: Extra context (iteration, residual, path, ...)
        """
        super().__init__(message)
        self.error_code = error_code
        self.details = details or {}


class InvalidGraphError(SimulationError):
    """Gossip matrix or edge set violates the mixing assumptions."""

    def __init__(self, message: str = "Invalid gossip graph", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, error_code="invalid_graph", details=details)


class ShapeError(SimulationError):
    def __init__(self, message: str = "Shape mismatch", expected: Any = None, actual: Any = None):
        super().__init__(message, error_code="shape_mismatch", details={"expected": expected, "actual": actual})
        self.expected = expected
        self.actual = actual


class DomainError(SimulationError):
    """Argument outside the domain of a closed-form quantity."""

    def __init__(self, message: str = "Argument out of domain"):
        super().__init__(message, error_code="domain_error")


class PreconditionError(SimulationError):
    """A lemma or theorem hypothesis is violated by the caller."""

    def __init__(self, message: str = "Precondition failed"):
        super().__init__(message, error_code="precondition_failed")


class InvalidObjectiveError(SimulationError):
    """Objective data is not smooth and strongly convex."""

    def __init__(self, message: str = "Invalid objective"):
        super().__init__(message, error_code="invalid_objective")


class DataError(SimulationError):
    """Dataset content cannot serve the requested problem."""

    def __init__(self, message: str = "Data error", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, error_code="data_error", details=details)


class ParseError(DataError):
    """Malformed text input (CSV, matrix file, edge list, snapshot).

    The message is prefixed with `path:line: ` when the location is known.
    """

    def __init__(self, message: str = "Parse error", path: Optional[str] = None, line_number: Optional[int] = None):
        location = ""
        if path is not None:
            location = f"{path}"
            if line_number is not None:
                location += f":{line_number}"
            location += ": "
        super().__init__(f"{location}{message}", details={"path": path, "line_number": line_number})
        self.error_code = "parse_error"
        self.path = path
        self.line_number = line_number


class NonConvergenceError(SimulationError):
    """Iterative solver hit its iteration cap before the tolerance."""

    def __init__(self, message: str = "Solver did not converge", iterations: Optional[int] = None,
                 residual: Optional[float] = None):
        super().__init__(message, error_code="non_convergence",
                         details={"iterations": iterations, "residual": residual})
        self.iterations = iterations
        self.residual = residual


class ConfigurationError(SimulationError):
    """Invalid run, sweep or stream configuration."""

    def __init__(self, message: str = "Invalid configuration"):
        super().__init__(message, error_code="configuration_error")


class DiagnosticError(SimulationError):
    """A per-iteration identity check exceeded its tolerance."""

    def __init__(self, check: str, iteration: int, residual: float, tolerance: float):
        super().__init__(
            f"Diagnostic '{check}' failed at iteration {iteration}: residual {residual:.3e} > {tolerance:.1e}",
            error_code="diagnostic_failure",
            details={"check": check, "iteration": iteration, "residual": residual, "tolerance": tolerance},
        )
        self.check = check
        self.iteration = iteration
        self.residual = residual


class DivergenceError(SimulationError):
    """Non-finite entries appeared in an iterate."""

    def __init__(self, iteration: int, algorithm: Optional[str] = None):
        label = f"{algorithm} " if algorithm else ""
        super().__init__(
            f"{label}iterates became non-finite at iteration {iteration}",
            error_code="divergence",
            details={"iteration": iteration, "algorithm": algorithm},
        )
        self.iteration = iteration


class StorageError(SimulationError):
    def __init__(self, message: str = "Storage error", path: Optional[str] = None):
        super().__init__(message, error_code="storage_error", details={"path": path})
        self.path = path
