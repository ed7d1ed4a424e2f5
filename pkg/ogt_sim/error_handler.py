"""
Error handling for the command-line surface.
Maps simulator errors to exit codes and logs them by severity.
"""

import logging
from typing import Any, Callable, Dict, Optional, Type

from .exceptions import (
    ConfigurationError,
    DiagnosticError,
    DivergenceError,
    NonConvergenceError,
    ParseError,
    SimulationError,
    StorageError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE_ERROR = 2


class ErrorHandler:
    """Turns exceptions raised below the CLI into exit codes.

    Handlers are looked up along the exception's MRO, so the most specific
    registered class wins. Any other SimulationError maps to exit code 1;
    anything else is re-raised unless raise_on_unhandled is off.
    """

    def __init__(self, log_errors: bool = True, raise_on_unhandled: bool = True):
        self.log_errors = log_errors
        self.raise_on_unhandled = raise_on_unhandled

        self._error_handlers: Dict[Type[BaseException], Callable[[BaseException, Optional[Dict[str, Any]]], int]] = {
            DiagnosticError: self._handle_diagnostic_error,
            DivergenceError: self._handle_divergence_error,
            NonConvergenceError: self._handle_non_convergence,
            ParseError: self._handle_parse_error,
            ConfigurationError: self._handle_config_error,
            StorageError: self._handle_storage_error,
            OSError: self._handle_os_error,
        }

        self._error_counts: Dict[str, int] = {}

    def handle_error(self, error: BaseException, context: Optional[Dict[str, Any]] = None) -> int:
        """Handle an error and return the exit code.

        Args:
            error: The raised exception
            context: Context for the log line (command, path, ...)

        Returns:
            int: Process exit code
        """
        error_name = type(error).__name__
        self._error_counts[error_name] = self._error_counts.get(error_name, 0) + 1

        if self.log_errors:
            self._log_error(error, context)

        handler = self._lookup(type(error))
        if handler is not None:
            return handler(error, context)

        if isinstance(error, SimulationError):
            return EXIT_DOMAIN_ERROR

        logger.warning(f"Unhandled error type: {error_name}")
        if self.raise_on_unhandled:
            raise error
        return EXIT_DOMAIN_ERROR

    def _lookup(self, error_type: Type[BaseException]):
        for klass in error_type.__mro__:
            if klass in self._error_handlers:
                return self._error_handlers[klass]
        return None

    def _log_error(self, error: BaseException, context: Optional[Dict[str, Any]] = None):
        error_msg = f"{type(error).__name__}: {error}"

        if context:
            context_str = ", ".join(f"{k}={v}" for k, v in context.items())
            error_msg += f" | Context: {context_str}"

        if isinstance(error, (DiagnosticError, DivergenceError)):
            logger.error(error_msg)
        elif isinstance(error, (ConfigurationError, ParseError)):
            logger.warning(error_msg)
        else:
            logger.info(error_msg)

    def _handle_diagnostic_error(self, error: DiagnosticError, context: Optional[Dict[str, Any]]) -> int:
        logger.error(f"Identity check '{error.check}' broke at iteration {error.iteration}")
        return EXIT_DOMAIN_ERROR

    def _handle_divergence_error(self, error: DivergenceError, context: Optional[Dict[str, Any]]) -> int:
        logger.error(f"Run diverged at iteration {error.iteration}; reduce the stepsize")
        return EXIT_DOMAIN_ERROR

    def _handle_non_convergence(self, error: NonConvergenceError, context: Optional[Dict[str, Any]]) -> int:
        logger.error(f"Reference solver stopped after {error.iterations} iterations")
        return EXIT_DOMAIN_ERROR

    def _handle_parse_error(self, error: ParseError, context: Optional[Dict[str, Any]]) -> int:
        return EXIT_DOMAIN_ERROR

    def _handle_config_error(self, error: ConfigurationError, context: Optional[Dict[str, Any]]) -> int:
        return EXIT_DOMAIN_ERROR

    def _handle_storage_error(self, error: StorageError, context: Optional[Dict[str, Any]]) -> int:
        logger.error(f"Storage failure for {error.path}")
        return EXIT_DOMAIN_ERROR

    def _handle_os_error(self, error: OSError, context: Optional[Dict[str, Any]]) -> int:
        return EXIT_DOMAIN_ERROR

    def register_error_handler(self, error_type: Type[BaseException], handler: Callable):
        """handler(error, context) returns the exit code."""
        self._error_handlers[error_type] = handler
        logger.debug(f"Registered custom error handler for {error_type.__name__}")

    def get_error_statistics(self) -> Dict[str, int]:
        """Return handled error counts by type name."""
        return self._error_counts.copy()

    def clear_error_statistics(self):
        self._error_counts.clear()


default_error_handler = ErrorHandler()


def handle_simulation_error(error: BaseException, context: Optional[Dict[str, Any]] = None) -> int:
    """Exit code from the default handler."""
    return default_error_handler.handle_error(error, context)
