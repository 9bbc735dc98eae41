"""
Exception hierarchy shared by the library and the CLI
"""

from typing import Any, Dict, List, Optional


class DeepPolyError(Exception):
    """Base error; every subclass maps to a distinct CLI exit code"""

    code = "error"
    exit_code = 1

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> Dict[str, Any]:
        payload = {"error": self.code, "message": self.message}
        payload.update(self.context)
        return payload


class UsageError(DeepPolyError):
    """Unknown subcommand or malformed command line"""

    code = "usage"
    exit_code = 2


class ConfigurationError(DeepPolyError):
    """Invalid graph, fit or search configuration"""

    code = "configuration"
    exit_code = 3


class InputFileError(DeepPolyError):
    """Missing or unreadable input file"""

    code = "input_file"
    exit_code = 4


class DomainError(DeepPolyError):
    """Argument outside the domain of a function"""

    code = "domain"
    exit_code = 5


class EvaluationError(DeepPolyError):
    """Non-finite or overflowing intermediate value"""

    code = "evaluation"
    exit_code = 6

    def __init__(self, message: str, layer: Optional[int] = None, **context: Any):
        super().__init__(message, layer=layer, **context)
        self.layer = layer


class SolverError(DeepPolyError):
    """Root finding failed: no bracket, degenerate or non-monotone equation"""

    code = "solver"
    exit_code = 7

    def __init__(self, message: str, diagnosis: str = "", **context: Any):
        super().__init__(message, diagnosis=diagnosis, **context)
        self.diagnosis = diagnosis


class TrainingError(DeepPolyError):
    """Every restart diverged"""

    code = "training"
    exit_code = 8

    def __init__(self, message: str, restarts: Optional[List[Dict[str, Any]]] = None, **context: Any):
        super().__init__(message, restarts=restarts or [], **context)
        self.restarts = restarts or []


class UnsupportedError(DeepPolyError):
    """Requested operation is not available for the given input"""

    code = "unsupported"
    exit_code = 9


EXIT_CODES = {cls.code: cls.exit_code for cls in (
    UsageError, ConfigurationError, InputFileError, DomainError,
    EvaluationError, SolverError, TrainingError, UnsupportedError,
)}
