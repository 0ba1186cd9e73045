"""Exception hierarchy. Every error carries the process exit code the CLI reports."""


class BlockSegError(Exception):
    exit_code: int = 1
    error: str = "blockseg_error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class UsageError(BlockSegError):
    exit_code = 1
    error = "usage_error"


class MatrixFileError(BlockSegError):
    """Unreadable, malformed or invalid matrix file."""

    exit_code = 2
    error = "matrix_file_error"


class ConfigurationError(BlockSegError):
    """Configuration with no admissible segmentation, or an invalid ground truth."""

    exit_code = 3
    error = "configuration_error"


class EnumerationLimitError(ConfigurationError):
    error = "enumeration_limit"


class TheoryPreconditionError(ConfigurationError):
    error = "theory_precondition"


class BoundViolationError(BlockSegError):
    exit_code = 4
    error = "bound_violation"
