import json
import logging
import sys
from typing import Callable, Dict, Type

from pydantic import ValidationError

from exceptions import BlockSegError

logger = logging.getLogger(__name__)

ExceptionHandler = Callable[[Exception], int]

_handlers: Dict[Type[Exception], ExceptionHandler] = {}


def _emit(error: str, message) -> None:
    sys.stderr.write(json.dumps({"error": error, "message": message}) + "\n")


def blockseg_exception_handler(exc: BlockSegError) -> int:
    logger.error(f"{exc.error}: {exc.message}")
    _emit(exc.error, exc.message)
    return exc.exit_code


def validation_exception_handler(exc: ValidationError) -> int:
    data = exc.errors()

    # Extract error messages
    error_messages = {
        ".".join(str(part) for part in error["loc"]) or "value": error["msg"]
        for error in data
    }

    logger.error(f"Validation error: {error_messages}")
    _emit("validation_error", error_messages)
    return 3


def os_exception_handler(exc: OSError) -> int:
    logger.error(f"I/O error: {str(exc)}")
    _emit("io_error", str(exc))
    return 2


def generic_exception_handler(exc: Exception) -> int:
    logger.exception(f"Unexpected error: {str(exc)}")
    _emit("internal_error", str(exc))
    return 1


def add_exception_handler(exc_type: Type[Exception], handler: ExceptionHandler) -> None:
    _handlers[exc_type] = handler


def handle_exception(exc: Exception) -> int:
    """Dispatch to the handler registered for the closest class in the MRO."""
    for klass in type(exc).__mro__:
        handler = _handlers.get(klass)
        if handler is not None:
            return handler(exc)
    return generic_exception_handler(exc)


add_exception_handler(BlockSegError, blockseg_exception_handler)
add_exception_handler(ValidationError, validation_exception_handler)
add_exception_handler(OSError, os_exception_handler)
add_exception_handler(Exception, generic_exception_handler)
