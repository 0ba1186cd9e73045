import logging
import os
from logging.handlers import RotatingFileHandler

from rich.console import Console
from rich.logging import RichHandler

from config import config

LOG_FORMAT = "%(asctime)s || %(levelname)-8s || %(name)s:%(lineno)d || %(message)s"

# Create a logger object
logger = logging.getLogger("blockseg")


def configure_logging():
    """Install the console and rotating-file handlers once and return the app logger.

    Module loggers (``logging.getLogger(__name__)``) are not children of
    ``blockseg`` by name, so the handlers go on the root logger and the
    ``blockseg`` logger simply propagates to it.
    """
    root = logging.getLogger()
    if getattr(root, "_blockseg_configured", False):
        return logger

    root.setLevel(config.LOG_LEVEL)

    # Console handler; stderr keeps stdout free for JSON reports
    console_handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=False,
    )
    console_handler.setFormatter(logging.Formatter("%(name)s:%(lineno)d || %(message)s"))
    root.addHandler(console_handler)

    if config.LOG_TO_FILE:
        if not os.path.exists(config.LOG_DIR):
            os.makedirs(config.LOG_DIR)

        file_handler = RotatingFileHandler(
            filename=os.path.join(config.LOG_DIR, "blockseg.log"),
            maxBytes=5 * 1024 * 1024,  # 5 MB
            backupCount=10,
            delay=True,
            encoding="utf-8",
        )
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(file_handler)

    root._blockseg_configured = True
    return logger
