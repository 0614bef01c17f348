import sys
from pathlib import Path

from loguru import logger

LOG_FORMAT = "{time:YYYY-MM-DD at HH:mm:ss} | {level} | {message}"


class ErrorLogFilter:
    def __init__(self):
        self.error_logged = False

    def __call__(self, record):
        if record["level"].no >= logger.level("ERROR").no:
            self.error_logged = True
        return self.error_logged


def configure_logging(level: str = "INFO", error_log_dir: str | None = None) -> None:
    """
    Installs the loguru sinks used by the command line.

    stdout is left alone, command output goes there. Records go to stderr,
    and errors additionally to a rotated file when ``error_log_dir`` is given.
    """
    logger.remove()

    logger.add(sys.stderr, level=level, format=LOG_FORMAT)

    if error_log_dir:
        # Instantiate the filter, to create files only when errors are logged
        error_log_filter = ErrorLogFilter()
        logger.add(
            str(Path(error_log_dir) / "errors_{time}.log"),
            level="ERROR",
            rotation="1 week",
            retention="1 month",
            format=LOG_FORMAT,
            filter=error_log_filter,
            delay=True,
        )


__all__ = ["logger", "configure_logging", "ErrorLogFilter"]
