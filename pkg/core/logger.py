import logging
import os

LOG_FORMAT = "[%(asctime)s] [%(process)d] [%(levelname)s] - %(message)s"

# Configure app default loggers; stdout is reserved for CLI artifacts
logging.basicConfig(level=os.getenv("LOG_LEVEL", "INFO").upper(), format=LOG_FORMAT, force=True)


def getLogger(name=__name__):
    """Return the logger for the given file"""
    return logging.getLogger(name)


def setLevel(level: str) -> None:
    """Change the root level at runtime (CLI ``--log-level``)"""
    name = level.strip().upper()
    if not isinstance(logging.getLevelName(name), int):
        raise ValueError(f"Unknown log level {level!r}")
    logging.getLogger().setLevel(name)
