import os
import sys
import logging
from threading import Lock

from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "qotp"
LOG_LEVEL_ENV_VAR = "QOTP_LOG_LEVEL"
DEBUG_FORMAT = "%(asctime)s | %(levelname)s | %(filename)s:%(funcName)s:%(lineno)d | %(message)s"

load_dotenv()


class MinLevelFilter(logging.Filter):
    """Drop records below ``min_level`` regardless of the logger level."""

    def __init__(self, min_level: int = logging.INFO):
        super().__init__()
        self.min_level = min_level

    def filter(self, record):
        return record.levelno >= self.min_level


class LoggerManager:
    """
    Process-wide owner of the ``qotp`` logger.

    Every mode writes to stderr only; stdout carries demo traces and tables
    that must stay byte-identical across runs with the same seed.
    """

    _instance = None
    _lock = Lock()

    def __new__(cls, *args, **kwargs):
        with cls._lock:
            if cls._instance is None:
                cls._instance = super().__new__(cls)
            return cls._instance

    def __init__(self, mode: str, level):
        self.mode = mode
        handler = self._debug_handler() if mode == "debug" else self._plain_handler()
        with self._lock:
            self._install(handler, level)

    @staticmethod
    def _debug_handler() -> logging.Handler:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(DEBUG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
        return handler

    @staticmethod
    def _plain_handler() -> logging.Handler:
        handler = RichHandler(
            console=Console(stderr=True),
            rich_tracebacks=True,
            markup=True,
            show_path=False,
            show_time=False,
        )
        handler.addFilter(MinLevelFilter(logging.INFO))
        handler.setFormatter(logging.Formatter("%(message)s"))
        return handler

    @staticmethod
    def _install(handler: logging.Handler, level) -> None:
        logger = logging.getLogger(LOGGER_NAME)
        logger.setLevel(level.upper() if isinstance(level, str) else level)
        logger.handlers.clear()
        logger.addHandler(handler)
        logger.propagate = False

    @classmethod
    def plain_mode(cls, level="INFO"):
        return cls(mode="plain", level=level)

    @classmethod
    def debug_mode(cls, level="DEBUG"):
        return cls(mode="debug", level=level)

    @staticmethod
    def set_level(level: str):
        logging.getLogger(LOGGER_NAME).setLevel(level.upper())

    @staticmethod
    def get_logger():
        return logging.getLogger(LOGGER_NAME)


LoggerManager.plain_mode(level=os.getenv(LOG_LEVEL_ENV_VAR, "INFO"))
log = LoggerManager.get_logger()
