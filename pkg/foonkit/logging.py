from __future__ import annotations

import logging
import sys

from .settings import Settings

LOGGER_NAME = "foonkit"


class TruncateLongArgsFilter(logging.Filter):
    """Shortens oversized string arguments such as whole graph or corpus dumps."""

    max_length = 240

    @classmethod
    def _truncate(cls, value: str) -> str:
        if len(value) <= cls.max_length:
            return value
        hidden = len(value) - cls.max_length
        return f"{value[: cls.max_length]}...(+{hidden} chars)"

    def filter(self, record: logging.LogRecord) -> bool:  # noqa: D401
        if isinstance(record.msg, str):
            record.msg = self._truncate(record.msg)
        if isinstance(record.args, tuple) and record.args:
            record.args = tuple(self._truncate(arg) if isinstance(arg, str) else arg for arg in record.args)
        return True


class StderrHandler(logging.StreamHandler):
    """Writes to the current sys.stderr, including one swapped in by a test runner."""

    def __init__(self) -> None:
        super().__init__(sys.stderr)

    @property
    def stream(self):  # type: ignore[override]
        return sys.stderr

    @stream.setter
    def stream(self, _value) -> None:
        pass


def setup_logging(settings: Settings) -> logging.Logger:
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(settings.log_level.upper())
    if not logger.handlers:
        handler = StderrHandler()
        handler.setFormatter(logging.Formatter("%(asctime)s [%(levelname)s] %(name)s: %(message)s"))
        handler.addFilter(TruncateLongArgsFilter())
        logger.addHandler(handler)
    logger.propagate = False
    return logger


def get_logger() -> logging.Logger:
    return logging.getLogger(LOGGER_NAME)
