from __future__ import annotations

import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any

import numpy as np

PACKAGE_LOGGER = "quadcurl"

# Attributes every LogRecord carries; anything else came in through ``extra=``.
_STANDARD_ATTRS = frozenset(
    logging.LogRecord("", logging.INFO, "", 0, "", None, None).__dict__
) | {"message", "asctime"}


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def record_extras(record: logging.LogRecord) -> dict[str, Any]:
    """Fields passed through ``extra=`` (solver sizes, shifts, timings)."""
    return {
        key: _jsonable(value)
        for key, value in vars(record).items()
        if key not in _STANDARD_ATTRS
    }


class JsonFormatter(logging.Formatter):
    """One JSON object per line; extras become top-level keys."""

    def format(self, record: logging.LogRecord) -> str:
        stamp = datetime.fromtimestamp(record.created, timezone.utc)
        payload: dict[str, Any] = {
            "ts": stamp.isoformat(timespec="milliseconds").replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "where": f"{record.module}.{record.funcName}:{record.lineno}",
        }
        for key, value in record_extras(record).items():
            payload.setdefault(key, value)
        if record.exc_info:
            payload["exc"] = self.formatException(record.exc_info)
        return json.dumps(payload, ensure_ascii=False, default=str)


class TextFormatter(logging.Formatter):
    def __init__(self) -> None:
        super().__init__(fmt="%(levelname)s: %(name)s: %(message)s")

    def format(self, record: logging.LogRecord) -> str:
        line = super().format(record)
        pairs = " ".join(f"{k}={v}" for k, v in record_extras(record).items())
        return f"{line} {pairs}" if pairs else line


class ColoredFormatter(TextFormatter):
    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def format(self, record: logging.LogRecord) -> str:
        plain = record.levelname
        record.levelname = f"{self.COLORS.get(plain, '')}{plain}{self.RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = plain


_FORMATTERS: dict[str, type[logging.Formatter]] = {
    "json": JsonFormatter,
    "colored": ColoredFormatter,
    "text": TextFormatter,
}


def get_formatter(format_type: str) -> logging.Formatter:
    """Get formatter instance based on format type."""
    return _FORMATTERS.get(format_type, TextFormatter)()


def setup_logging(
    level: str = "INFO",
    format: str = "json",
    log_file: str | None = None,
) -> None:
    """Attach a single handler to the package logger.

    Calling it again replaces the previous handler, so the CLI and the test
    suite can reconfigure freely. Records do not reach the root logger.
    """
    log_level = getattr(logging, level.upper(), logging.INFO)
    package = logging.getLogger(PACKAGE_LOGGER)
    package.setLevel(log_level)
    for old in list(package.handlers):
        package.removeHandler(old)
        old.close()

    handler: logging.Handler = (
        logging.FileHandler(log_file) if log_file else logging.StreamHandler(sys.stderr)
    )
    handler.setLevel(log_level)
    handler.setFormatter(get_formatter(format))
    package.addHandler(handler)
    package.propagate = False


def get_logger(name: str | None = None) -> logging.Logger:
    """Logger under the package namespace, e.g. ``quadcurl.solvers``."""
    return logging.getLogger(f"{PACKAGE_LOGGER}.{name}" if name else PACKAGE_LOGGER)
