"""
Centralized logging configuration
"""

import logging
import sys
import time
from pathlib import Path
from typing import Optional

import structlog
from colorama import Fore, Style


def setup_logger(log_level: str = "WARNING", log_file: Optional[str] = None) -> None:
    """Setup structured logging; console output goes to stderr so stdout stays a clean report"""

    numeric_level = getattr(logging, log_level.upper(), logging.WARNING)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="ISO"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer()
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(ColoredFormatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    ))

    file_handler = None
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(numeric_level)
        file_handler.setFormatter(logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"
        ))

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)
    root_logger.handlers.clear()
    root_logger.addHandler(console_handler)
    if file_handler:
        root_logger.addHandler(file_handler)

    logger = logging.getLogger("cpa.startup")
    logger.debug(f"Logging initialized with level {log_level}")
    if log_file:
        logger.debug(f"Log file: {log_file}")


class ColoredFormatter(logging.Formatter):
    """Formatter with coloured level names for console output"""

    COLORS = {
        'DEBUG': Fore.CYAN,
        'INFO': Fore.GREEN,
        'WARNING': Fore.YELLOW,
        'ERROR': Fore.RED,
        'CRITICAL': Fore.MAGENTA,
    }

    def format(self, record):
        color = self.COLORS.get(record.levelname)
        if color is None:
            return super().format(record)
        original = record.levelname
        record.levelname = f"{color}{original}{Style.RESET_ALL}"
        try:
            return super().format(record)
        finally:
            record.levelname = original


class RunLogger:
    """structlog-bound logger for long operations (sweeps, verification suites)"""

    def __init__(self, name: str, **context):
        self.logger = structlog.get_logger(name).bind(**context)
        self.start_time: Optional[float] = None

    def start(self, operation: str, **context):
        self.start_time = time.perf_counter()
        self.logger.info("started", operation=operation, **context)

    def _elapsed(self) -> Optional[float]:
        if self.start_time is None:
            return None
        return round(time.perf_counter() - self.start_time, 3)

    def complete(self, operation: str, **context):
        self.logger.info("completed", operation=operation, duration_seconds=self._elapsed(), **context)
        self.start_time = None

    def fail(self, operation: str, error: Exception, **context):
        self.logger.error(
            "failed",
            operation=operation,
            duration_seconds=self._elapsed(),
            error_type=type(error).__name__,
            error_message=str(error),
            **context,
        )
        self.start_time = None

    def metric(self, metric_name: str, value, unit: str = "", **context):
        self.logger.info("metric", metric_name=metric_name, metric_value=value, metric_unit=unit, **context)


def get_run_logger(name: str, **context) -> RunLogger:
    return RunLogger(name, **context)


__all__ = [
    'setup_logger',
    'ColoredFormatter',
    'RunLogger',
    'get_run_logger',
]
