"""
Logging configuration
"""

import logging
import logging.handlers

from pathlib import Path
from typing import Optional

LOG_FORMAT = "%(asctime)s | %(name)s | %(levelname)s | %(message)s"
RUN_FORMAT = "%(asctime)s | RUN | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class LoggingConfig:
    """Console logging plus rotating files under logs/"""
    def __init__(self, logs_dir: str = "logs", file_logging: bool = True,
                 max_bytes: int = 10 * 1024 * 1024, backup_count: int = 5):
        self.logs_dir = Path(logs_dir)
        self.file_logging = file_logging
        self.max_bytes = max_bytes
        self.backup_count = backup_count
        self.app_log_file = self.logs_dir / "graphoplex.log"
        self.error_log_file = self.logs_dir / "graphoplex_errors.log"
        self.runs_log_file = self.logs_dir / "graphoplex_runs.log"

    def _file_handler(self, path: Path, level: int, fmt: str) -> logging.Handler:
        handler = logging.handlers.RotatingFileHandler(
            path, maxBytes=self.max_bytes, backupCount=self.backup_count, encoding="utf-8")
        handler.setLevel(level)
        handler.setFormatter(logging.Formatter(fmt=fmt, datefmt=DATE_FORMAT))
        return handler

    def setup_logging(self, console_level: int = logging.INFO) -> logging.Logger:
        """Reset root and "runs" handlers; safe to call once per CLI run"""
        root_logger = logging.getLogger()
        root_logger.setLevel(logging.DEBUG)
        runs_logger = logging.getLogger("runs")
        runs_logger.setLevel(logging.INFO)
        for logger in (root_logger, runs_logger):
            for handler in logger.handlers[:]:
                logger.removeHandler(handler)
                handler.close()

        console_handler = logging.StreamHandler()
        console_handler.setLevel(console_level)
        console_handler.setFormatter(logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))
        root_logger.addHandler(console_handler)

        # without files, run lines go to the console like everything else
        runs_logger.propagate = not self.file_logging
        if not self.file_logging:
            return root_logger

        self.logs_dir.mkdir(exist_ok=True)
        root_logger.addHandler(self._file_handler(self.app_log_file, logging.DEBUG, LOG_FORMAT))
        root_logger.addHandler(self._file_handler(self.error_log_file, logging.ERROR, LOG_FORMAT))
        runs_logger.addHandler(self._file_handler(self.runs_log_file, logging.INFO, RUN_FORMAT))
        return root_logger


# Default logging configuration instance
_logging_config = LoggingConfig()


def setup_logging(console_level: int = logging.INFO):
    """Setup logging using default configuration"""
    return _logging_config.setup_logging(console_level)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


def get_logging_config() -> LoggingConfig:
    """Get logging configuration instance for dependency injection"""
    return _logging_config


def log_command_run(command: str, species: Optional[str] = None, status: Optional[int] = None,
                    elapsed: Optional[float] = None, error: Optional[str] = None):
    runs_logger = logging.getLogger("runs")

    log_parts = [
        f"command={command}",
        f"species={species or 'N/A'}",
        f"status={status if status is not None else 'N/A'}",
    ]

    if elapsed is not None:
        log_parts.append(f"elapsed={elapsed:.3f}s")

    if error:
        log_parts.append(f"error={error}")

    runs_logger.info(" | ".join(log_parts))


def log_artifact_write(kind: str, path: str, success: bool,
                       rows: Optional[int] = None, error: Optional[str] = None):
    logger = logging.getLogger("artifacts")

    log_parts = [
        f"kind={kind}",
        f"path={path}",
        f"success={success}",
    ]

    if rows is not None:
        log_parts.append(f"rows={rows}")

    if error:
        log_parts.append(f"error={error}")

    message = " | ".join(log_parts)

    if success:
        logger.info(message)
    else:
        logger.error(message)


def log_suite_result(suite: str, species: str, passed: bool, checked: int, failures: int = 0):
    logger = logging.getLogger("verify")

    log_parts = [
        f"suite={suite}",
        f"species={species}",
        f"checked={checked}",
        f"failures={failures}",
        f"pass={passed}",
    ]

    message = " | ".join(log_parts)

    if passed:
        logger.info(message)
    else:
        logger.warning(message)
