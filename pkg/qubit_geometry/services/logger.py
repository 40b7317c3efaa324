"""
CSV-based activity log for runs of the command-line tool.

Logs are stored as daily CSV files that open directly in a spreadsheet.
Format: <log_dir>/YYYY-MM-DD_activity.csv

Log files never feed back into command output.
"""

import csv
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional, List
from dataclasses import dataclass
from enum import Enum


class LogEventType(Enum):
    RUN = "RUN"
    EVAL = "EVAL"
    SWEEP = "SWEEP"
    VERIFY = "VERIFY"
    COMPARE = "COMPARE"
    INPUT = "INPUT"
    IO = "IO"
    ERROR = "ERROR"


@dataclass
class LogEntry:
    timestamp: datetime
    event_type: LogEventType
    message: str
    details: Optional[str] = None
    command: Optional[str] = None
    residual: Optional[float] = None
    exit_code: Optional[int] = None

    def to_row(self) -> List[str]:
        return [
            self.timestamp.strftime("%Y-%m-%d %H:%M:%S"),
            self.event_type.value,
            self.message,
            self.details or "",
            self.command or "",
            f"{self.residual:.3e}" if self.residual is not None else "",
            str(self.exit_code) if self.exit_code is not None else "",
        ]

    @staticmethod
    def header() -> List[str]:
        return ["Timestamp", "Type", "Message", "Details", "Command", "Residual", "Exit Code"]


def diagnostic(tag: str, message: str):
    """Human-readable line on stderr, e.g. [ERROR] ..."""
    print(f"[{tag}] {message}", file=sys.stderr)


class ActivityLogger:
    """File-based activity logger"""

    def __init__(self, log_dir: str = "outputs/logs"):
        self.log_dir = Path(log_dir)
        self._disabled = False

    def _get_log_file(self, date: Optional[datetime] = None) -> Path:
        """Get log file path for a specific date"""
        if date is None:
            date = datetime.now()
        filename = f"{date.strftime('%Y-%m-%d')}_activity.csv"
        return self.log_dir / filename

    def _ensure_header(self, file_path: Path):
        """Ensure log file has header row"""
        if not file_path.exists():
            with open(file_path, 'w', newline='', encoding='utf-8') as f:
                writer = csv.writer(f, lineterminator='\n')
                writer.writerow(LogEntry.header())

    def log(self, entry: LogEntry):
        """Write a log entry to today's file"""
        if self._disabled:
            return
        try:
            self.log_dir.mkdir(parents=True, exist_ok=True)
            file_path = self._get_log_file(entry.timestamp)
            self._ensure_header(file_path)
            with open(file_path, 'a', newline='', encoding='utf-8') as f:
                writer = csv.writer(f, lineterminator='\n')
                writer.writerow(entry.to_row())
        except OSError as e:
            # An unwritable log folder must not change the outcome of a run
            self._disabled = True
            diagnostic("LOG", f"Activity log disabled: {e}")

    def log_run_started(self, command: str, details: str = None):
        self.log(LogEntry(
            timestamp=datetime.now(),
            event_type=LogEventType.RUN,
            message=f"Started {command}",
            details=details,
            command=command
        ))

    def log_run_completed(self, command: str, exit_code: int, details: str = None, residual: float = None):
        """Log the end of a command with its exit code"""
        event_type = {
            'eval': LogEventType.EVAL,
            'sweep': LogEventType.SWEEP,
            'verify': LogEventType.VERIFY,
            'compare-random': LogEventType.COMPARE,
        }.get(command, LogEventType.RUN)
        self.log(LogEntry(
            timestamp=datetime.now(),
            event_type=event_type,
            message=f"Finished {command}",
            details=details,
            command=command,
            residual=residual,
            exit_code=exit_code
        ))

    def log_property(self, name: str, passed: bool, residual: float, details: str = None):
        """Log one verification property"""
        self.log(LogEntry(
            timestamp=datetime.now(),
            event_type=LogEventType.VERIFY,
            message=f"{name}: {'pass' if passed else 'FAIL'}",
            details=details,
            command='verify',
            residual=residual
        ))

    def log_input_error(self, message: str, details: str = None):
        self.log(LogEntry(
            timestamp=datetime.now(),
            event_type=LogEventType.INPUT,
            message=message,
            details=details,
            exit_code=2
        ))

    def log_io_error(self, path: str, error: str):
        self.log(LogEntry(
            timestamp=datetime.now(),
            event_type=LogEventType.IO,
            message=f"Could not write {path}",
            details=error,
            exit_code=3
        ))

    def log_error(self, error_type: str, message: str, details: str = None):
        """Log an error"""
        self.log(LogEntry(
            timestamp=datetime.now(),
            event_type=LogEventType.ERROR,
            message=f"{error_type}: {message}",
            details=details
        ))


# Global logger instance
_logger: Optional[ActivityLogger] = None


def get_logger(log_dir: Optional[str] = None) -> ActivityLogger:
    """Get the global logger instance; a new log_dir replaces it"""
    global _logger
    if _logger is None or (log_dir is not None and Path(log_dir) != _logger.log_dir):
        _logger = ActivityLogger(log_dir or "outputs/logs")
    return _logger
