"""
Report Writer Service

Renders command results as CSV, JSON or XLSX.

Every float is written with 12 significant digits (shortest form), so JSON
and CSV renderings of one run carry the same values and repeated runs are
byte-identical. CSV uses a header row, ',' separators and LF line endings.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional
import csv
import io
import json
import math
import sys

from openpyxl import Workbook
from openpyxl.styles import Font

DEFAULT_DIGITS = 12


@dataclass
class Table:
    """Rows of one result table; columns fix the order"""
    name: str
    columns: List[str]
    rows: List[Dict[str, Any]]


@dataclass
class Report:
    """One command's output: a primary table plus JSON-only metadata"""
    command: str
    table: Table
    meta: Dict[str, Any] = field(default_factory=dict)


def format_number(value: float, digits: int = DEFAULT_DIGITS) -> str:
    if value == 0.0:
        return "0"
    if not math.isfinite(value):
        return str(value)
    return f"{value:.{digits}g}"


def normalize(value: Any, digits: int = DEFAULT_DIGITS) -> Any:
    """Round floats (recursively) to `digits` significant digits"""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(format_number(value, digits))
    if isinstance(value, dict):
        return {key: normalize(item, digits) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [normalize(item, digits) for item in value]
    return float(format_number(float(value), digits))


def _cell(value: Any, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_number(value, digits)
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(normalize(value, digits), separators=(',', ':'))
    return str(value)


def render_csv(table: Table, digits: int = DEFAULT_DIGITS) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell(row.get(column), digits) for column in table.columns])
    return buffer.getvalue()


def render_json(report: Report, digits: int = DEFAULT_DIGITS) -> str:
    document: Dict[str, Any] = {'command': report.command}
    document.update(report.meta)
    rows = [{column: row.get(column) for column in report.table.columns} for row in report.table.rows]
    document[report.table.name] = rows
    return json.dumps(normalize(document, digits), indent=2) + '\n'


def render(report: Report, fmt: str, digits: int = DEFAULT_DIGITS) -> str:
    if fmt == 'csv':
        return render_csv(report.table, digits)
    if fmt == 'json':
        return render_json(report, digits)
    raise ValueError(f"No text rendering for format '{fmt}'")


def write_xlsx(report: Report, file_path: str, digits: int = DEFAULT_DIGITS):
    """Workbook with the table on the first sheet and metadata on a second one"""
    wb = Workbook()
    ws = wb.active
    ws.title = report.table.name[:31]

    ws.append(report.table.columns)
    for cell in ws[1]:
        cell.font = Font(bold=True)
    for row in report.table.rows:
        ws.append([_xlsx_value(row.get(column), digits) for column in report.table.columns])

    meta = wb.create_sheet("meta")
    meta.append(["key", "value"])
    meta.append(["command", report.command])
    for key, value in report.meta.items():
        meta.append([key, _xlsx_value(value, digits)])

    wb.save(Path(file_path))


def _xlsx_value(value: Any, digits: int) -> Any:
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return normalize(value, digits)
    return _cell(value, digits)


class ReportWriterService:
    """Writes rendered reports to a file or to stdout"""

    def __init__(self, digits: int = DEFAULT_DIGITS):
        self.digits = digits

    def write(self, report: Report, fmt: str, output: Optional[str] = None) -> Optional[str]:
        """
        Render and write a report.

        Args:
            report: result to write
            fmt: csv, json or xlsx (xlsx needs an output path)
            output: file path; None writes to stdout

        Returns:
            The output path, or None for stdout

        Raises:
            OSError: the output file could not be written
        """
        if fmt == 'xlsx':
            if not output:
                raise ValueError("xlsx output needs a file path")
            write_xlsx(report, output, self.digits)
            return output

        text = render(report, fmt, self.digits)
        if output is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return None

        path = Path(output)
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        return output


# Singleton instance
_report_writer = None


def get_report_writer(digits: int = DEFAULT_DIGITS) -> ReportWriterService:
    """Get the report writer, rebuilt when the digit count changes"""
    global _report_writer
    if _report_writer is None or _report_writer.digits != digits:
        _report_writer = ReportWriterService(digits)
    return _report_writer
