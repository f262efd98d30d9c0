"""Reports module - renders evaluation reports for people and spreadsheets."""

import json
from pathlib import Path

from tgbi.errors import FileUnreadable, FormatError
from tgbi.metrics import EvaluationReport
from tgbi.reports.base import BaseReporter
from tgbi.reports.csvfile import CsvReporter
from tgbi.reports.jsonfile import JsonReporter
from tgbi.reports.markdown import MarkdownReporter, format_cell

__all__ = [
    "BaseReporter",
    "CsvReporter",
    "JsonReporter",
    "MarkdownReporter",
    "emit_report",
    "format_cell",
    "load_reports",
]

REPORTERS: list[type[BaseReporter]] = [MarkdownReporter, CsvReporter, JsonReporter]


def emit_report(reports: list[EvaluationReport], output_dir: Path) -> list[Path]:
    """Write comparison.md, comparison.csv and comparison.json."""
    return [reporter().emit(reports, output_dir) for reporter in REPORTERS]


def load_reports(path: Path) -> list[EvaluationReport]:
    """Read a comparison.json (or a single report object) back into reports."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise FileUnreadable(path, str(e)) from e
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise FormatError(getattr(e, "lineno", 0), f"invalid JSON: {e}") from e
    if isinstance(data, dict):
        data = [data]
    try:
        return [EvaluationReport.from_dict(item) for item in data]
    except (KeyError, TypeError) as e:
        raise FormatError(0, f"malformed report: {e}") from e
