"""CSV reporter - one row per backend."""

import csv
import io

from tgbi.corpus import SUBSET_NAMES
from tgbi.metrics import EvaluationReport
from tgbi.reports.base import BaseReporter
from tgbi.reports.markdown import SUBSET_LABELS, format_cell


class CsvReporter(BaseReporter):
    filename = "comparison.csv"

    def render(self, reports: list[EvaluationReport]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["backend_id", *(SUBSET_LABELS[n] for n in SUBSET_NAMES), "Average", "coverage"])
        for r in reports:
            writer.writerow([
                r.backend_id,
                *(format_cell(r.score_for(n)) for n in SUBSET_NAMES),
                f"{r.tgbi:.4f}",
                f"{r.coverage:.4f}",
            ])
        return buffer.getvalue()
