"""JSON reporter - the list of evaluation reports."""

import json

from tgbi.metrics import EvaluationReport
from tgbi.reports.base import BaseReporter


class JsonReporter(BaseReporter):
    filename = "comparison.json"

    def render(self, reports: list[EvaluationReport]) -> str:
        return json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False) + "\n"
