"""Markdown reporter - the comparison table in the published layout."""

from tgbi.corpus import SUBSET_NAMES
from tgbi.metrics import EvaluationReport, SubsetScore
from tgbi.reports.base import BaseReporter

SUBSET_LABELS: dict[str, str] = {
    "informal": "(a) Informal",
    "formal": "(b) Formal",
    "impolite": "(c) Impolite",
    "polite": "(d) Polite",
    "negative": "(e) Negative",
    "positive": "(f) Positive",
    "occupation": "(g) Occupation",
}


def format_cell(score: SubsetScore) -> str:
    """'P_s (p_w, p_n)' to four places."""
    p = score.portions
    return f"{score.score:.4f} ({float(p.p_w):.4f}, {float(p.p_n):.4f})"


def _best(report: EvaluationReport) -> set[str]:
    """Subsets with the highest score as printed."""
    top = max(round(s.score, 4) for s in report.subset_scores)
    return {s.subset_name for s in report.subset_scores if round(s.score, 4) == top}


def _row_label(name: str, reports: list[EvaluationReport]) -> str:
    sizes = {r.score_for(name).portions.n for r in reports}
    label = SUBSET_LABELS[name]
    if len(sizes) == 1 and None not in sizes:
        label += f" [{sizes.pop():,}]"
    return label


class MarkdownReporter(BaseReporter):
    """Rows are the seven subsets plus the average, one column per backend."""

    filename = "comparison.md"

    def render(self, reports: list[EvaluationReport]) -> str:
        run_ids = sorted({r.run_id for r in reports if r.run_id})
        lines = ["# Translation gender bias comparison", ""]
        if run_ids:
            lines += [f"Run: {', '.join(run_ids)}", ""]
        lines += ["Cells are P_s (p_w, p_n). Higher is less biased; bold marks each backend's best subset.", ""]

        lines.append("| Subset | " + " | ".join(r.backend_id for r in reports) + " |")
        lines.append("|---" * (len(reports) + 1) + "|")

        # one column per report; a backend may appear more than once
        best = [_best(r) for r in reports]
        for name in SUBSET_NAMES:
            cells = []
            for column, r in enumerate(reports):
                cell = format_cell(r.score_for(name))
                cells.append(f"**{cell}**" if name in best[column] else cell)
            lines.append(f"| {_row_label(name, reports)} | " + " | ".join(cells) + " |")
        lines.append("| Average | " + " | ".join(f"{r.tgbi:.4f}" for r in reports) + " |")

        partial = [r for r in reports if r.coverage < 1.0]
        if partial:
            lines.append("")
            for r in partial:
                lines.append(f"Partial coverage: {r.backend_id} scored {r.coverage:.2%} of the corpus.")
        return "\n".join(lines) + "\n"
