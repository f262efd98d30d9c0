import csv
import io
import json

from tgbi.classifier import Gender
from tgbi.corpus import SUBSET_NAMES
from tgbi.metrics import compute_tgbi, score_labels
from tgbi.published import published_scores
from tgbi.reports import CsvReporter, JsonReporter, MarkdownReporter, emit_report, format_cell, load_reports


def published_reports():
    return [compute_tgbi(published_scores(b), backend_id=b) for b in ("GT", "NP", "KT")]


def counted_report(backend_id: str, run_id: str = "run-1"):
    labels = [Gender.FEMALE, Gender.MALE, Gender.MALE, Gender.NEUTRAL]
    return compute_tgbi([score_labels(n, labels) for n in SUBSET_NAMES], backend_id=backend_id, run_id=run_id)


def test_cell_format():
    gt = published_reports()[0]
    assert format_cell(gt.score_for("informal")) == "0.4018 (0.2025, 0.0000)"


def test_markdown_layout():
    text = MarkdownReporter().render(published_reports())
    lines = text.splitlines()
    assert "| Subset | GT | NP | KT |" in lines
    rows = [line for line in lines if line.startswith("| (")]
    assert [r.split(" |")[0] for r in rows] == [
        "| (a) Informal",
        "| (b) Formal",
        "| (c) Impolite",
        "| (d) Polite",
        "| (e) Negative",
        "| (f) Positive",
        "| (g) Occupation",
    ]
    assert lines[-1] == "| Average | 0.2997 | 0.2500 | 0.1184 |"


def test_markdown_bolds_best_subset_per_backend():
    text = MarkdownReporter().render(published_reports())
    assert "**0.4281 (0.2358, 0.0040)**" in text   # GT positive
    assert "**0.3936 (0.1916, 0.0000)**" in text   # NP informal
    assert "**0.1750 (0.0316, 0.0000)**" in text   # KT informal
    assert text.count("**") == 6


def test_markdown_bolds_per_column_for_repeated_backends():
    def run(neutral_subset: str, run_id: str):
        scores = [
            score_labels(n, [Gender.NEUTRAL, Gender.NEUTRAL] if n == neutral_subset else [Gender.FEMALE, Gender.MALE])
            for n in SUBSET_NAMES
        ]
        return compute_tgbi(scores, backend_id="GT", run_id=run_id)

    lines = MarkdownReporter().render([run("informal", "r1"), run("occupation", "r2")]).splitlines()
    assert "| (a) Informal [2] | **1.0000 (0.0000, 1.0000)** | 0.5000 (0.5000, 0.0000) |" in lines
    assert "| (g) Occupation [2] | 0.5000 (0.5000, 0.0000) | **1.0000 (0.0000, 1.0000)** |" in lines
    assert sum(line.count("**") for line in lines) == 4


def test_markdown_shows_subset_sizes_and_partial_coverage():
    report = counted_report("GT")
    text = MarkdownReporter().render([report])
    assert "| (a) Informal [4] |" in text
    assert "Run: run-1" in text
    assert "Partial coverage" not in text


def test_csv_has_one_row_per_backend():
    rows = list(csv.reader(io.StringIO(CsvReporter().render(published_reports()))))
    assert rows[0][0] == "backend_id"
    assert rows[0][1:9] == ["(a) Informal", "(b) Formal", "(c) Impolite", "(d) Polite",
                            "(e) Negative", "(f) Positive", "(g) Occupation", "Average"]
    assert [r[0] for r in rows[1:]] == ["GT", "NP", "KT"]
    assert rows[1][1] == "0.4018 (0.2025, 0.0000)"


def test_json_schema():
    data = json.loads(JsonReporter().render([counted_report("GT")]))
    (report,) = data
    assert set(report) == {"run_id", "backend_id", "subsets", "tgbi", "coverage"}
    assert report["subsets"][0] == {
        "name": "informal",
        "n": 4,
        "p_w": 0.25,
        "p_m": 0.5,
        "p_n": 0.25,
        "score": round((0.125 + 0.25) ** 0.5, 4),
        "counts": {"female": 1, "male": 2, "neutral": 1},
    }


def test_emit_and_reload_is_byte_identical(tmp_path):
    reports = [counted_report("GT"), counted_report("NP")]
    paths = emit_report(reports, tmp_path)
    assert [p.name for p in paths] == ["comparison.md", "comparison.csv", "comparison.json"]

    reloaded = load_reports(tmp_path / "comparison.json")
    assert reloaded == reports
    assert MarkdownReporter().render(reloaded) == (tmp_path / "comparison.md").read_text(encoding="utf-8")


def test_published_reports_survive_reload(tmp_path):
    emit_report(published_reports(), tmp_path)
    reloaded = load_reports(tmp_path / "comparison.json")
    assert MarkdownReporter().render(reloaded) == (tmp_path / "comparison.md").read_text(encoding="utf-8")
