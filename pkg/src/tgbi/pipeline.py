"""Pipeline - one evaluation run from lexicon to comparison report."""

from __future__ import annotations

import json
import logging
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any

from tgbi.cache import TranslationCache
from tgbi.classifier import GenderWordlists, default_wordlists, load_wordlists, paper_exact_wordlists
from tgbi.config import RunConfig, get_cache_path
from tgbi.corpus import EecCorpus, export_plaintext, generate_corpus, save_corpus
from tgbi.errors import BackendError, EmptySubset, TgbiError
from tgbi.lexicon import load_lexicon, write_rejections
from tgbi.metrics import EvaluationReport
from tgbi.reports import emit_report
from tgbi.scoring import entry_breakdown, label_records, score_records, write_breakdown
from tgbi.translators import BackendDescriptor, TranslationFailure, save_failures, save_records, translate_batch

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARTIAL = 3


class BackendStatus(str, Enum):
    OK = "ok"
    PARTIAL = "partial"      # failures, scored anyway (allow_partial)
    WITHHELD = "withheld"    # failures, no TGBI
    ERROR = "error"


@dataclass
class BackendOutcome:
    backend_id: str
    status: BackendStatus
    records: int = 0
    failures: list[TranslationFailure] = field(default_factory=list)
    report: EvaluationReport | None = None
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "backend_id": self.backend_id,
            "status": self.status.value,
            "records": self.records,
            "failures": len(self.failures),
            "coverage": round(self.report.coverage, 4) if self.report else None,
            "tgbi": round(self.report.tgbi, 4) if self.report else None,
            "error": self.error,
        }


@dataclass
class RunResult:
    run_id: str
    run_dir: Path
    outcomes: list[BackendOutcome]
    exit_code: int
    artifacts: list[Path] = field(default_factory=list)

    @property
    def reports(self) -> list[EvaluationReport]:
        return [o.report for o in self.outcomes if o.report is not None]

    @property
    def failures(self) -> dict[str, list[TranslationFailure]]:
        return {o.backend_id: o.failures for o in self.outcomes if o.failures}


def new_run_id() -> str:
    """UTC timestamp plus a short random suffix."""
    stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")
    return f"{stamp}-{uuid.uuid4().hex[:6]}"


def select_wordlists(paper_exact: bool = False, override_path: Path | None = None) -> GenderWordlists:
    """An override file wins over --paper-exact-wordlists, which wins over the defaults."""
    if override_path is not None:
        return load_wordlists(override_path)
    if paper_exact:
        return paper_exact_wordlists()
    return default_wordlists()


def _evaluate_backend(
    corpus: EecCorpus,
    backend: BackendDescriptor,
    config: RunConfig,
    cache: TranslationCache,
    wordlists: GenderWordlists,
    run_id: str,
    run_dir: Path,
    artifacts: list[Path],
) -> BackendOutcome:
    backend_id = backend.backend_id
    try:
        batch = translate_batch(
            corpus,
            backend,
            cache=cache,
            append_period=config.append_period,
            retry_delay=config.retry_delay,
        )
    except BackendError as e:
        logger.error("%s", e)
        return BackendOutcome(backend_id, BackendStatus.ERROR, error=str(e))
    except TgbiError as e:
        error = BackendError(backend_id, str(e))
        logger.error("%s", error)
        return BackendOutcome(backend_id, BackendStatus.ERROR, error=str(error))

    records = label_records(batch.records, wordlists)
    artifacts.append(save_records(records, run_dir / "records" / f"{backend_id}.jsonl"))
    artifacts.append(save_failures(batch.failures, run_dir / "failures" / f"{backend_id}.jsonl"))
    breakdown = entry_breakdown(corpus, records, backend_id, wordlists)
    artifacts.append(write_breakdown(breakdown, run_dir / "breakdown" / f"{backend_id}.csv"))
    outcome = BackendOutcome(backend_id, BackendStatus.OK, records=len(records), failures=batch.failures)

    if batch.failures and not config.allow_partial:
        outcome.status = BackendStatus.WITHHELD
        outcome.error = f"{len(batch.failures)} sentences failed; rerun or pass --allow-partial"
        logger.warning("%s: TGBI withheld, %s", backend_id, outcome.error)
        return outcome

    try:
        report = score_records(corpus, records, backend_id, wordlists=wordlists, run_id=run_id)
    except EmptySubset as e:
        outcome.status = BackendStatus.WITHHELD
        outcome.error = str(e)
        logger.warning("%s: TGBI withheld, %s", backend_id, e)
        return outcome
    except TgbiError as e:
        error = BackendError(backend_id, str(e))
        logger.error("%s", error)
        outcome.status = BackendStatus.ERROR
        outcome.error = str(error)
        return outcome

    if batch.failures:
        outcome.status = BackendStatus.PARTIAL
    outcome.report = report
    path = run_dir / "reports" / f"{backend_id}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(report.to_dict(), f, indent=2, ensure_ascii=False)
        f.write("\n")
    artifacts.append(path)
    return outcome


def _exit_code(outcomes: list[BackendOutcome]) -> int:
    statuses = {o.status for o in outcomes}
    if BackendStatus.ERROR in statuses:
        return EXIT_FAILURE
    if statuses & {BackendStatus.PARTIAL, BackendStatus.WITHHELD}:
        return EXIT_PARTIAL
    return EXIT_OK


def run_eval(config: RunConfig) -> RunResult:
    """
    Run a full evaluation and write every artifact under output_dir/<run_id>/.

    Backends are evaluated one after another; an error in one is recorded
    with its backend id and the others still run.

    Returns:
        RunResult; exit_code is 0 (all backends fully covered), 3 (partial
        coverage somewhere) or 1 (a backend failed outright)
    """
    config.validate()
    run_id = config.run_id or new_run_id()
    run_dir = config.output_dir / run_id
    run_dir.mkdir(parents=True, exist_ok=True)
    started_at = datetime.now(timezone.utc).isoformat()
    artifacts: list[Path] = []
    logger.info("Run %s -> %s", run_id, run_dir)

    loaded = load_lexicon(config.lexicon_path, config.lexicon_format)
    artifacts.append(
        write_rejections(list(loaded.rejections) + list(loaded.warnings), run_dir / "lexicon_rejections.jsonl")
    )
    corpus = generate_corpus(loaded.lexicon)
    artifacts.append(save_corpus(corpus, run_dir))
    artifacts.append(run_dir / "subsets.json")
    artifacts.append(export_plaintext(corpus, run_dir / "corpus.txt", append_period=config.append_period))

    wordlists = select_wordlists(config.paper_exact_wordlists, config.wordlist_override_path)
    cache = TranslationCache(config.cache_path or get_cache_path())

    outcomes = [
        _evaluate_backend(corpus, backend, config, cache, wordlists, run_id, run_dir, artifacts)
        for backend in config.backends
    ]

    reports = [o.report for o in outcomes if o.report is not None]
    if reports:
        artifacts.extend(emit_report(reports, run_dir))
    else:
        logger.warning("No backend produced a report; skipping comparison tables")

    exit_code = _exit_code(outcomes)
    manifest = {
        "run_id": run_id,
        "started_at": started_at,
        "finished_at": datetime.now(timezone.utc).isoformat(),
        "lexicon": {
            "path": str(config.lexicon_path),
            "format": str(config.lexicon_format),
            "parsed_rows": loaded.parsed_rows,
            "entries": len(loaded.lexicon),
            "rejected": len(loaded.rejections),
            "warnings": len(loaded.warnings),
        },
        "corpus_size": len(corpus),
        "flags": {
            "paper_exact_wordlists": config.paper_exact_wordlists,
            "allow_partial": config.allow_partial,
            "append_period": config.append_period,
            "wordlist_override_path": str(config.wordlist_override_path) if config.wordlist_override_path else None,
        },
        "backends": [o.to_dict() for o in outcomes],
        "exit_code": exit_code,
        "artifacts": sorted(str(p.relative_to(run_dir)) for p in artifacts),
    }
    manifest_path = run_dir / "run.json"
    with open(manifest_path, "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2, ensure_ascii=False)
        f.write("\n")
    artifacts.append(manifest_path)

    return RunResult(run_id=run_id, run_dir=run_dir, outcomes=outcomes, exit_code=exit_code, artifacts=artifacts)
