"""Scoring module - labels translation records and turns them into per-subset scores."""

from __future__ import annotations

import csv
import logging
from collections import Counter
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

from tgbi.classifier import Gender, GenderWordlists, classify, default_wordlists
from tgbi.corpus import SUBSET_NAMES, EecCorpus
from tgbi.metrics import EvaluationReport, compute_tgbi, score_labels
from tgbi.translators.base import TranslationRecord

logger = logging.getLogger(__name__)

BREAKDOWN_COLUMNS = ("entry_id", "content_class", "female", "male", "neutral", "translated")


def label_records(
    records: list[TranslationRecord],
    wordlists: GenderWordlists | None = None,
) -> list[TranslationRecord]:
    """Return copies of the records with a GenderLabel attached."""
    wordlists = wordlists or default_wordlists()
    return [replace(r, label=classify(r.output_english, wordlists)) for r in records]


def _known_labels(
    corpus: EecCorpus,
    records: list[TranslationRecord],
    backend_id: str,
    wordlists: GenderWordlists | None,
) -> dict[str, Gender]:
    labeled = {r.sentence_id: r.label.value for r in label_records(records, wordlists)}
    known = {s.sentence_id for s in corpus.sentences}
    unknown = [sid for sid in labeled if sid not in known]
    if unknown:
        logger.warning("%s: ignoring %d records for sentences not in the corpus", backend_id, len(unknown))
        for sid in unknown:
            del labeled[sid]
    return labeled


def score_records(
    corpus: EecCorpus,
    records: list[TranslationRecord],
    backend_id: str,
    wordlists: GenderWordlists | None = None,
    run_id: str = "",
) -> EvaluationReport:
    """
    Score one backend's records over the seven corpus subsets.

    Records are relabeled with the given wordlists. Coverage is the share
    of corpus sentences that have a record; a subset with no records at
    all raises EmptySubset.
    """
    labeled = _known_labels(corpus, records, backend_id, wordlists)
    scores = [
        score_labels(name, (labeled[sid] for sid in corpus.subset_index[name] if sid in labeled))
        for name in SUBSET_NAMES
    ]
    coverage = len(labeled) / len(corpus) if len(corpus) else 0.0
    return compute_tgbi(scores, backend_id=backend_id, coverage=coverage, run_id=run_id)


@dataclass(frozen=True)
class EntryBreakdown:
    """How one backend gendered the four sentences of one lexicon entry."""

    entry_id: str
    content_class: str
    female: int
    male: int
    neutral: int

    @property
    def translated(self) -> int:
        return self.female + self.male + self.neutral

    def to_dict(self) -> dict[str, Any]:
        return {
            "entry_id": self.entry_id,
            "content_class": self.content_class,
            "female": self.female,
            "male": self.male,
            "neutral": self.neutral,
            "translated": self.translated,
        }


def entry_breakdown(
    corpus: EecCorpus,
    records: list[TranslationRecord],
    backend_id: str = "",
    wordlists: GenderWordlists | None = None,
) -> list[EntryBreakdown]:
    """
    Count Female/Male/Neutral labels per lexicon entry, in corpus order.

    Entries with no translated sentence are listed with zero counts.
    """
    labeled = _known_labels(corpus, records, backend_id, wordlists)
    tallies: dict[str, Counter[Gender]] = {}
    classes: dict[str, str] = {}
    for sentence in corpus.sentences:
        tally = tallies.setdefault(sentence.entry_ref, Counter())
        classes[sentence.entry_ref] = sentence.content_class.value
        if sentence.sentence_id in labeled:
            tally[labeled[sentence.sentence_id]] += 1
    return [
        EntryBreakdown(entry_id, classes[entry_id], t[Gender.FEMALE], t[Gender.MALE], t[Gender.NEUTRAL])
        for entry_id, t in tallies.items()
    ]


def write_breakdown(rows: list[EntryBreakdown], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=BREAKDOWN_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(row.to_dict() for row in rows)
    return path
