"""Corpus module - expands a lexicon into the equity evaluation corpus (EEC)."""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path
from typing import Any

from tgbi.errors import EmptyLexicon, FormatError, InvalidEntry, NotHangulSyllable
from tgbi.lexicon import Category, Lexicon, LexiconEntry, Polarity, Slot, validate_entry

logger = logging.getLogger(__name__)

HANGUL_FIRST = 0xAC00
HANGUL_LAST = 0xD7A3
FINALS_PER_BLOCK = 28


class Formality(str, Enum):
    INFORMAL = "informal"
    FORMAL = "formal"


class Politeness(str, Enum):
    IMPOLITE = "impolite"
    POLITE = "polite"


class ContentClass(str, Enum):
    NEGATIVE = "negative"
    POSITIVE = "positive"
    OCCUPATION = "occupation"


# The seven evaluation subsets, in report order (a)-(g)
SUBSET_NAMES: tuple[str, ...] = (
    Formality.INFORMAL.value,
    Formality.FORMAL.value,
    Politeness.IMPOLITE.value,
    Politeness.POLITE.value,
    ContentClass.NEGATIVE.value,
    ContentClass.POSITIVE.value,
    ContentClass.OCCUPATION.value,
)

PARTITIONS: dict[str, tuple[str, ...]] = {
    "formality": (Formality.INFORMAL.value, Formality.FORMAL.value),
    "politeness": (Politeness.IMPOLITE.value, Politeness.POLITE.value),
    "content": (ContentClass.NEGATIVE.value, ContentClass.POSITIVE.value, ContentClass.OCCUPATION.value),
}

# (hangul, yale)
PRONOUNS: dict[Formality, tuple[str, str]] = {
    Formality.INFORMAL: ("걔는", "kyay-nun"),
    Formality.FORMAL: ("그 사람은", "ku salam-un"),
}

PREDICATE_ENDINGS: dict[Politeness, tuple[str, str]] = {
    Politeness.IMPOLITE: ("해", "hay"),
    Politeness.POLITE: ("해요", "hayyo"),
}

# keyed by (politeness, noun ends in a final consonant)
COPULA_ENDINGS: dict[tuple[Politeness, bool], tuple[str, str]] = {
    (Politeness.IMPOLITE, False): ("야", "ya"),
    (Politeness.IMPOLITE, True): ("이야", "iya"),
    (Politeness.POLITE, False): ("예요", "yeyyo"),
    (Politeness.POLITE, True): ("이에요", "ieyyo"),
}


def batchim_final(syllable: str) -> bool:
    """True iff a precomposed Hangul syllable ends in a final consonant."""
    if len(syllable) != 1 or not HANGUL_FIRST <= ord(syllable) <= HANGUL_LAST:
        raise NotHangulSyllable(syllable)
    return (ord(syllable) - HANGUL_FIRST) % FINALS_PER_BLOCK != 0


def content_class_of(entry: LexiconEntry) -> ContentClass:
    if entry.category is Category.OCCUPATION:
        return ContentClass.OCCUPATION
    if entry.polarity is Polarity.POSITIVE:
        return ContentClass.POSITIVE
    if entry.polarity is Polarity.NEGATIVE:
        return ContentClass.NEGATIVE
    raise InvalidEntry(entry.id, ["NeutralSentiment"])


@dataclass(frozen=True)
class EecSentence:
    """One generated Korean test utterance."""

    sentence_id: str        # "{entry_ref}-{formality}-{politeness}"
    text_hangul: str
    text_romanized: str     # informational only
    formality: Formality
    politeness: Politeness
    entry_ref: str
    content_class: ContentClass

    @property
    def subsets(self) -> tuple[str, str, str]:
        return (self.formality.value, self.politeness.value, self.content_class.value)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        data = asdict(self)
        data["formality"] = self.formality.value
        data["politeness"] = self.politeness.value
        data["content_class"] = self.content_class.value
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EecSentence":
        """Create an EecSentence from a dictionary."""
        return cls(
            sentence_id=data["sentence_id"],
            text_hangul=data["text_hangul"],
            text_romanized=data["text_romanized"],
            formality=Formality(data["formality"]),
            politeness=Politeness(data["politeness"]),
            entry_ref=data["entry_ref"],
            content_class=ContentClass(data["content_class"]),
        )


@dataclass(frozen=True)
class EecCorpus:
    """Generated sentences in canonical order plus the seven-subset index."""

    sentences: tuple[EecSentence, ...]
    subset_index: dict[str, tuple[str, ...]]

    def __len__(self) -> int:
        return len(self.sentences)

    def get(self, sentence_id: str) -> EecSentence:
        return self._by_id()[sentence_id]

    def subset(self, name: str) -> list[EecSentence]:
        by_id = self._by_id()
        return [by_id[sid] for sid in self.subset_index[name]]

    def partitions(self) -> dict[str, dict[str, tuple[str, ...]]]:
        return {
            partition: {name: self.subset_index[name] for name in names}
            for partition, names in PARTITIONS.items()
        }

    def _by_id(self) -> dict[str, EecSentence]:
        cached = self.__dict__.get("_index")
        if cached is None:
            cached = {s.sentence_id: s for s in self.sentences}
            object.__setattr__(self, "_index", cached)
        return cached


def render_sentence(entry: LexiconEntry, formality: Formality, politeness: Politeness) -> EecSentence:
    """
    Fill the sentence template for one entry.

    Predicates take 해/해요; noun phrases take the copula 야/이야 or 예요/이에요,
    chosen by whether the noun's last syllable has a final consonant.

    Raises:
        InvalidEntry: if the entry carries exclusion flags or breaks an invariant
    """
    violations = validate_entry(entry)
    if violations:
        raise InvalidEntry(entry.id, violations)

    pronoun, pronoun_yale = PRONOUNS[formality]
    if entry.slot is Slot.PREDICATE:
        ending, ending_yale = PREDICATE_ENDINGS[politeness]
    else:
        ending, ending_yale = COPULA_ENDINGS[(politeness, batchim_final(entry.surface_hangul[-1]))]

    return EecSentence(
        sentence_id=f"{entry.id}-{formality.value}-{politeness.value}",
        text_hangul=f"{pronoun} {entry.surface_hangul}{ending}",
        text_romanized=f"{pronoun_yale} {entry.id}-{ending_yale}",
        formality=formality,
        politeness=politeness,
        entry_ref=entry.id,
        content_class=content_class_of(entry),
    )


def generate_corpus(lexicon: Lexicon) -> EecCorpus:
    """
    Cross every lexicon entry with formality and politeness.

    Sentences come out ordered by entry id, then informal < formal,
    then impolite < polite.
    """
    if not lexicon.entries:
        raise EmptyLexicon("Lexicon has no valid entries to expand.")

    sentences: list[EecSentence] = []
    subset_index: dict[str, list[str]] = {name: [] for name in SUBSET_NAMES}
    for entry in sorted(lexicon.entries, key=lambda e: e.id):
        for formality in Formality:
            for politeness in Politeness:
                sentence = render_sentence(entry, formality, politeness)
                sentences.append(sentence)
                for name in sentence.subsets:
                    subset_index[name].append(sentence.sentence_id)

    logger.info("Generated %d sentences from %d entries", len(sentences), len(lexicon.entries))
    return EecCorpus(
        sentences=tuple(sentences),
        subset_index={name: tuple(ids) for name, ids in subset_index.items()},
    )


def save_corpus(corpus: EecCorpus, directory: Path) -> Path:
    """
    Write corpus.jsonl and the subsets.json sidecar.

    Returns:
        Path to corpus.jsonl
    """
    directory.mkdir(parents=True, exist_ok=True)
    corpus_file = directory / "corpus.jsonl"
    with open(corpus_file, "w", encoding="utf-8", newline="\n") as f:
        for sentence in corpus.sentences:
            f.write(json.dumps(sentence.to_dict(), ensure_ascii=False) + "\n")
    with open(directory / "subsets.json", "w", encoding="utf-8", newline="\n") as f:
        json.dump({name: list(ids) for name, ids in corpus.subset_index.items()}, f, indent=2)
        f.write("\n")
    return corpus_file


def load_corpus(directory: Path) -> EecCorpus:
    """Load a corpus written by save_corpus. The subset index is rebuilt if the sidecar is absent."""
    corpus_file = directory / "corpus.jsonl"
    sentences: list[EecSentence] = []
    with open(corpus_file, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                sentences.append(EecSentence.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, ValueError) as e:
                raise FormatError(lineno, f"bad corpus record: {e}") from e

    sidecar = directory / "subsets.json"
    if sidecar.exists():
        with open(sidecar, "r", encoding="utf-8") as f:
            index = {name: tuple(ids) for name, ids in json.load(f).items()}
    else:
        index = {name: tuple(s.sentence_id for s in sentences if name in s.subsets) for name in SUBSET_NAMES}
    return EecCorpus(sentences=tuple(sentences), subset_index=index)


def export_plaintext(corpus: EecCorpus, path: Path, append_period: bool = False) -> Path:
    """Write one sentence per line for piping into external translators."""
    path.parent.mkdir(parents=True, exist_ok=True)
    suffix = "." if append_period else ""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for sentence in corpus.sentences:
            f.write(f"{sentence.text_hangul}{suffix}\n")
    return path
