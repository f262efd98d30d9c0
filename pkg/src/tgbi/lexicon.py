"""Lexicon module - loads, validates, and filters sentiment and occupation word lists."""

from __future__ import annotations

import json
import logging
import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Any

from tgbi.errors import FileUnreadable, FormatError

logger = logging.getLogger(__name__)

TSV_COLUMNS = ("id", "surface_hangul", "category", "polarity", "slot", "exclusion_flags")

_ID_PATTERN = re.compile(r"^[a-z0-9]+(?:-[a-z0-9]+)*$")
_HANGUL_SYLLABLE = re.compile(r"[가-힣]")


class Category(str, Enum):
    SENTIMENT = "Sentiment"
    OCCUPATION = "Occupation"


class Polarity(str, Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    NEUTRAL = "Neutral"


class Slot(str, Enum):
    """Syntactic role of the entry in the sentence template."""

    PREDICATE = "Predicate"
    NOUN_PHRASE = "NounPhrase"


class ExclusionFlag(str, Enum):
    """Reasons an annotator screened an entry out of the corpus."""

    APPEARANCE = "Appearance"
    RICHNESS = "Richness"
    SEXUAL_ORIENTATION = "SexualOrientation"
    DISABILITY = "Disability"
    ACADEMIC_BACKGROUND = "AcademicBackground"
    OCCUPATION_OR_STATUS = "OccupationOrStatus"
    GENDER_SPECIFIC = "GenderSpecific"
    HATE_TERM = "HateTerm"


class LexiconFormat(str, Enum):
    TSV = "tsv"
    JSONL = "jsonl"


@dataclass(frozen=True)
class LexiconEntry:
    """One sentiment phrase or occupation, stored in its slot-ready form."""

    id: str                 # Yale romanization, e.g. "sangnyang"
    surface_hangul: str     # predicate stem (상냥) or bare noun (의사)
    category: Category
    polarity: Polarity
    slot: Slot
    exclusion_flags: frozenset[ExclusionFlag] = frozenset()

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "id": self.id,
            "surface_hangul": self.surface_hangul,
            "category": self.category.value,
            "polarity": self.polarity.value,
            "slot": self.slot.value,
            "exclusion_flags": sorted(f.value for f in self.exclusion_flags),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "LexiconEntry":
        """Create a LexiconEntry from a dictionary. Raises ValueError on unknown enum values."""
        return cls(
            id=data["id"],
            surface_hangul=data["surface_hangul"],
            category=Category(data["category"]),
            polarity=Polarity(data["polarity"]),
            slot=Slot(data["slot"]),
            exclusion_flags=frozenset(ExclusionFlag(f) for f in data["exclusion_flags"]),
        )


@dataclass(frozen=True)
class Lexicon:
    """Validated entries in canonical (id) order."""

    entries: tuple[LexiconEntry, ...]
    source_name: str = ""

    @property
    def counts(self) -> dict[Polarity, int]:
        tally = Counter(e.polarity for e in self.entries)
        return {p: tally.get(p, 0) for p in Polarity}

    def get(self, entry_id: str) -> LexiconEntry | None:
        for entry in self.entries:
            if entry.id == entry_id:
                return entry
        return None

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Rejection:
    """A row kept out of the lexicon (severity "error") or flagged for review ("warning")."""

    line: int
    violations: tuple[str, ...]
    id: str | None = None
    severity: str = "error"

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"line": self.line}
        if self.id is not None:
            data["id"] = self.id
        data["violations"] = list(self.violations)
        data["severity"] = self.severity
        return data


@dataclass(frozen=True)
class LoadResult:
    lexicon: Lexicon
    rejections: tuple[Rejection, ...] = ()
    warnings: tuple[Rejection, ...] = ()
    parsed_rows: int = 0


def validate_entry(entry: LexiconEntry) -> list[str]:
    """
    Check one entry against the lexicon invariants.

    Returns:
        Violation codes, empty iff the entry may enter a corpus
    """
    violations: list[str] = []
    if not _ID_PATTERN.match(entry.id):
        violations.append("InvalidId")
    if not entry.surface_hangul.strip():
        violations.append("EmptySurface")
    elif not _HANGUL_SYLLABLE.search(entry.surface_hangul):
        violations.append("NoHangulSyllable")
    elif entry.slot is Slot.NOUN_PHRASE and not _HANGUL_SYLLABLE.fullmatch(entry.surface_hangul[-1]):
        # the copula is chosen from the last syllable
        violations.append("SurfaceMustEndInHangul")
    if entry.category is Category.OCCUPATION:
        if entry.polarity is not Polarity.NEUTRAL:
            violations.append("OccupationMustBeNeutral")
        if entry.slot is not Slot.NOUN_PHRASE:
            violations.append("OccupationMustBeNounPhrase")
    elif entry.polarity is Polarity.NEUTRAL:
        violations.append("SentimentMustBePolar")
    for flag in sorted(entry.exclusion_flags, key=lambda f: f.value):
        violations.append(f"ExcludedCategory({flag.value})")
    return violations


def _parse_enum_fields(raw: dict[str, Any]) -> tuple[LexiconEntry | None, list[str]]:
    """Build an entry from raw string fields, reporting unknown enum values as violations."""
    bad: list[str] = []
    for name, enum_cls in (("category", Category), ("polarity", Polarity), ("slot", Slot)):
        try:
            enum_cls(raw[name])
        except ValueError:
            bad.append(f"UnknownValue({name}={raw[name]})")
    for flag in raw["exclusion_flags"]:
        try:
            ExclusionFlag(flag)
        except ValueError:
            bad.append(f"UnknownValue(exclusion_flags={flag})")
    if bad:
        return None, bad
    return LexiconEntry.from_dict(raw), []


def _read_text(path: Path) -> str:
    try:
        return path.read_bytes().decode("utf-8")
    except FileNotFoundError as e:
        raise FileUnreadable(path, "no such file") from e
    except UnicodeDecodeError as e:
        raise FileUnreadable(path, f"not valid UTF-8 ({e.reason} at byte {e.start})") from e
    except OSError as e:
        raise FileUnreadable(path, str(e)) from e


def _tsv_rows(text: str) -> list[tuple[int, dict[str, Any]]]:
    lines = text.replace("\r\n", "\n").split("\n")
    if not lines or lines[0].split("\t") != list(TSV_COLUMNS):
        raise FormatError(1, f"header must be: {' '.join(TSV_COLUMNS)}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) != len(TSV_COLUMNS):
            raise FormatError(lineno, f"expected {len(TSV_COLUMNS)} columns, got {len(cells)}")
        raw: dict[str, Any] = dict(zip(TSV_COLUMNS, (c.strip() for c in cells)))
        raw["exclusion_flags"] = [f.strip() for f in raw["exclusion_flags"].split(";") if f.strip()]
        rows.append((lineno, raw))
    return rows


def _jsonl_rows(text: str) -> list[tuple[int, dict[str, Any]]]:
    rows = []
    for lineno, line in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as e:
            raise FormatError(lineno, f"invalid JSON: {e.msg}") from e
        if not isinstance(raw, dict):
            raise FormatError(lineno, "expected a JSON object")
        missing = [c for c in TSV_COLUMNS if c not in raw]
        if missing:
            raise FormatError(lineno, f"missing fields: {', '.join(missing)}")
        not_strings = [c for c in TSV_COLUMNS[:-1] if not isinstance(raw[c], str)]
        if not_strings:
            raise FormatError(lineno, f"fields must be strings: {', '.join(not_strings)}")
        if not isinstance(raw["exclusion_flags"], list) or not all(isinstance(f, str) for f in raw["exclusion_flags"]):
            raise FormatError(lineno, "exclusion_flags must be a list of strings")
        rows.append((lineno, raw))
    return rows


def load_lexicon(path: Path, format: LexiconFormat | str = LexiconFormat.TSV) -> LoadResult:
    """
    Load a lexicon file, keeping only rows that parse and validate.

    Args:
        path: TSV (header row required) or JSONL file
        format: "tsv" or "jsonl"

    Returns:
        LoadResult with the sorted Lexicon, error rejections and warnings
    """
    path = Path(path)
    fmt = LexiconFormat(format)
    text = _read_text(path)
    rows = _tsv_rows(text) if fmt is LexiconFormat.TSV else _jsonl_rows(text)

    accepted: dict[str, LexiconEntry] = {}
    accepted_lines: dict[str, int] = {}
    surfaces: dict[tuple[Category, str], str] = {}
    rejections: list[Rejection] = []

    for lineno, raw in rows:
        entry_id = str(raw["id"]) or None
        entry, violations = _parse_enum_fields(raw)
        if entry is not None:
            violations = validate_entry(entry)
            if entry.id in accepted:
                violations.append("DuplicateId")
            elif (entry.category, entry.surface_hangul) in surfaces:
                violations.append("DuplicateSurface")
        if violations:
            rejections.append(Rejection(line=lineno, id=entry_id, violations=tuple(violations)))
            continue
        accepted[entry.id] = entry
        accepted_lines[entry.id] = lineno
        surfaces[(entry.category, entry.surface_hangul)] = entry.id

    # Same surface in both categories is allowed but worth a human look
    warnings: list[Rejection] = []
    for (category, surface), entry_id in sorted(surfaces.items(), key=lambda kv: accepted_lines[kv[1]]):
        if category is Category.OCCUPATION and (Category.SENTIMENT, surface) in surfaces:
            warnings.append(
                Rejection(
                    line=accepted_lines[entry_id],
                    id=entry_id,
                    violations=(f"CrossCategorySurface({surfaces[(Category.SENTIMENT, surface)]})",),
                    severity="warning",
                )
            )

    lexicon = Lexicon(
        entries=tuple(sorted(accepted.values(), key=lambda e: e.id)),
        source_name=path.name,
    )
    for rejection in rejections:
        logger.info("Rejected line %d (%s): %s", rejection.line, rejection.id, ", ".join(rejection.violations))
    logger.info(
        "Loaded %d entries from %s (%d rejected, %d warnings)",
        len(lexicon), path.name, len(rejections), len(warnings),
    )
    return LoadResult(
        lexicon=lexicon,
        rejections=tuple(rejections),
        warnings=tuple(warnings),
        parsed_rows=len(rows),
    )


def write_rejections(rejections: list[Rejection] | tuple[Rejection, ...], path: Path) -> Path:
    """Write the rejection report as JSONL."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for rejection in rejections:
            f.write(json.dumps(rejection.to_dict(), ensure_ascii=False) + "\n")
    return path


def demo_lexicon_path() -> Path:
    """Path of the demo lexicon shipped with the package."""
    return Path(str(resources.files("tgbi") / "data" / "demo_lexicon.tsv"))
