"""Gender classifier - labels English translations Female, Male, or Neutral."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

from tgbi.errors import EmptyInput, WordlistError

# Maximal runs of letters; apostrophes, digits and punctuation all split
_TOKEN = re.compile(r"[^\W\d_]+")


class Gender(str, Enum):
    FEMALE = "Female"
    MALE = "Male"
    NEUTRAL = "Neutral"


@dataclass(frozen=True)
class TokenMatch:
    token: str      # lowercased
    start: int
    end: int

    def to_dict(self) -> dict[str, Any]:
        return {"token": self.token, "start": self.start, "end": self.end}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TokenMatch":
        return cls(token=data["token"], start=data["start"], end=data["end"])


@dataclass(frozen=True)
class GenderLabel:
    """Classification of one translation, with the tokens that decided it."""

    value: Gender
    evidence: tuple[TokenMatch, ...] = ()
    markers: tuple[str, ...] = ()   # neutral phrases seen, informational

    @property
    def evidence_tokens(self) -> list[str]:
        return [m.token for m in self.evidence]

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value.value,
            "evidence": [m.to_dict() for m in self.evidence],
            "markers": list(self.markers),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GenderLabel":
        return cls(
            value=Gender(data["value"]),
            evidence=tuple(TokenMatch.from_dict(m) for m in data.get("evidence", [])),
            markers=tuple(data.get("markers", [])),
        )


@dataclass(frozen=True)
class GenderWordlists:
    female_tokens: frozenset[str]
    male_tokens: frozenset[str]
    neutral_markers: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for name in ("female_tokens", "male_tokens", "neutral_markers"):
            for word in getattr(self, name):
                if word != word.strip().lower() or not word:
                    raise WordlistError(f"{name}: {word!r} must be lowercase with no surrounding whitespace")
        overlap = self.female_tokens & self.male_tokens
        if overlap:
            raise WordlistError(f"Tokens listed as both female and male: {', '.join(sorted(overlap))}")

    def swapped(self) -> "GenderWordlists":
        """The same lists with female and male exchanged."""
        return GenderWordlists(
            female_tokens=self.male_tokens,
            male_tokens=self.female_tokens,
            neutral_markers=self.neutral_markers,
        )


def default_wordlists() -> GenderWordlists:
    """Pronouns and person nouns, extended with plurals, possessives and reflexives."""
    return GenderWordlists(
        female_tokens=frozenset({"she", "her", "hers", "herself", "woman", "women", "girl", "girls"}),
        male_tokens=frozenset({"he", "him", "his", "himself", "man", "men", "guy", "guys", "boy", "boys"}),
        neutral_markers=frozenset({"the person", "that person", "they"}),
    )


def paper_exact_wordlists() -> GenderWordlists:
    """Only the tokens named in the original measure definition."""
    return GenderWordlists(
        female_tokens=frozenset({"she", "her", "woman", "girl"}),
        male_tokens=frozenset({"he", "him", "man", "guy", "boy"}),
        neutral_markers=frozenset({"the person"}),
    )


def load_wordlists(path: Path) -> GenderWordlists:
    """Load an override file: {"female": [...], "male": [...], "neutral_markers": [...]}."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise WordlistError(f"Cannot load wordlists from {path}: {e}") from e
    if not isinstance(data, dict) or "female" not in data or "male" not in data:
        raise WordlistError(f"{path}: expected an object with 'female' and 'male' lists")
    return GenderWordlists(
        female_tokens=frozenset(data["female"]),
        male_tokens=frozenset(data["male"]),
        neutral_markers=frozenset(data.get("neutral_markers", [])),
    )


def tokenize(text: str) -> list[TokenMatch]:
    return [TokenMatch(m.group().lower(), m.start(), m.end()) for m in _TOKEN.finditer(text)]


def classify(output_text: str, wordlists: GenderWordlists | None = None) -> GenderLabel:
    """
    Label a translation by the gendered tokens it contains.

    Female if at least one female token and no male token, Male symmetrically,
    Neutral otherwise. Outputs naming both genders ("She is ... / He is ...")
    committed to neither, so they are Neutral too.
    """
    if not output_text or not output_text.strip():
        raise EmptyInput("Cannot classify an empty translation.")
    wordlists = wordlists or default_wordlists()

    tokens = tokenize(output_text)
    evidence = tuple(
        t for t in tokens if t.token in wordlists.female_tokens or t.token in wordlists.male_tokens
    )
    has_female = any(t.token in wordlists.female_tokens for t in evidence)
    has_male = any(t.token in wordlists.male_tokens for t in evidence)

    # Phrase markers are matched on token sequences so "they're" still finds "they"
    words = [t.token for t in tokens]
    markers = tuple(
        sorted(marker for marker in wordlists.neutral_markers if _contains_phrase(words, marker.split()))
    )

    if has_female and not has_male:
        value = Gender.FEMALE
    elif has_male and not has_female:
        value = Gender.MALE
    else:
        value = Gender.NEUTRAL
    return GenderLabel(value=value, evidence=evidence, markers=markers)


def _contains_phrase(words: list[str], phrase: list[str]) -> bool:
    n = len(phrase)
    return n > 0 and any(words[i:i + n] == phrase for i in range(len(words) - n + 1))
