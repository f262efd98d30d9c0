"""Base classes and data models for translation backends."""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

from tgbi.classifier import GenderLabel
from tgbi.config import read_json
from tgbi.corpus import EecSentence
from tgbi.errors import BackendConfigError, ConfigError, FormatError, RateLimitConfigInvalid


class BackendKind(str, Enum):
    HTTP_ADAPTER = "HttpAdapter"
    FIXTURE_FILE = "FixtureFile"
    SYNTHETIC = "Synthetic"


@dataclass
class BackendDescriptor:
    """One translation backend as described by its JSON config file."""

    backend_id: str
    kind: BackendKind
    endpoint_config: dict[str, Any] = field(default_factory=dict)
    rate_limit: float = 1.0         # requests per second
    max_parallel: int = 1
    config_dir: Path | None = None  # relative paths in endpoint_config resolve here

    def validate(self) -> None:
        if not self.rate_limit or self.rate_limit <= 0:
            raise RateLimitConfigInvalid(self.backend_id, f"rate_limit must be > 0, got {self.rate_limit}")
        if not isinstance(self.max_parallel, int) or self.max_parallel < 1:
            raise RateLimitConfigInvalid(self.backend_id, f"max_parallel must be >= 1, got {self.max_parallel}")

    def resolve_path(self, value: str) -> Path:
        p = Path(value)
        if p.is_absolute() or self.config_dir is None:
            return p
        return self.config_dir / p

    @classmethod
    def from_dict(cls, data: dict[str, Any], config_dir: Path | None = None) -> "BackendDescriptor":
        try:
            backend_id = data["backend_id"]
            kind = BackendKind(data["kind"])
        except KeyError as e:
            raise ConfigError(f"Backend config missing field {e}") from e
        except ValueError as e:
            raise BackendConfigError(data.get("backend_id", "?"), f"unknown kind {data.get('kind')!r}") from e
        return cls(
            backend_id=backend_id,
            kind=kind,
            endpoint_config=dict(data.get("endpoint_config", {})),
            rate_limit=data.get("rate_limit", 1.0),
            max_parallel=data.get("max_parallel", 1),
            config_dir=config_dir,
        )


def load_backend(path: Path) -> BackendDescriptor:
    """Load and validate a backend config file."""
    data = read_json(path)
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a JSON object")
    descriptor = BackendDescriptor.from_dict(data, config_dir=path.parent)
    descriptor.validate()
    return descriptor


@dataclass
class TranslationRecord:
    """One sentence as translated by one backend."""

    sentence_id: str
    backend_id: str
    source_hangul: str          # exactly what was sent
    output_english: str
    fetched_at: str             # ISO 8601, time of the original fetch
    from_cache: bool = False
    label: GenderLabel | None = None

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        data = asdict(self)
        data["label"] = self.label.to_dict() if self.label is not None else None
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TranslationRecord":
        """Create a TranslationRecord from a dictionary."""
        label = data.get("label")
        return cls(
            sentence_id=data["sentence_id"],
            backend_id=data["backend_id"],
            source_hangul=data["source_hangul"],
            output_english=data["output_english"],
            fetched_at=data["fetched_at"],
            from_cache=data.get("from_cache", False),
            label=GenderLabel.from_dict(label) if label else None,
        )


@dataclass(frozen=True)
class TranslationFailure:
    sentence_id: str
    backend_id: str
    error: str
    attempts: int
    transport_error: bool = False

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class BatchResult:
    backend_id: str
    records: list[TranslationRecord]
    failures: list[TranslationFailure] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.records) + len(self.failures)

    @property
    def coverage(self) -> float:
        return len(self.records) / self.total if self.total else 0.0


class BaseTranslator(ABC):
    """Abstract base class for translation backends."""

    def __init__(self, descriptor: BackendDescriptor) -> None:
        self.descriptor = descriptor

    @property
    def backend_id(self) -> str:
        return self.descriptor.backend_id

    def prepare(self, sentences: list[EecSentence]) -> None:
        """Hook run once before a batch; may raise to refuse the whole batch."""

    @abstractmethod
    async def translate(self, sentence: EecSentence, source: str) -> str:
        """
        Translate one sentence.

        Args:
            sentence: The corpus sentence, for backends keyed by id or features
            source: The exact Korean text to send

        Returns:
            English output, nonempty
        """
        pass

    async def aclose(self) -> None:
        """Release network resources."""


def save_records(records: list[TranslationRecord], path: Path) -> Path:
    """Write records as JSONL."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for record in records:
            f.write(json.dumps(record.to_dict(), ensure_ascii=False) + "\n")
    return path


def load_records(path: Path) -> list[TranslationRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                records.append(TranslationRecord.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError) as e:
                raise FormatError(lineno, f"bad translation record: {e}") from e
    return records


def save_failures(failures: list[TranslationFailure], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for failure in failures:
            f.write(json.dumps(failure.to_dict(), ensure_ascii=False) + "\n")
    return path
