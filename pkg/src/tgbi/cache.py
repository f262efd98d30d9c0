"""Cache module - append-only journal of every translation ever fetched."""

from __future__ import annotations

import hashlib
import json
import logging
import threading
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)


def cache_key(backend_id: str, source: str) -> str:
    """Content hash of (backend, source sentence)."""
    return hashlib.sha256(f"{backend_id}\x00{source}".encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    key: str
    backend_id: str
    source: str
    output: str
    fetched_at: str     # ISO 8601

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CacheEntry":
        fields = ("key", "backend_id", "source", "output", "fetched_at")
        if not all(isinstance(data[name], str) for name in fields):
            raise TypeError("cache entry fields must be strings")
        return cls(
            key=data["key"],
            backend_id=data["backend_id"],
            source=data["source"],
            output=data["output"],
            fetched_at=data["fetched_at"],
        )


class TranslationCache:
    """
    JSONL journal keyed by content hash.

    Live MT systems drift, so outputs are never overwritten: appends only,
    and the first entry for a key wins on reload. Reads are lock-free;
    appends are serialized.
    """

    def __init__(self, path: Path | None) -> None:
        self.path = path
        self._entries: dict[str, CacheEntry] = {}
        self._lock = threading.Lock()
        if path is not None and path.exists():
            self._load()

    def _load(self) -> None:
        assert self.path is not None
        with open(self.path, "r", encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    entry = CacheEntry.from_dict(json.loads(line))
                except (json.JSONDecodeError, KeyError, TypeError) as e:
                    # torn writes and lines that are not entry objects
                    logger.warning("Skipping unreadable cache line %d in %s: %s", lineno, self.path, e)
                    continue
                self._entries.setdefault(entry.key, entry)
        logger.debug("Loaded %d cached translations from %s", len(self._entries), self.path)

    def get(self, backend_id: str, source: str) -> CacheEntry | None:
        return self._entries.get(cache_key(backend_id, source))

    def append(self, backend_id: str, source: str, output: str, fetched_at: str) -> CacheEntry:
        """Record a fetched output. An existing entry for the key is kept and returned."""
        key = cache_key(backend_id, source)
        with self._lock:
            existing = self._entries.get(key)
            if existing is not None:
                return existing
            entry = CacheEntry(key=key, backend_id=backend_id, source=source, output=output, fetched_at=fetched_at)
            if self.path is not None:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with open(self.path, "a", encoding="utf-8") as f:
                    f.write(json.dumps(entry.to_dict(), ensure_ascii=False) + "\n")
            self._entries[key] = entry
            return entry

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: str) -> bool:
        return key in self._entries
