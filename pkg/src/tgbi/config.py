"""Configuration management for tgbi."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

from tgbi.errors import ConfigError


def get_tgbi_dir() -> Path:
    """Get the tgbi data directory (~/.tgbi/, or $TGBI_HOME)."""
    override = os.getenv("TGBI_HOME")
    if override:
        return Path(override)
    return Path.home() / ".tgbi"


def get_env_path() -> Path:
    """Get the path to the .env file holding backend secrets."""
    return get_tgbi_dir() / ".env"


def get_cache_path() -> Path:
    """Get the default translation cache journal."""
    return get_tgbi_dir() / "cache" / "translations.jsonl"


def get_output_dir() -> Path:
    """Get the default directory for run artifacts."""
    return get_tgbi_dir() / "runs"


def ensure_directories() -> None:
    """Create all necessary directories if they don't exist."""
    dirs = [
        get_tgbi_dir(),
        get_cache_path().parent,
        get_output_dir(),
    ]
    for d in dirs:
        d.mkdir(parents=True, exist_ok=True)


def load_env() -> None:
    """Load environment variables from ~/.tgbi/.env and ./.env."""
    env_path = get_env_path()
    if env_path.exists():
        load_dotenv(env_path)
    load_dotenv()


def read_json(path: Path) -> Any:
    """Read a JSON config file, turning I/O and syntax problems into ConfigError."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"Config file not found: {path}") from e
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ConfigError(f"Config file {path} is not valid JSON: {e}") from e


@dataclass
class RunConfig:
    """Everything one `tgbi eval` run needs."""

    lexicon_path: Path
    backend_paths: list[Path]
    output_dir: Path
    lexicon_format: str = "tsv"
    paper_exact_wordlists: bool = False
    allow_partial: bool = False
    append_period: bool = False
    wordlist_override_path: Path | None = None
    cache_path: Path | None = None
    run_id: str | None = None
    retry_delay: float = 1.0
    # Filled by validate(); descriptors are loaded from backend_paths
    backends: list[Any] = field(default_factory=list)

    def validate(self) -> None:
        """Check invariants and load backend descriptors."""
        # translators.base imports this module
        from tgbi.translators.base import load_backend

        if not self.backend_paths and not self.backends:
            raise ConfigError("At least one backend is required.")
        if self.lexicon_format not in ("tsv", "jsonl"):
            raise ConfigError(f"Unknown lexicon format: {self.lexicon_format}")
        if not self.backends:
            self.backends = [load_backend(p) for p in self.backend_paths]
        seen: set[str] = set()
        for backend in self.backends:
            if backend.backend_id in seen:
                raise ConfigError(f"Duplicate backend id: {backend.backend_id}")
            seen.add(backend.backend_id)
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ConfigError(f"Output directory {self.output_dir} is not writable: {e}") from e
        if not os.access(self.output_dir, os.W_OK):
            raise ConfigError(f"Output directory {self.output_dir} is not writable")


def load_run_config(path: Path) -> RunConfig:
    """
    Load a RunConfig from a JSON file.

    Relative paths inside the file are resolved against the file's directory.
    """
    data = read_json(path)
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a JSON object")
    base = path.parent

    def resolve(value: str) -> Path:
        p = Path(value)
        return p if p.is_absolute() else base / p

    try:
        flags = data.get("flags", {})
        override = data.get("wordlist_override_path")
        cache = data.get("cache_path")
        return RunConfig(
            lexicon_path=resolve(data["lexicon_path"]),
            backend_paths=[resolve(p) for p in data["backends"]],
            output_dir=resolve(data.get("output_dir", str(get_output_dir()))),
            lexicon_format=data.get("lexicon_format", "tsv"),
            paper_exact_wordlists=bool(flags.get("paper_exact_wordlists", False)),
            allow_partial=bool(flags.get("allow_partial", False)),
            append_period=bool(flags.get("append_period", False)),
            wordlist_override_path=resolve(override) if override else None,
            cache_path=resolve(cache) if cache else None,
            run_id=data.get("run_id"),
        )
    except KeyError as e:
        raise ConfigError(f"{path}: missing required field {e}") from e
