"""Exception hierarchy for tgbi."""

from __future__ import annotations


class TgbiError(Exception):
    """Base class for all tgbi errors."""


# Input files


class FileUnreadable(TgbiError, ValueError):
    """A file is missing or is not valid UTF-8."""

    def __init__(self, path: object, reason: str) -> None:
        self.path = path
        self.reason = reason
        super().__init__(f"Cannot read {path}: {reason}")


class FormatError(TgbiError, ValueError):
    """A row is malformed beyond skipping."""

    def __init__(self, line: int, reason: str) -> None:
        self.line = line
        self.reason = reason
        super().__init__(f"Line {line}: {reason}")


class ConfigError(TgbiError, ValueError):
    """A run or backend configuration file is invalid."""


# Lexicon and corpus


class InvalidEntry(TgbiError, ValueError):
    """A lexicon entry with exclusion flags was asked to render."""

    def __init__(self, entry_id: str, violations: list[str]) -> None:
        self.entry_id = entry_id
        self.violations = violations
        super().__init__(f"Entry {entry_id!r} is not includable: {', '.join(violations)}")


class EmptyLexicon(TgbiError, ValueError):
    """Corpus generation was asked to expand an empty lexicon."""


class NotHangulSyllable(TgbiError, ValueError):
    """A character outside the precomposed Hangul syllable block."""

    def __init__(self, char: str) -> None:
        self.char = char
        super().__init__(f"Not a precomposed Hangul syllable: {char!r}")


# Classifier


class EmptyInput(TgbiError, ValueError):
    """The classifier got an empty translation."""


class WordlistError(TgbiError, ValueError):
    """Gender wordlists break their invariants."""


# Gateway


class BackendError(TgbiError):
    """An error attributed to one translation backend."""

    def __init__(self, backend_id: str, message: str) -> None:
        self.backend_id = backend_id
        super().__init__(f"[{backend_id}] {message}")


class BackendUnreachable(BackendError):
    """No request to the backend succeeded."""


class BackendConfigError(BackendError, ValueError):
    """A backend descriptor cannot be turned into a translator."""


class RateLimitConfigInvalid(BackendError, ValueError):
    """rate_limit or max_parallel is not positive."""


class FixtureMissingSentences(BackendError):
    """A fixture file lacks outputs for some corpus sentences."""

    def __init__(self, backend_id: str, sentence_ids: list[str]) -> None:
        self.sentence_ids = sentence_ids
        super().__init__(
            backend_id,
            f"fixture is missing {len(sentence_ids)} sentences: {', '.join(sentence_ids[:10])}"
            + (" ..." if len(sentence_ids) > 10 else ""),
        )


class DuplicateSentenceId(TgbiError, ValueError):
    """A fixture file lists the same sentence twice."""

    def __init__(self, sentence_id: str, line: int) -> None:
        self.sentence_id = sentence_id
        self.line = line
        super().__init__(f"Line {line}: duplicate sentence id {sentence_id!r}")


# Metrics


class EmptySubset(TgbiError, ValueError):
    """A subset has no labels to score."""

    def __init__(self, name: str = "") -> None:
        self.name = name
        super().__init__(f"Subset {name!r} is empty" if name else "Subset is empty")


class MissingSubset(TgbiError, ValueError):
    """One of the seven subsets is absent."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Subset {name!r} is missing")


class UnknownSubset(TgbiError, ValueError):
    """A subset name outside the seven, or a duplicated one."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Unexpected or duplicated subset {name!r}")


class InvariantViolation(TgbiError, ValueError):
    """Portions do not lie on the probability simplex."""


# Simlab


class PolicyError(TgbiError, ValueError):
    """A synthetic policy is malformed."""
