"""Fixture backend - replays outputs recorded in a TSV file."""

from __future__ import annotations

from pathlib import Path

from tgbi.corpus import EecSentence
from tgbi.errors import BackendConfigError, DuplicateSentenceId, FileUnreadable, FixtureMissingSentences, FormatError
from tgbi.translators.base import BackendDescriptor, BaseTranslator


def load_fixture(path: Path) -> dict[str, str]:
    """
    Load a fixture file of `sentence_id<TAB>english_output` lines.

    CRLF and LF line endings parse identically; blank lines are skipped.
    """
    try:
        text = path.read_bytes().decode("utf-8")
    except FileNotFoundError as e:
        raise FileUnreadable(path, "no such file") from e
    except UnicodeDecodeError as e:
        raise FileUnreadable(path, "not valid UTF-8") from e

    fixture: dict[str, str] = {}
    for lineno, line in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) != 2 or not cells[0].strip() or not cells[1].strip():
            raise FormatError(lineno, "expected sentence_id<TAB>output")
        sentence_id, output = cells[0].strip(), cells[1].strip()
        if sentence_id in fixture:
            raise DuplicateSentenceId(sentence_id, lineno)
        fixture[sentence_id] = output
    return fixture


class FixtureTranslator(BaseTranslator):
    """Looks outputs up by sentence id."""

    def __init__(self, descriptor: BackendDescriptor) -> None:
        super().__init__(descriptor)
        path = descriptor.endpoint_config.get("path")
        if not path:
            raise BackendConfigError(descriptor.backend_id, "FixtureFile backends need endpoint_config.path")
        self.fixture = load_fixture(descriptor.resolve_path(path))

    def prepare(self, sentences: list[EecSentence]) -> None:
        missing = [s.sentence_id for s in sentences if s.sentence_id not in self.fixture]
        if missing:
            raise FixtureMissingSentences(self.backend_id, missing)

    async def translate(self, sentence: EecSentence, source: str) -> str:
        return self.fixture[sentence.sentence_id]
