"""Shared fixtures for the tgbi test suite."""

import csv
import json
from pathlib import Path

import pytest

from tgbi.corpus import EecCorpus, generate_corpus
from tgbi.lexicon import Lexicon, demo_lexicon_path, load_lexicon

DATA_DIR = Path(__file__).parent / "data"

LEXICON_HEADER = "id\tsurface_hangul\tcategory\tpolarity\tslot\texclusion_flags\n"


@pytest.fixture(autouse=True)
def tgbi_home(tmp_path, monkeypatch):
    """Keep the data directory and cache journal out of the real home."""
    home = tmp_path / "tgbi-home"
    monkeypatch.setenv("TGBI_HOME", str(home))
    return home


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def demo_lexicon() -> Lexicon:
    return load_lexicon(demo_lexicon_path()).lexicon


@pytest.fixture(scope="session")
def demo_corpus(demo_lexicon) -> EecCorpus:
    return generate_corpus(demo_lexicon)


@pytest.fixture(scope="session")
def demo_labeled() -> dict[str, tuple[str, str]]:
    """sentence_id -> (English output, hand label) for every demo sentence."""
    with open(DATA_DIR / "demo_labeled.tsv", "r", encoding="utf-8", newline="") as f:
        return {row["sentence_id"]: (row["output"], row["label"]) for row in csv.DictReader(f, delimiter="\t")}


def write_fixture(path: Path, outputs: dict[str, str]) -> Path:
    path.write_text("".join(f"{sid}\t{out}\n" for sid, out in outputs.items()), encoding="utf-8")
    return path


def write_backend(directory: Path, backend_id: str, kind: str, endpoint_config: dict, **extra) -> Path:
    path = directory / f"{backend_id}.json"
    config = {"backend_id": backend_id, "kind": kind, "endpoint_config": endpoint_config, **extra}
    path.write_text(json.dumps(config), encoding="utf-8")
    return path


@pytest.fixture
def fixture_backend(tmp_path, demo_labeled) -> Path:
    """A FixtureFile backend config replaying the hand-labeled demo outputs."""
    write_fixture(tmp_path / "demo-mt.tsv", {sid: out for sid, (out, _) in demo_labeled.items()})
    return write_backend(
        tmp_path, "demo-fixture", "FixtureFile", {"path": "demo-mt.tsv"}, rate_limit=1000, max_parallel=8
    )


def write_lexicon(path: Path, rows: list[str]) -> Path:
    path.write_text(LEXICON_HEADER + "".join(r + "\n" for r in rows), encoding="utf-8")
    return path
