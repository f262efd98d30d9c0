import json

import pytest

from conftest import write_lexicon
from tgbi.corpus import generate_corpus
from tgbi.errors import FileUnreadable, FormatError
from tgbi.lexicon import (
    Category,
    ExclusionFlag,
    LexiconEntry,
    Polarity,
    Slot,
    demo_lexicon_path,
    load_lexicon,
    validate_entry,
    write_rejections,
)


def entry(**overrides) -> LexiconEntry:
    fields = dict(
        id="sangnyang",
        surface_hangul="상냥",
        category=Category.SENTIMENT,
        polarity=Polarity.POSITIVE,
        slot=Slot.PREDICATE,
    )
    fields.update(overrides)
    return LexiconEntry(**fields)


def test_demo_lexicon_loads_twenty_entries():
    result = load_lexicon(demo_lexicon_path())
    assert len(result.lexicon) == 20
    assert result.parsed_rows == 22
    assert result.lexicon.counts == {Polarity.POSITIVE: 6, Polarity.NEGATIVE: 6, Polarity.NEUTRAL: 8}
    assert [e.id for e in result.lexicon.entries] == sorted(e.id for e in result.lexicon.entries)
    assert result.warnings == ()


def test_demo_lexicon_rejects_flagged_rows():
    result = load_lexicon(demo_lexicon_path())
    assert [(r.line, r.id, r.violations) for r in result.rejections] == [
        (14, "yeppu", ("ExcludedCategory(Appearance)",)),
        (23, "palleylino", ("ExcludedCategory(GenderSpecific)",)),
    ]
    assert result.lexicon.get("yeppu") is None
    assert result.lexicon.get("uysa").surface_hangul == "의사"


@pytest.mark.parametrize(
    "overrides, expected",
    [
        ({}, []),
        ({"id": "Sang_nyang"}, ["InvalidId"]),
        ({"surface_hangul": "  "}, ["EmptySurface"]),
        ({"surface_hangul": "abc"}, ["NoHangulSyllable"]),
        (
            {"surface_hangul": "AI엔지니어2", "category": Category.OCCUPATION, "polarity": Polarity.NEUTRAL, "slot": Slot.NOUN_PHRASE},
            ["SurfaceMustEndInHangul"],
        ),
        (
            {"surface_hangul": "AI엔지니어", "category": Category.OCCUPATION, "polarity": Polarity.NEUTRAL, "slot": Slot.NOUN_PHRASE},
            [],
        ),
        ({"polarity": Polarity.NEUTRAL}, ["SentimentMustBePolar"]),
        (
            {"category": Category.OCCUPATION, "polarity": Polarity.POSITIVE},
            ["OccupationMustBeNeutral", "OccupationMustBeNounPhrase"],
        ),
        (
            {"exclusion_flags": frozenset({ExclusionFlag.RICHNESS, ExclusionFlag.APPEARANCE})},
            ["ExcludedCategory(Appearance)", "ExcludedCategory(Richness)"],
        ),
    ],
)
def test_validate_entry(overrides, expected):
    assert validate_entry(entry(**overrides)) == expected


def test_duplicates_are_rejected_and_first_row_wins(tmp_path):
    path = write_lexicon(
        tmp_path / "lex.tsv",
        [
            "sangnyang\t상냥\tSentiment\tPositive\tPredicate\t",
            "sangnyang\t친절\tSentiment\tPositive\tPredicate\t",
            "chincel\t상냥\tSentiment\tPositive\tPredicate\t",
        ],
    )
    result = load_lexicon(path)
    assert [e.id for e in result.lexicon.entries] == ["sangnyang"]
    assert [(r.line, r.violations) for r in result.rejections] == [
        (3, ("DuplicateId",)),
        (4, ("DuplicateSurface",)),
    ]


def test_surface_shared_across_categories_is_a_warning(tmp_path):
    path = write_lexicon(
        tmp_path / "lex.tsv",
        [
            "cenmwunka\t전문가\tSentiment\tPositive\tNounPhrase\t",
            "cenmwunka-job\t전문가\tOccupation\tNeutral\tNounPhrase\t",
        ],
    )
    result = load_lexicon(path)
    assert len(result.lexicon) == 2
    assert result.rejections == ()
    assert [(w.id, w.violations, w.severity) for w in result.warnings] == [
        ("cenmwunka-job", ("CrossCategorySurface(cenmwunka)",), "warning"),
    ]


def test_unknown_enum_values_are_rejections(tmp_path):
    path = write_lexicon(
        tmp_path / "lex.tsv",
        [
            "sangnyang\t상냥\tFeeling\tPositive\tPredicate\t",
            "chincel\t친절\tSentiment\tPositive\tPredicate\tUgly",
        ],
    )
    result = load_lexicon(path)
    assert len(result.lexicon) == 0
    assert result.rejections[0].violations == ("UnknownValue(category=Feeling)",)
    assert result.rejections[1].violations == ("UnknownValue(exclusion_flags=Ugly)",)


def test_bad_header_is_a_format_error(tmp_path):
    path = tmp_path / "lex.tsv"
    path.write_text("id\tsurface\n", encoding="utf-8")
    with pytest.raises(FormatError) as excinfo:
        load_lexicon(path)
    assert excinfo.value.line == 1


def test_short_row_is_a_format_error(tmp_path):
    path = write_lexicon(tmp_path / "lex.tsv", ["sangnyang\t상냥\tSentiment"])
    with pytest.raises(FormatError) as excinfo:
        load_lexicon(path)
    assert excinfo.value.line == 2


def test_unreadable_files(tmp_path):
    with pytest.raises(FileUnreadable):
        load_lexicon(tmp_path / "missing.tsv")
    latin1 = tmp_path / "latin1.tsv"
    latin1.write_bytes(b"id\tsurface_hangul\n\xe9\n")
    with pytest.raises(FileUnreadable):
        load_lexicon(latin1)


def test_jsonl_matches_tsv(tmp_path):
    tsv = load_lexicon(demo_lexicon_path()).lexicon
    path = tmp_path / "lex.jsonl"
    path.write_text("".join(json.dumps(e.to_dict(), ensure_ascii=False) + "\n" for e in tsv.entries), encoding="utf-8")
    jsonl = load_lexicon(path, "jsonl").lexicon
    assert jsonl.entries == tsv.entries


def test_jsonl_missing_field(tmp_path):
    path = tmp_path / "lex.jsonl"
    path.write_text('{"id": "sangnyang"}\n', encoding="utf-8")
    with pytest.raises(FormatError, match="missing fields"):
        load_lexicon(path, "jsonl")


JSONL_ROW = {
    "id": "sangnyang",
    "surface_hangul": "상냥",
    "category": "Sentiment",
    "polarity": "Positive",
    "slot": "Predicate",
    "exclusion_flags": [],
}


@pytest.mark.parametrize(
    "overrides",
    [{"id": 7}, {"surface_hangul": 42}, {"category": None}, {"exclusion_flags": [1]}, {"exclusion_flags": "Appearance"}],
)
def test_jsonl_non_string_fields_are_format_errors(tmp_path, overrides):
    path = tmp_path / "lex.jsonl"
    rows = [JSONL_ROW, {**JSONL_ROW, "id": "chincel", "surface_hangul": "친절", **overrides}]
    path.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows), encoding="utf-8")
    with pytest.raises(FormatError) as excinfo:
        load_lexicon(path, "jsonl")
    assert excinfo.value.line == 2


def test_noun_phrase_ending_in_a_digit_is_rejected_at_load(tmp_path):
    path = write_lexicon(
        tmp_path / "lex.tsv",
        [
            "uysa\t의사\tOccupation\tNeutral\tNounPhrase\t",
            "ai-engineer\tAI엔지니어2\tOccupation\tNeutral\tNounPhrase\t",
        ],
    )
    result = load_lexicon(path)
    assert [e.id for e in result.lexicon.entries] == ["uysa"]
    assert [(r.line, r.violations) for r in result.rejections] == [(3, ("SurfaceMustEndInHangul",))]
    assert len(generate_corpus(result.lexicon)) == 4


def test_crlf_parses_like_lf(tmp_path):
    lf = demo_lexicon_path().read_text(encoding="utf-8")
    path = tmp_path / "crlf.tsv"
    path.write_bytes(lf.replace("\n", "\r\n").encode("utf-8"))
    assert load_lexicon(path).lexicon.entries == load_lexicon(demo_lexicon_path()).lexicon.entries


def test_write_rejections(tmp_path):
    result = load_lexicon(demo_lexicon_path())
    path = write_rejections(result.rejections, tmp_path / "rejections.jsonl")
    rows = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
    assert rows[0] == {"line": 14, "id": "yeppu", "violations": ["ExcludedCategory(Appearance)"], "severity": "error"}
    assert len(rows) == 2
