from dataclasses import replace

import pytest

from tgbi.classifier import Gender, classify, default_wordlists, paper_exact_wordlists
from tgbi.corpus import SUBSET_NAMES, generate_corpus
from tgbi.errors import PolicyError
from tgbi.lexicon import Category, Lexicon, LexiconEntry, Polarity, Slot
from tgbi.metrics import portions_from_labels, score_labels
from tgbi.simlab import (
    PolicyKind,
    SyntheticPolicy,
    builtin_policy_path,
    check_glosses,
    demonstration_policy,
    load_policy,
    neutral_policy,
    run_subset_demo,
    synth_gender,
    synth_translate,
)


def test_neutral_policy_scores_one(demo_corpus):
    demo = run_subset_demo(demo_corpus, neutral_policy())
    assert demo.report.tgbi == 1.0
    assert all(s.score == 1.0 for s in demo.report.subset_scores)
    assert demo.corpus_score.score == 1.0


def test_demonstration_policy(demo_corpus):
    demo = run_subset_demo(demo_corpus, demonstration_policy())
    by_name = {s.subset_name: s for s in demo.report.subset_scores}
    assert by_name["positive"].score == 0.0
    assert by_name["negative"].score == 0.0
    assert by_name["occupation"].score == 1.0

    # Every style subset holds 6 positive, 6 negative and 8 occupation entries
    # twice over: 12 F, 12 M, 16 N out of 40.
    for name in ("informal", "formal", "impolite", "polite"):
        counts = by_name[name].portions.counts
        assert counts == (12, 12, 16)
        assert by_name[name].score == pytest.approx((0.3 * 0.3 + 0.4) ** 0.5, abs=1e-12)
    assert demo.report.tgbi == pytest.approx((4 * 0.7 + 1.0) / 7, abs=1e-12)


def test_demo_matches_counting_oracle(demo_corpus):
    policy = demonstration_policy()
    demo = run_subset_demo(demo_corpus, policy)
    for name in SUBSET_NAMES:
        genders = [synth_gender(s, policy) for s in demo_corpus.subset(name)]
        assert demo.report.score_for(name) == score_labels(name, genders)


def test_partitions_cover_the_corpus(demo_corpus):
    demo = run_subset_demo(demo_corpus, demonstration_policy())
    corpus_n = demo.corpus_score.portions.n
    corpus_counts = demo.corpus_score.portions.counts
    for partition, scores in demo.partitions.items():
        assert sum(s.portions.n for s in scores) == corpus_n, partition
        summed = tuple(sum(s.portions.counts[i] for s in scores) for i in range(3))
        assert summed == corpus_counts, partition


def test_outputs_classify_as_intended(demo_corpus):
    policy = SyntheticPolicy(PolicyKind.PER_SUBSET_PORTIONS, {"default": (0.4, 0.4, 0.2)}, seed=11)
    for sentence in demo_corpus.sentences:
        assert classify(synth_translate(sentence, policy)).value is synth_gender(sentence, policy)


def test_deterministic_per_seed(demo_corpus):
    policy = SyntheticPolicy(PolicyKind.FIXED_PORTIONS, {"default": (0.5, 0.5, 0.0)}, seed=7)
    first = [synth_translate(s, policy) for s in demo_corpus.sentences]
    assert first == [synth_translate(s, policy) for s in demo_corpus.sentences]
    reseeded = SyntheticPolicy(PolicyKind.FIXED_PORTIONS, {"default": (0.5, 0.5, 0.0)}, seed=8)
    assert first != [synth_translate(s, reseeded) for s in demo_corpus.sentences]


def test_per_lexicon_policy_agrees_across_an_entry(demo_corpus):
    policy = SyntheticPolicy(PolicyKind.PER_LEXICON_DETERMINISTIC, {"default": (0.5, 0.5, 0.0)}, seed=3)
    by_entry: dict[str, set[Gender]] = {}
    for sentence in demo_corpus.sentences:
        by_entry.setdefault(sentence.entry_ref, set()).add(synth_gender(sentence, policy))
    assert all(len(genders) == 1 for genders in by_entry.values())


def test_scope_resolution_prefers_content_class(demo_corpus):
    policy = SyntheticPolicy(
        PolicyKind.PER_SUBSET_PORTIONS,
        {"occupation": (0.0, 0.0, 1.0), "informal": (1.0, 0.0, 0.0), "default": (0.0, 1.0, 0.0)},
    )
    sentence = demo_corpus.get("uysa-informal-polite")
    assert policy.target_for(sentence) == (0.0, 0.0, 1.0)
    assert policy.target_for(demo_corpus.get("chincel-informal-polite")) == (1.0, 0.0, 0.0)
    assert policy.target_for(demo_corpus.get("chincel-formal-polite")) == (0.0, 1.0, 0.0)


@pytest.mark.parametrize(
    "kind, parameters",
    [
        (PolicyKind.FIXED_PORTIONS, {"default": (0.5, 0.4, 0.0)}),
        (PolicyKind.FIXED_PORTIONS, {"default": (1.2, -0.2, 0.0)}),
        (PolicyKind.FIXED_PORTIONS, {"positive": (1.0, 0.0, 0.0)}),
        (PolicyKind.PER_SUBSET_PORTIONS, {"everyone": (1.0, 0.0, 0.0)}),
    ],
)
def test_invalid_policies(kind, parameters):
    with pytest.raises(PolicyError):
        SyntheticPolicy(kind, parameters)


def test_uncovered_sentence(demo_corpus):
    policy = SyntheticPolicy(PolicyKind.PER_SUBSET_PORTIONS, {"positive": (1.0, 0.0, 0.0)})
    with pytest.raises(PolicyError):
        policy.target_for(demo_corpus.get("uysa-formal-polite"))


@pytest.mark.parametrize("name", ["neutral", "demonstration", "coinflip"])
def test_builtin_policies_load(name):
    policy = load_policy(builtin_policy_path(name))
    assert SyntheticPolicy.from_dict(policy.to_dict()) == policy


def test_builtin_files_match_constructors():
    assert load_policy(builtin_policy_path("neutral")) == neutral_policy()
    assert load_policy(builtin_policy_path("demonstration")) == demonstration_policy()


def hyphenated_corpus(*extra: LexiconEntry):
    entries = (
        LexiconEntry("man-hwa-ka", "만화가", Category.OCCUPATION, Polarity.NEUTRAL, Slot.NOUN_PHRASE),
        LexiconEntry("him-cha", "힘차", Category.SENTIMENT, Polarity.POSITIVE, Slot.PREDICATE),
        LexiconEntry("he-se", "허세", Category.SENTIMENT, Polarity.NEGATIVE, Slot.PREDICATE),
    ) + extra
    return generate_corpus(Lexicon(entries=entries))


def test_hyphenated_ids_never_read_as_pronouns():
    corpus = hyphenated_corpus()
    sentence = corpus.get("man-hwa-ka-informal-impolite")
    assert synth_translate(sentence, neutral_policy()) == "The person is manhwaka."
    for sentence in corpus.sentences:
        assert classify(synth_translate(sentence, neutral_policy())).value is Gender.NEUTRAL

    demo = run_subset_demo(corpus, neutral_policy())
    assert demo.report.tgbi == 1.0


@pytest.mark.parametrize("wordlists", [default_wordlists(), paper_exact_wordlists()])
def test_gloss_that_is_a_gendered_word_is_refused(wordlists):
    corpus = hyphenated_corpus(LexiconEntry("him", "힘", Category.SENTIMENT, Polarity.POSITIVE, Slot.PREDICATE))
    with pytest.raises(PolicyError, match="him"):
        check_glosses(corpus.sentences, wordlists)
    with pytest.raises(PolicyError):
        run_subset_demo(corpus, neutral_policy(), wordlists)
    check_glosses(hyphenated_corpus().sentences, wordlists)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_fixed_portions_concentrate_over_many_sentences(demo_corpus, seed):
    policy = SyntheticPolicy(PolicyKind.FIXED_PORTIONS, {"default": (0.5, 0.5, 0.0)}, seed=seed)
    base = demo_corpus.sentences[0]
    sentences = [replace(base, sentence_id=f"{base.sentence_id}-{i}") for i in range(10_000)]
    portions = portions_from_labels(synth_gender(s, policy) for s in sentences)
    assert portions.n == 10_000
    assert 0.48 <= portions.p_w <= 0.52
    assert portions.p_n == 0
