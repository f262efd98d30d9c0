"""Simlab - synthetic translators with controlled gender decisions."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

from tgbi.classifier import Gender, GenderWordlists, classify, default_wordlists, tokenize
from tgbi.corpus import PARTITIONS, SUBSET_NAMES, EecCorpus, EecSentence
from tgbi.errors import PolicyError
from tgbi.metrics import EvaluationReport, SubsetScore, compute_tgbi, score_labels

DEFAULT_SCOPE = "default"

OUTPUT_TEMPLATES: dict[Gender, str] = {
    Gender.FEMALE: "She is {gloss}.",
    Gender.MALE: "He is {gloss}.",
    Gender.NEUTRAL: "The person is {gloss}.",
}


class PolicyKind(str, Enum):
    FIXED_PORTIONS = "FixedPortions"
    PER_LEXICON_DETERMINISTIC = "PerLexiconDeterministic"
    PER_SUBSET_PORTIONS = "PerSubsetPortions"


@dataclass(frozen=True)
class SyntheticPolicy:
    """
    Target (p_w, p_m, p_n) per scope.

    Scopes are subset names or "default". A sentence uses the first scope
    found among its content class, formality, politeness, then "default".
    FixedPortions only reads "default".
    """

    policy_kind: PolicyKind
    parameters: dict[str, tuple[float, float, float]]
    seed: int = 0

    def __post_init__(self) -> None:
        for scope, triple in self.parameters.items():
            if scope != DEFAULT_SCOPE and scope not in SUBSET_NAMES:
                raise PolicyError(f"Unknown scope {scope!r}")
            if len(triple) != 3 or any(not 0 <= p <= 1 for p in triple):
                raise PolicyError(f"Scope {scope!r}: portions must be three values in [0, 1]")
            if abs(math.fsum(triple) - 1) > 1e-9:
                raise PolicyError(f"Scope {scope!r}: portions sum to {math.fsum(triple)}, expected 1")
        if self.policy_kind is PolicyKind.FIXED_PORTIONS and DEFAULT_SCOPE not in self.parameters:
            raise PolicyError("FixedPortions policies need a 'default' scope")

    def target_for(self, sentence: EecSentence) -> tuple[float, float, float]:
        if self.policy_kind is PolicyKind.FIXED_PORTIONS:
            return self.parameters[DEFAULT_SCOPE]
        for scope in (sentence.content_class.value, sentence.formality.value, sentence.politeness.value):
            if scope in self.parameters:
                return self.parameters[scope]
        if DEFAULT_SCOPE in self.parameters:
            return self.parameters[DEFAULT_SCOPE]
        raise PolicyError(f"No scope covers sentence {sentence.sentence_id}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "policy_kind": self.policy_kind.value,
            "seed": self.seed,
            "parameters": {scope: list(t) for scope, t in self.parameters.items()},
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SyntheticPolicy":
        try:
            return cls(
                policy_kind=PolicyKind(data["policy_kind"]),
                parameters={scope: tuple(t) for scope, t in data["parameters"].items()},
                seed=int(data.get("seed", 0)),
            )
        except (KeyError, ValueError, TypeError) as e:
            raise PolicyError(f"Malformed policy: {e}") from e


def load_policy(path: Path) -> SyntheticPolicy:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise PolicyError(f"Cannot load policy {path}: {e}") from e
    return SyntheticPolicy.from_dict(data)


def builtin_policy_path(name: str) -> Path:
    return Path(str(resources.files("tgbi") / "data" / f"policy_{name}.json"))


def neutral_policy() -> SyntheticPolicy:
    """Every sentence rendered with "the person"."""
    return SyntheticPolicy(PolicyKind.FIXED_PORTIONS, {DEFAULT_SCOPE: (0.0, 0.0, 1.0)})


def demonstration_policy(seed: int = 0) -> SyntheticPolicy:
    """
    A deterministic system tied to lexicon content: positive entries always
    female, negative always male, occupations neutral. Style subsets see a
    balanced mix while the content subsets are fully one-sided.
    """
    return SyntheticPolicy(
        PolicyKind.PER_LEXICON_DETERMINISTIC,
        {
            "positive": (1.0, 0.0, 0.0),
            "negative": (0.0, 1.0, 0.0),
            "occupation": (0.0, 0.0, 1.0),
        },
        seed=seed,
    )


def _uniform(seed: int, key: str) -> float:
    """Deterministic draw in [0, 1) from (seed, key)."""
    digest = hashlib.sha256(f"{seed}:{key}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") / 2**64


def synth_gender(sentence: EecSentence, policy: SyntheticPolicy) -> Gender:
    p_w, p_m, _ = policy.target_for(sentence)
    # One draw per entry makes every sentence of an entry agree
    key = sentence.entry_ref if policy.policy_kind is PolicyKind.PER_LEXICON_DETERMINISTIC else sentence.sentence_id
    u = _uniform(policy.seed, key)
    if u < p_w:
        return Gender.FEMALE
    if u < p_w + p_m:
        return Gender.MALE
    return Gender.NEUTRAL


def synth_gloss(sentence: EecSentence) -> str:
    """The lexicon id with hyphens dropped, so syllables like "man" never tokenize alone."""
    return sentence.entry_ref.replace("-", "")


def check_glosses(sentences: Iterable[EecSentence], wordlists: GenderWordlists) -> None:
    """Raise PolicyError if any gloss would itself read as a gendered token."""
    gendered = wordlists.female_tokens | wordlists.male_tokens
    clashes = sorted({
        s.entry_ref for s in sentences if any(t.token in gendered for t in tokenize(synth_gloss(s)))
    })
    if clashes:
        raise PolicyError(f"Lexicon ids read as gendered words in synthetic output: {', '.join(clashes)}")


def synth_translate(sentence: EecSentence, policy: SyntheticPolicy) -> str:
    """English output whose subject carries the policy's gender."""
    return OUTPUT_TEMPLATES[synth_gender(sentence, policy)].format(gloss=synth_gloss(sentence))


@dataclass
class SubsetDemo:
    """Subset scores of one synthetic policy, viewed partition by partition."""

    report: EvaluationReport
    corpus_score: SubsetScore
    partitions: dict[str, tuple[SubsetScore, ...]] = field(default_factory=dict)


def run_subset_demo(
    corpus: EecCorpus,
    policy: SyntheticPolicy,
    wordlists: GenderWordlists | None = None,
) -> SubsetDemo:
    """
    Translate the corpus with a synthetic policy and score every subset.

    Labels come from the classifier, not from the policy, so the demo also
    exercises the output templates against the wordlists.
    """
    wordlists = wordlists or default_wordlists()
    check_glosses(corpus.sentences, wordlists)
    labels = {s.sentence_id: classify(synth_translate(s, policy), wordlists) for s in corpus.sentences}

    scores = [
        score_labels(name, (labels[sid] for sid in corpus.subset_index[name]))
        for name in SUBSET_NAMES
    ]
    report = compute_tgbi(scores, backend_id=f"simlab-{policy.policy_kind.value}")
    by_name = {s.subset_name: s for s in report.subset_scores}
    return SubsetDemo(
        report=report,
        corpus_score=score_labels("corpus", labels.values()),
        partitions={partition: tuple(by_name[n] for n in names) for partition, names in PARTITIONS.items()},
    )
