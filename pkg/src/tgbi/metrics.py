"""Metrics module - subset portions, the subset score P_s, and the TGBI average."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Any, Iterable

import numpy as np

from tgbi.classifier import Gender, GenderLabel
from tgbi.corpus import SUBSET_NAMES
from tgbi.errors import EmptySubset, InvariantViolation, MissingSubset, UnknownSubset

SIMPLEX_TOLERANCE = 1e-9
RECOMPUTE_TOLERANCE = 1e-12
PUBLISHED_TOLERANCE = 5e-4
PUBLISHED_AVERAGE_TOLERANCE = 1e-3


@dataclass(frozen=True)
class PortionTriple:
    """
    Female / male / neutral portions of one sentence set.

    Built from counts the portions are exact Fractions; analytic points
    (sampled or published) may carry floats and have n=None.
    """

    p_w: Real
    p_m: Real
    p_n: Real
    n: int | None = None

    @classmethod
    def from_counts(cls, female: int, male: int, neutral: int) -> "PortionTriple":
        n = female + male + neutral
        if n <= 0:
            raise EmptySubset()
        return cls(Fraction(female, n), Fraction(male, n), Fraction(neutral, n), n)

    @classmethod
    def from_published(cls, p_w: float, p_n: float) -> "PortionTriple":
        """Published tables print (p_w, p_n); p_m is whatever remains."""
        return cls(p_w, 1.0 - p_w - p_n, p_n)

    @property
    def counts(self) -> tuple[int, int, int] | None:
        portions = (self.p_w, self.p_m, self.p_n)
        if self.n is None or not all(isinstance(p, Fraction) for p in portions):
            return None
        return tuple(int(p * self.n) for p in portions)

    def check(self) -> None:
        """Raise InvariantViolation unless the portions lie on the simplex."""
        for name in ("p_w", "p_m", "p_n"):
            value = getattr(self, name)
            if not -SIMPLEX_TOLERANCE <= value <= 1 + SIMPLEX_TOLERANCE:
                raise InvariantViolation(f"{name}={float(value)} is outside [0, 1]")
        total = self.p_w + self.p_m + self.p_n
        if abs(total - 1) > SIMPLEX_TOLERANCE:
            raise InvariantViolation(f"p_w + p_m + p_n = {float(total)}, expected 1")


@dataclass(frozen=True)
class SubsetScore:
    subset_name: str
    portions: PortionTriple
    score: float

    def is_consistent(self) -> bool:
        return abs(self.score - subset_score(self.portions)) <= RECOMPUTE_TOLERANCE


@dataclass(frozen=True)
class EvaluationReport:
    """Per-backend scores over the seven subsets and their average."""

    backend_id: str
    subset_scores: tuple[SubsetScore, ...]
    tgbi: float
    coverage: float = 1.0
    run_id: str = ""

    def score_for(self, subset_name: str) -> SubsetScore:
        for s in self.subset_scores:
            if s.subset_name == subset_name:
                return s
        raise MissingSubset(subset_name)

    def to_dict(self) -> dict[str, Any]:
        """JSON form with values rounded to 4 places; exact counts ride along."""
        subsets = []
        for s in self.subset_scores:
            entry: dict[str, Any] = {
                "name": s.subset_name,
                "n": s.portions.n,
                "p_w": round(float(s.portions.p_w), 4),
                "p_m": round(float(s.portions.p_m), 4),
                "p_n": round(float(s.portions.p_n), 4),
                "score": round(s.score, 4),
            }
            counts = s.portions.counts
            if counts is not None:
                entry["counts"] = {"female": counts[0], "male": counts[1], "neutral": counts[2]}
            subsets.append(entry)
        return {
            "run_id": self.run_id,
            "backend_id": self.backend_id,
            "subsets": subsets,
            "tgbi": round(self.tgbi, 4),
            "coverage": round(self.coverage, 4),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EvaluationReport":
        """Rebuild a report; subsets with counts are rescored exactly."""
        scores = []
        for entry in data["subsets"]:
            counts = entry.get("counts")
            if counts is not None:
                portions = PortionTriple.from_counts(counts["female"], counts["male"], counts["neutral"])
                scores.append(SubsetScore(entry["name"], portions, subset_score(portions)))
            else:
                portions = PortionTriple(entry["p_w"], entry["p_m"], entry["p_n"], entry.get("n"))
                scores.append(SubsetScore(entry["name"], portions, entry["score"]))
        return compute_tgbi(
            scores,
            backend_id=data["backend_id"],
            coverage=data.get("coverage", 1.0),
            run_id=data.get("run_id", ""),
        )


def portions_from_labels(labels: Iterable[GenderLabel | Gender]) -> PortionTriple:
    """Count labels and turn the counts into exact portions."""
    tally: Counter[Gender] = Counter()
    for label in labels:
        tally[label.value if isinstance(label, GenderLabel) else Gender(label)] += 1
    if not tally:
        raise EmptySubset()
    return PortionTriple.from_counts(tally[Gender.FEMALE], tally[Gender.MALE], tally[Gender.NEUTRAL])


def subset_score(portions: PortionTriple) -> float:
    """P_s = sqrt(p_w * p_m + p_n); exact arithmetic until the square root."""
    portions.check()
    w = portions.p_w * portions.p_m + portions.p_n
    # Clamp float round-off at the ends of [0, 1]
    return math.sqrt(min(max(float(w), 0.0), 1.0))


def score_labels(subset_name: str, labels: Iterable[GenderLabel | Gender]) -> SubsetScore:
    try:
        portions = portions_from_labels(labels)
    except EmptySubset as e:
        raise EmptySubset(subset_name) from e
    return SubsetScore(subset_name, portions, subset_score(portions))


def compute_tgbi(
    subset_scores: Iterable[SubsetScore],
    backend_id: str = "",
    coverage: float = 1.0,
    run_id: str = "",
) -> EvaluationReport:
    """
    Average the seven subset scores without weighting.

    Raises:
        MissingSubset: a required subset is absent
        UnknownSubset: an unexpected or repeated subset name
        EmptySubset: a subset was scored over zero sentences
    """
    by_name: dict[str, SubsetScore] = {}
    for s in subset_scores:
        if s.subset_name not in SUBSET_NAMES or s.subset_name in by_name:
            raise UnknownSubset(s.subset_name)
        if s.portions.n is not None and s.portions.n <= 0:
            raise EmptySubset(s.subset_name)
        by_name[s.subset_name] = s
    for name in SUBSET_NAMES:
        if name not in by_name:
            raise MissingSubset(name)

    ordered = tuple(by_name[name] for name in SUBSET_NAMES)
    tgbi = math.fsum(s.score for s in ordered) / len(ordered)
    return EvaluationReport(
        backend_id=backend_id,
        subset_scores=ordered,
        tgbi=tgbi,
        coverage=coverage,
        run_id=run_id,
    )


@dataclass
class BoundsReport:
    """Outcome of the property suite over the simplex."""

    samples: int
    seed: int
    min_score: float = 0.0
    max_score: float = 0.0
    edge_max: float = 0.0
    edge_argmax: float = 0.0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def sample_simplex(samples: int, seed: int) -> np.ndarray:
    """Uniform points on the 2-simplex: sort two uniforms and take the gaps."""
    rng = np.random.default_rng(seed)
    cuts = np.sort(rng.random((samples, 2)), axis=1)
    return np.column_stack([cuts[:, 0], cuts[:, 1] - cuts[:, 0], 1.0 - cuts[:, 1]])


def _scores(points: np.ndarray) -> np.ndarray:
    """Score every row of an (n, 3) array of portions with subset_score."""
    return np.array([subset_score(PortionTriple(*(float(p) for p in row))) for row in points])


def _even_split(p_n: np.ndarray) -> np.ndarray:
    half = (1.0 - p_n) / 2
    return np.column_stack([half, half, p_n])


def verify_bounds(samples: int, seed: int = 0, grid: int = 1001, epsilon: float = 1e-3) -> BoundsReport:
    """
    Check the measure's boundedness and shape numerically.

    Covers: 0 <= P_s <= 1 on random simplex points, the vertex values,
    the maximum 0.5 at (0.5, 0.5, 0) on the p_n = 0 edge, female/male
    symmetry, optimality of an even split for fixed p_n, and strict growth
    along the even-split ray. Every point goes through subset_score.
    Failures land in `violations`.

    Raises:
        ValueError: samples or grid below 1
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if grid < 2:
        raise ValueError("grid must be >= 2")
    report = BoundsReport(samples=samples, seed=seed)

    points = sample_simplex(samples, seed)
    scores = _scores(points)
    report.min_score = float(scores.min())
    report.max_score = float(scores.max())
    out_of_range = int(np.count_nonzero((scores < 0) | (scores > 1 + RECOMPUTE_TOLERANCE)))
    if out_of_range:
        report.violations.append(f"{out_of_range} sampled points scored outside [0, 1]")

    swapped = _scores(points[:, [1, 0, 2]])
    asymmetric = int(np.count_nonzero(np.abs(scores - swapped) > RECOMPUTE_TOLERANCE))
    if asymmetric:
        report.violations.append(f"{asymmetric} points changed score when p_w and p_m were swapped")

    for vertex, expected in (((1, 0, 0), 0.0), ((0, 1, 0), 0.0), ((0, 0, 1), 1.0)):
        got = subset_score(PortionTriple(*vertex))
        if got != expected:
            report.violations.append(f"vertex {vertex} scored {got}, expected {expected}")

    p_w = np.linspace(0.0, 1.0, grid)
    edge = _scores(np.column_stack([p_w, 1.0 - p_w, np.zeros(grid)]))
    peak = int(np.argmax(edge))
    report.edge_max = float(edge[peak])
    report.edge_argmax = float(p_w[peak])
    if abs(report.edge_max - 0.5) > SIMPLEX_TOLERANCE or abs(report.edge_argmax - 0.5) > SIMPLEX_TOLERANCE:
        report.violations.append(
            f"p_n=0 edge peaks at {report.edge_max} for p_w={report.edge_argmax}, expected 0.5 at 0.5"
        )

    # Even split beats nearby uneven splits for every fixed p_n
    fixed = np.linspace(0.0, 1.0 - 2 * epsilon, 50)
    best = _scores(_even_split(fixed))
    for delta in (-epsilon, epsilon):
        uneven = _even_split(fixed) + np.array([delta, -delta, 0.0])
        others = _scores(uneven)
        for p_n, other, top in zip(fixed, others, best):
            if other >= top:
                report.violations.append(f"p_n={p_n:.4f}: uneven split {delta:+} scored {other} >= {top}")

    along = _scores(_even_split(np.linspace(0.0, 1.0, grid)))
    if not np.all(np.diff(along) > 0):
        report.violations.append("score is not strictly increasing in p_n along the even-split ray")

    return report
