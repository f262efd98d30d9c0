"""Published evaluation of three commercial KR-EN translators, and a consistency check over it."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from tgbi.corpus import SUBSET_NAMES
from tgbi.metrics import (
    PUBLISHED_AVERAGE_TOLERANCE,
    PUBLISHED_TOLERANCE,
    PortionTriple,
    SubsetScore,
    compute_tgbi,
    subset_score,
)

# Subset sizes of the full corpus (124 positive, 200 negative, 735 occupation entries)
PUBLISHED_SUBSET_SIZES: dict[str, int] = {
    "informal": 2118,
    "formal": 2118,
    "impolite": 2118,
    "polite": 2118,
    "negative": 800,
    "positive": 496,
    "occupation": 2940,
}

# backend -> subset -> (P_s, p_w, p_n), as printed to four places
PUBLISHED_TABLE: dict[str, dict[str, tuple[float, float, float]]] = {
    "GT": {
        "informal": (0.4018, 0.2025, 0.0000),
        "formal": (0.0574, 0.0000, 0.0033),
        "impolite": (0.3115, 0.1062, 0.0023),
        "polite": (0.2964, 0.0963, 0.0009),
        "negative": (0.3477, 0.1362, 0.0037),
        "positive": (0.4281, 0.2358, 0.0040),
        "occupation": (0.2547, 0.0690, 0.0006),
    },
    "NP": {
        "informal": (0.3936, 0.1916, 0.0000),
        "formal": (0.0485, 0.0014, 0.0009),
        "impolite": (0.3582, 0.1506, 0.0004),
        "polite": (0.2724, 0.0807, 0.0000),
        "negative": (0.1870, 0.0350, 0.0012),
        "positive": (0.2691, 0.0786, 0.0000),
        "occupation": (0.2209, 0.0496, 0.0017),
    },
    "KT": {
        "informal": (0.1750, 0.0316, 0.0000),
        "formal": (0.0217, 0.0000, 0.0004),
        "impolite": (0.1257, 0.0155, 0.0004),
        "polite": (0.1256, 0.0160, 0.0000),
        "negative": (0.1311, 0.0175, 0.0000),
        "positive": (0.1259, 0.0161, 0.0000),
        "occupation": (0.1241, 0.0153, 0.0003),
    },
}

PUBLISHED_AVERAGES: dict[str, float] = {"GT": 0.2992, "NP": 0.2499, "KT": 0.1184}

# Half a unit in the fourth decimal place
PRINT_ROUNDING = 5e-5


@dataclass(frozen=True)
class TripleCheck:
    backend_id: str
    subset_name: str
    published: float
    recomputed: float       # straight from the printed portions
    low: float              # range over portions consistent with the printed digits
    high: float

    @property
    def gap(self) -> float:
        """Distance from the published score to the attainable range."""
        if self.published < self.low:
            return self.low - self.published
        if self.published > self.high:
            return self.published - self.high
        return 0.0

    @property
    def ok(self) -> bool:
        return self.gap <= PUBLISHED_TOLERANCE


@dataclass(frozen=True)
class AverageCheck:
    backend_id: str
    published: float
    recomputed: float

    @property
    def ok(self) -> bool:
        return abs(self.published - self.recomputed) <= PUBLISHED_AVERAGE_TOLERANCE


@dataclass
class ConsistencyReport:
    triples: list[TripleCheck] = field(default_factory=list)
    averages: list[AverageCheck] = field(default_factory=list)

    @property
    def violations(self) -> list[str]:
        problems = [
            f"{t.backend_id} {t.subset_name}: published {t.published:.4f}, "
            f"attainable [{t.low:.5f}, {t.high:.5f}] (gap {t.gap:.5f})"
            for t in self.triples
            if not t.ok
        ]
        problems += [
            f"{a.backend_id} average: published {a.published:.4f}, recomputed {a.recomputed:.5f}"
            for a in self.averages
            if not a.ok
        ]
        return problems

    @property
    def ok(self) -> bool:
        return not self.violations


def _score_range(p_w: float, p_n: float) -> tuple[float, float]:
    """
    Min and max of P_s over the rounding box around printed (p_w, p_n).

    W = p_w(1 - p_w - p_n) + p_n is increasing in p_n and concave in p_w, so
    the extremes sit at box corners or at the even-split point p_w = (1 - p_n)/2.
    """
    ws = [max(0.0, p_w - PRINT_ROUNDING), min(1.0, p_w + PRINT_ROUNDING)]
    ns = [max(0.0, p_n - PRINT_ROUNDING), min(1.0, p_n + PRINT_ROUNDING)]
    candidates = list(product(ws, ns))
    for n in ns:
        even = (1.0 - n) / 2
        if ws[0] <= even <= ws[1]:
            candidates.append((even, n))
    values = [
        math.sqrt(max(0.0, w * (1.0 - w - n) + n))
        for w, n in candidates
        if w + n <= 1.0
    ]
    return min(values), max(values)


def check_published(
    table: dict[str, dict[str, tuple[float, float, float]]] | None = None,
    averages: dict[str, float] | None = None,
) -> ConsistencyReport:
    """
    Recompute every published P_s from its printed portions, and every
    published average from the printed subset scores.
    """
    table = table if table is not None else PUBLISHED_TABLE
    averages = averages if averages is not None else PUBLISHED_AVERAGES
    report = ConsistencyReport()

    for backend_id, rows in table.items():
        for name in SUBSET_NAMES:
            published, p_w, p_n = rows[name]
            low, high = _score_range(p_w, p_n)
            report.triples.append(
                TripleCheck(
                    backend_id=backend_id,
                    subset_name=name,
                    published=published,
                    recomputed=subset_score(PortionTriple.from_published(p_w, p_n)),
                    low=low,
                    high=high,
                )
            )
        if backend_id in averages:
            report.averages.append(
                AverageCheck(
                    backend_id=backend_id,
                    published=averages[backend_id],
                    recomputed=compute_tgbi(published_scores(backend_id, table)).tgbi,
                )
            )
    return report


def published_scores(
    backend_id: str,
    table: dict[str, dict[str, tuple[float, float, float]]] | None = None,
) -> list[SubsetScore]:
    """Published rows as SubsetScores carrying the printed score, not a recomputed one."""
    rows = (table if table is not None else PUBLISHED_TABLE)[backend_id]
    return [
        SubsetScore(name, PortionTriple.from_published(p_w, p_n), score)
        for name, (score, p_w, p_n) in ((name, rows[name]) for name in SUBSET_NAMES)
    ]
