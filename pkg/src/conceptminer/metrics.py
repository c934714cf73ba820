"""Per-term metric vectors and the weighted harmonic-mean rank score.

Every metric is normalized into [EPSILON, 1] so the harmonic mean stays
total: a zero-valued metric crushes the combined score without poisoning
it into division by zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

from .model import AUTHORSHIP, Authorship, Corpus, Silo, TermRecord
from .textprep import TermIndex, tokenize

EPSILON = 1e-9

METRIC_NAMES = (
    "tf",
    "df",
    "siloSpread",
    "generality",
    "userFieldRatio",
    "acronymScore",
    "lengthScore",
    "rarity",
)


class InvalidCombination(Exception):
    """Weights are unusable: unknown metric, negative value, or all zero."""


class TermNotInIndex(Exception):
    pass


@dataclass(frozen=True)
class MetricCombination:
    name: str
    weights: dict[str, float] = field(default_factory=dict)

    def cache_key(self) -> str:
        return json.dumps(self.weights, sort_keys=True)


def validate_combination(name: str, weights: dict[str, float]) -> MetricCombination:
    for metric, weight in weights.items():
        if metric not in METRIC_NAMES:
            raise InvalidCombination(f"unknown metric: {metric}")
        if not isinstance(weight, (int, float)) or weight < 0:
            raise InvalidCombination(f"weight for {metric} must be a non-negative number")
    if not any(w > 0 for w in weights.values()):
        raise InvalidCombination("at least one weight must be positive")
    return MetricCombination(name, {m: float(w) for m, w in weights.items()})


def presets() -> list[MetricCombination]:
    """Shipped weight combinations; the starting points for triage."""
    return [
        MetricCombination("balanced", {m: 1.0 for m in METRIC_NAMES}),
        MetricCombination(
            "acronyms & projects", {"acronymScore": 3.0, "siloSpread": 2.0, "rarity": 1.0}
        ),
        MetricCombination("frequent topics", {"tf": 2.0, "df": 2.0, "lengthScore": 1.0}),
        MetricCombination("folder concepts", {"generality": 3.0, "userFieldRatio": 2.0}),
    ]


def preset_by_name(name: str) -> Optional[MetricCombination]:
    for combination in presets():
        if combination.name == name:
            return combination
    return None


class MetricContext:
    """Corpus-wide statistics shared by every per-term metric computation."""

    def __init__(self, corpus: Corpus, index: TermIndex):
        self.n_items = max(1, len(corpus.items))
        self.max_count = max((record.count for record in index.values()), default=1)
        # Minimum folder depth per folder-name token, over all silo trees.
        self.folder_token_depth: dict[str, int] = {}
        for silo in Silo:
            for name, depth in corpus.walk_folders(silo):
                for token in tokenize(name):
                    key = token.surface.lower()
                    prev = self.folder_token_depth.get(key)
                    if prev is None or depth < prev:
                        self.folder_token_depth[key] = depth


def _clamp(value: float) -> float:
    return min(1.0, max(EPSILON, value))


def _is_acronym(term: TermRecord) -> bool:
    if not (2 <= len(term.key) <= 6) or not any(c.isalpha() for c in term.key):
        return False
    upper = sum(
        count for surface, count in term.surfaces.items() if surface.isupper()
    )
    return term.count > 0 and upper / term.count >= 0.9


def compute_metrics(
    term: TermRecord,
    corpus: Corpus,
    index: TermIndex,
    context: Optional[MetricContext] = None,
) -> dict[str, float]:
    """All eight metric components for one term, cached on the record."""
    if term.key not in index:
        raise TermNotInIndex(term.key)
    if term.metrics is not None:
        return term.metrics
    if context is None:
        context = MetricContext(corpus, index)

    df_raw = len(term.item_ids()) / context.n_items
    user_occurrences = sum(
        1 for occ in term.occurrences if AUTHORSHIP[occ.field_kind] is Authorship.USER
    )
    depth = context.folder_token_depth.get(term.key)

    vector = {
        "tf": _clamp(term.count / context.max_count),
        "df": _clamp(df_raw),
        "siloSpread": _clamp(len(term.silos_of(corpus)) / 3),
        "generality": _clamp(1.0 / depth) if depth else EPSILON,
        "userFieldRatio": _clamp(user_occurrences / term.count) if term.count else EPSILON,
        "acronymScore": 1.0 if _is_acronym(term) else EPSILON,
        "lengthScore": _clamp(min(len(term.key), 12) / 12),
        "rarity": _clamp(1.0 - df_raw),
    }
    term.metrics = vector
    return vector


def harmonic_score(vector: dict[str, float], combination: MetricCombination) -> float:
    """Weighted harmonic mean over the metrics with positive weight."""
    selected = [
        (weight, vector[metric])
        for metric, weight in combination.weights.items()
        if weight > 0
    ]
    if not selected:
        raise InvalidCombination("all weights are zero")
    total_weight = sum(weight for weight, _ in selected)
    return total_weight / sum(weight / value for weight, value in selected)


def rank_terms(
    index: TermIndex,
    corpus: Corpus,
    combination: MetricCombination,
    include: Optional[Callable[[str], bool]] = None,
) -> list[tuple[str, float]]:
    """Terms passing the filter, scored and sorted.

    Order: score descending, then raw occurrence count descending, then
    key ascending. Deterministic for a given index and combination.
    """
    if not any(w > 0 for w in combination.weights.values()):
        raise InvalidCombination("at least one weight must be positive")
    context = MetricContext(corpus, index)
    scored = []
    for key in index.keys():
        if include is not None and not include(key):
            continue
        record = index.get(key)
        vector = compute_metrics(record, corpus, index, context)
        scored.append((key, harmonic_score(vector, combination), record.count))
    scored.sort(key=lambda row: (-row[1], -row[2], row[0]))
    return [(key, score) for key, score, _ in scored]
