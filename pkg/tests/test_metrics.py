from __future__ import annotations

import math
import random
import re

import pytest

from conceptminer.metrics import (
    EPSILON,
    METRIC_NAMES,
    InvalidCombination,
    MetricCombination,
    MetricContext,
    TermNotInIndex,
    compute_metrics,
    harmonic_score,
    preset_by_name,
    presets,
    rank_terms,
    validate_combination,
)
from conceptminer.model import Corpus, FieldKind, PimItem, Silo, TermRecord
from conceptminer.textprep import build_term_index

from .gencorpus import random_corpus

# -- naive oracle -------------------------------------------------------------------

_USER_FIELDS = {
    "MailSubject", "MailFolder", "EventSummary", "EventDescription",
    "BookmarkFolder", "BookmarkDescription",
}


def _naive_clamp(x: float) -> float:
    return min(1.0, max(1e-9, x))


def _naive_folder_token_depths(corpus) -> dict[str, int]:
    depths: dict[str, int] = {}

    def walk(node, depth):
        for token in re.findall(r"[^\W_]+(?:['’\-][^\W_]+)*", node.name):
            key = token.lower()
            if key not in depths or depth < depths[key]:
                depths[key] = depth
        for child in node.children.values():
            walk(child, depth + 1)

    for silo in Silo:
        for root in corpus.folder_trees[silo].values():
            walk(root, 1)
    return depths


def naive_rank(index, corpus, combination) -> list[tuple[str, float]]:
    """From-scratch reimplementation of scoring and ordering."""
    n_items = max(1, len(corpus.items))
    max_count = max((len(r.occurrences) for r in index.values()), default=1)
    depths = _naive_folder_token_depths(corpus)

    rows = []
    for key in index.keys():
        record = index.get(key)
        count = len(record.occurrences)
        items = {o.item_id for o in record.occurrences}
        silos = {corpus.item(i).silo for i in items}
        user = sum(1 for o in record.occurrences if o.field_kind.value in _USER_FIELDS)
        upper = sum(1 for o in record.occurrences if o.surface.isupper())
        is_acronym = (
            2 <= len(key) <= 6
            and any(c.isalpha() for c in key)
            and upper / count >= 0.9
        )
        df = len(items) / n_items
        vector = {
            "tf": _naive_clamp(count / max_count),
            "df": _naive_clamp(df),
            "siloSpread": _naive_clamp(len(silos) / 3),
            "generality": _naive_clamp(1.0 / depths[key]) if key in depths else 1e-9,
            "userFieldRatio": _naive_clamp(user / count),
            "acronymScore": 1.0 if is_acronym else 1e-9,
            "lengthScore": _naive_clamp(min(len(key), 12) / 12),
            "rarity": _naive_clamp(1.0 - df),
        }
        weights = [(w, vector[m]) for m, w in combination.weights.items() if w > 0]
        score = sum(w for w, _ in weights) / sum(w / v for w, v in weights)
        rows.append((key, score, count))
    rows.sort(key=lambda r: (-r[1], -r[2], r[0]))
    return [(key, score) for key, score, _ in rows]


# -- compute_metrics ------------------------------------------------------------------


def _tri_silo_corpus():
    items = [
        PimItem(
            id="m1",
            silo=Silo.MAIL,
            fields={
                FieldKind.MAIL_SUBJECT: ["mlkg telco"],
                FieldKind.MAIL_FOLDER: ["Projects"],
            },
            folder_path=("Projects",),
        ),
        PimItem(
            id="e1", silo=Silo.CALENDAR, fields={FieldKind.EVENT_SUMMARY: ["mlkg review"]}
        ),
        PimItem(
            id="b1",
            silo=Silo.BOOKMARK,
            fields={FieldKind.BOOKMARK_TITLE: ["mlkg wiki"]},
        ),
    ]
    return Corpus(items)


def test_silo_spread_full():
    corpus = _tri_silo_corpus()
    index = build_term_index(corpus)
    vector = compute_metrics(index.get("mlkg"), corpus, index)
    assert vector["siloSpread"] == 1.0


def test_generality_depth_one_folder():
    corpus = _tri_silo_corpus()
    index = build_term_index(corpus)
    vector = compute_metrics(index.get("projects"), corpus, index)
    assert vector["generality"] == 1.0


def test_degenerate_single_item_corpus():
    corpus = Corpus(
        [PimItem(id="m1", silo=Silo.MAIL, fields={FieldKind.MAIL_SUBJECT: ["solo"]})]
    )
    index = build_term_index(corpus)
    vector = compute_metrics(index.get("solo"), corpus, index)
    assert vector["tf"] == 1.0
    assert vector["df"] == 1.0
    assert vector["userFieldRatio"] == 1.0
    assert vector["rarity"] == EPSILON  # 1 - df clamps up to epsilon


def test_unknown_term_raises():
    corpus = _tri_silo_corpus()
    index = build_term_index(corpus)
    with pytest.raises(TermNotInIndex):
        compute_metrics(TermRecord("ghost"), corpus, index)


def test_all_components_within_bounds():
    rng = random.Random(31)
    corpus = random_corpus(rng, 40)
    index = build_term_index(corpus)
    context = MetricContext(corpus, index)
    for record in index.values():
        vector = compute_metrics(record, corpus, index, context)
        assert set(vector) == set(METRIC_NAMES)
        for name, value in vector.items():
            assert EPSILON <= value <= 1.0, (record.key, name, value)


def test_acronym_detection():
    corpus = Corpus(
        [
            PimItem(
                id="m1",
                silo=Silo.MAIL,
                fields={FieldKind.MAIL_SUBJECT: ["MLKG rocks"], FieldKind.MAIL_BODY: ["MLKG"]},
            )
        ]
    )
    index = build_term_index(corpus)
    assert compute_metrics(index.get("mlkg"), corpus, index)["acronymScore"] == 1.0
    assert compute_metrics(index.get("rocks"), corpus, index)["acronymScore"] == EPSILON


# -- harmonic score -------------------------------------------------------------------


def _vector(**overrides) -> dict[str, float]:
    vector = {name: 0.5 for name in METRIC_NAMES}
    vector.update(overrides)
    return vector


def test_equal_values_identity():
    combination = MetricCombination("c", {"tf": 2.0, "rarity": 1.0, "df": 0.4})
    assert harmonic_score(_vector(), combination) == pytest.approx(0.5, abs=1e-15)


def test_hand_computed_example():
    combination = MetricCombination("c", {"tf": 1.0, "rarity": 1.0})
    score = harmonic_score(_vector(tf=1.0, rarity=0.25), combination)
    assert score == pytest.approx(0.4, abs=1e-12)


def test_single_metric_identity():
    combination = MetricCombination("c", {"tf": 1.0})
    assert harmonic_score(_vector(tf=0.7), combination) == pytest.approx(0.7, abs=1e-15)


def test_all_zero_weights_rejected():
    with pytest.raises(InvalidCombination):
        harmonic_score(_vector(), MetricCombination("c", {"tf": 0.0}))
    with pytest.raises(InvalidCombination):
        validate_combination("c", {"tf": 0.0, "df": 0.0})


def test_unknown_metric_rejected():
    with pytest.raises(InvalidCombination):
        validate_combination("c", {"nonsense": 1.0})


def test_negative_weight_rejected():
    with pytest.raises(InvalidCombination):
        validate_combination("c", {"tf": -1.0})


def _random_case(rng):
    metrics = rng.sample(METRIC_NAMES, rng.randint(1, len(METRIC_NAMES)))
    weights = {m: rng.uniform(0.01, 5.0) for m in metrics}
    vector = {name: rng.uniform(EPSILON, 1.0) for name in METRIC_NAMES}
    return vector, MetricCombination("rnd", weights)


def test_harmonic_property_suite_1000_cases():
    rng = random.Random(2024)
    for _ in range(1000):
        vector, combination = _random_case(rng)
        score = harmonic_score(vector, combination)
        selected = [vector[m] for m in combination.weights]

        # bounds
        assert min(selected) - 1e-12 <= score <= max(selected) + 1e-12

        # equal-value identity
        level = rng.uniform(0.1, 1.0)
        flat = {name: level for name in METRIC_NAMES}
        assert harmonic_score(flat, combination) == pytest.approx(level, rel=1e-12)

        # strict monotonicity in one weighted metric
        bumped_metric = rng.choice(list(combination.weights))
        if vector[bumped_metric] < 1.0:
            bumped = dict(vector)
            bumped[bumped_metric] = min(1.0, vector[bumped_metric] + rng.uniform(0.01, 0.5))
            assert harmonic_score(bumped, combination) > score

        # weight-zero exclusion
        dropped = rng.choice(METRIC_NAMES)
        with_zero = dict(combination.weights)
        with_zero[dropped] = 0.0
        without = {m: w for m, w in combination.weights.items() if m != dropped}
        if without:
            assert harmonic_score(vector, MetricCombination("z", with_zero)) == pytest.approx(
                harmonic_score(vector, MetricCombination("w", without)), rel=1e-12
            )

        # weight scale invariance of the score ordering: scaling all weights
        # leaves the score itself unchanged
        factor = rng.uniform(0.1, 10.0)
        scaled = MetricCombination("s", {m: w * factor for m, w in combination.weights.items()})
        assert harmonic_score(vector, scaled) == pytest.approx(score, rel=1e-12)

        assert not math.isnan(score)


# -- rank_terms --------------------------------------------------------------------------


def test_rank_orders_by_score():
    corpus = _tri_silo_corpus()
    index = build_term_index(corpus)
    ranked = rank_terms(index, corpus, MetricCombination("c", {"siloSpread": 1.0}))
    assert ranked[0][0] == "mlkg"


def test_rank_tie_break_by_count_then_key():
    corpus = Corpus(
        [
            PimItem(
                id="m1",
                silo=Silo.MAIL,
                fields={FieldKind.MAIL_SUBJECT: ["zebra zebra apple"]},
            )
        ]
    )
    index = build_term_index(corpus)
    # lengthScore(zebra) == lengthScore(apple), so scores tie; zebra has
    # count 2 and must come first.
    ranked = rank_terms(index, corpus, MetricCombination("c", {"lengthScore": 1.0}))
    assert [key for key, _ in ranked] == ["zebra", "apple"]


def test_rank_scale_invariance():
    rng = random.Random(41)
    corpus = random_corpus(rng, 30)
    index = build_term_index(corpus)
    base = MetricCombination("c", {"tf": 1.0, "rarity": 2.0, "acronymScore": 0.5})
    scaled = MetricCombination("c", {"tf": 10.0, "rarity": 20.0, "acronymScore": 5.0})
    assert [k for k, _ in rank_terms(index, corpus, base)] == [
        k for k, _ in rank_terms(index, corpus, scaled)
    ]


def test_rank_include_filter():
    corpus = _tri_silo_corpus()
    index = build_term_index(corpus)
    ranked = rank_terms(
        index, corpus, MetricCombination("c", {"tf": 1.0}), include=lambda k: k != "mlkg"
    )
    assert all(key != "mlkg" for key, _ in ranked)


def test_rank_invalid_combination():
    corpus = _tri_silo_corpus()
    index = build_term_index(corpus)
    with pytest.raises(InvalidCombination):
        rank_terms(index, corpus, MetricCombination("c", {"tf": 0.0}))


def test_rank_equals_naive_oracle_on_random_corpora():
    rng = random.Random(1234)
    for trial in range(20):
        corpus = random_corpus(rng, rng.randint(5, 50))
        index = build_term_index(corpus)
        vector_metrics = rng.sample(METRIC_NAMES, rng.randint(1, 4))
        combination = MetricCombination(
            "rnd", {m: rng.uniform(0.5, 3.0) for m in vector_metrics}
        )
        got = rank_terms(index, corpus, combination)
        expected = naive_rank(index, corpus, combination)
        assert [k for k, _ in got] == [k for k, _ in expected], trial
        for (_, a), (_, b) in zip(got, expected):
            assert a == pytest.approx(b, rel=1e-12)


def test_cross_silo_relevancy_property():
    # Same term shape in every other respect; the tri-silo one outranks.
    items = [
        PimItem(id="m1", silo=Silo.MAIL, fields={FieldKind.MAIL_SUBJECT: ["wide solo"]}),
        PimItem(id="e1", silo=Silo.CALENDAR, fields={FieldKind.EVENT_SUMMARY: ["wide"]}),
        PimItem(id="b1", silo=Silo.BOOKMARK, fields={FieldKind.BOOKMARK_TITLE: ["wide"]}),
        PimItem(id="m2", silo=Silo.MAIL, fields={FieldKind.MAIL_SUBJECT: ["solo"]}),
        PimItem(id="m3", silo=Silo.MAIL, fields={FieldKind.MAIL_SUBJECT: ["solo"]}),
    ]
    corpus = Corpus(items)
    index = build_term_index(corpus)
    ranked = dict(rank_terms(index, corpus, MetricCombination("c", {"siloSpread": 1.0})))
    assert ranked["wide"] > ranked["solo"]


def test_generality_claim_property():
    items = [
        PimItem(
            id="m1",
            silo=Silo.MAIL,
            fields={FieldKind.MAIL_SUBJECT: ["shallow deep"], FieldKind.MAIL_FOLDER: ["shallow"]},
            folder_path=("shallow",),
        ),
        PimItem(
            id="m2",
            silo=Silo.MAIL,
            fields={
                FieldKind.MAIL_SUBJECT: ["filler"],
                FieldKind.MAIL_FOLDER: ["shallow", "mid", "deep"],
            },
            folder_path=("shallow", "mid", "deep"),
        ),
    ]
    corpus = Corpus(items)
    index = build_term_index(corpus)
    ranked = dict(rank_terms(index, corpus, MetricCombination("c", {"generality": 1.0})))
    assert ranked["shallow"] > ranked["deep"]


# -- presets ------------------------------------------------------------------------------


def test_presets_ship_required_set():
    names = {p.name for p in presets()}
    assert {"balanced", "acronyms & projects", "frequent topics", "folder concepts"} <= names


def test_balanced_has_eight_unit_weights():
    balanced = preset_by_name("balanced")
    assert balanced.weights == {name: 1.0 for name in METRIC_NAMES}
    assert len(balanced.weights) == 8


def test_every_preset_validates():
    for preset in presets():
        validated = validate_combination(preset.name, preset.weights)
        assert validated.weights == preset.weights
