from __future__ import annotations

import random

from conceptminer.matching import (
    KeywordAutomaton,
    is_token_boundary,
    longest_match_wins,
    lower_preserve,
)


def naive_bounded_scan(text: str, pattern: str) -> list[tuple[int, int]]:
    """Independent oracle: substring scan with token-boundary checks."""
    hits = []
    needle = pattern.lower()
    haystack = lower_preserve(text)
    start = haystack.find(needle)
    while start >= 0:
        end = start + len(needle)
        before_ok = start == 0 or not text[start - 1].isalnum()
        after_ok = end == len(text) or not text[end].isalnum()
        if before_ok and after_ok:
            hits.append((start, end))
        start = haystack.find(needle, start + 1)
    return hits


def test_simple_match():
    auto = KeywordAutomaton(["York"])
    assert auto.find_bounded("I saw York once") == [(6, 10, 0)]


def test_no_partial_word_match():
    auto = KeywordAutomaton(["York"])
    assert auto.find_bounded("Yorkshire") == []
    assert auto.find_bounded("NewYork") == []


def test_case_insensitive():
    auto = KeywordAutomaton(["mlkg"])
    assert auto.find_bounded("MLKG and mlkg and Mlkg") == [(0, 4, 0), (9, 13, 0), (18, 22, 0)]


def test_multi_token_pattern():
    auto = KeywordAutomaton(["New York"])
    assert auto.find_bounded("flights to new york today") == [(11, 19, 0)]


def test_overlap_resolution_longest_wins():
    auto = KeywordAutomaton(["New York", "York"])
    hits = longest_match_wins(auto.find_bounded("New York"))
    assert hits == [(0, 8, 0)]


def test_empty_pattern_ignored():
    auto = KeywordAutomaton(["", "ab"])
    assert auto.find_bounded("ab") == [(0, 2, 1)]


def test_lower_preserve_keeps_length():
    tricky = "Straße İstanbul ABC"
    assert len(lower_preserve(tricky)) == len(tricky)


ALPHABET = "ab yx.,-"


def test_automaton_equals_naive_scan_on_random_texts():
    rng = random.Random(512)
    patterns = ["a", "ab", "ba", "ab ab", "yx", "a-b", "abba"]
    auto = KeywordAutomaton(patterns)
    for _ in range(300):
        text = "".join(rng.choice(ALPHABET) for _ in range(rng.randrange(60)))
        got: dict[int, list[tuple[int, int]]] = {}
        for start, end, idx in auto.find_bounded(text):
            got.setdefault(idx, []).append((start, end))
        for idx, pattern in enumerate(patterns):
            assert got.get(idx, []) == naive_bounded_scan(text, pattern), (text, pattern)


def test_boundary_predicate():
    assert is_token_boundary("x y z", 2, 3)
    assert not is_token_boundary("xyz", 1, 2)
    assert is_token_boundary("xyz", 0, 3)
