"""Multi-pattern string matching for gazetteers and concept rediscovery.

Aho-Corasick automaton over case-normalized text: one pass over the
haystack finds every occurrence of every pattern, so batch lookups run in
time linear in the total text size. Lowercasing is done per character and
skipped where it would change the string length, keeping offsets exact.
"""

from __future__ import annotations

from collections import deque
from typing import Iterator


def lower_preserve(text: str) -> str:
    """Lowercase text without changing its length."""
    out = []
    for ch in text:
        low = ch.lower()
        out.append(low if len(low) == 1 else ch)
    return "".join(out)


def is_token_boundary(text: str, start: int, end: int) -> bool:
    """True if [start, end) sits on alphanumeric-run boundaries."""
    if start > 0 and text[start - 1].isalnum():
        return False
    if end < len(text) and text[end].isalnum():
        return False
    return True


class KeywordAutomaton:
    """Case-insensitive Aho-Corasick matcher over a fixed pattern set."""

    def __init__(self, patterns: list[str]):
        self.patterns = list(patterns)
        self._lengths = [len(p) for p in self.patterns]
        self._goto: list[dict[str, int]] = [{}]
        self._fail: list[int] = [0]
        self._out: list[list[int]] = [[]]
        for idx, pattern in enumerate(self.patterns):
            self._add(lower_preserve(pattern), idx)
        self._build_failure_links()

    def _add(self, pattern: str, idx: int) -> None:
        if not pattern:
            return
        state = 0
        for ch in pattern:
            nxt = self._goto[state].get(ch)
            if nxt is None:
                nxt = len(self._goto)
                self._goto.append({})
                self._fail.append(0)
                self._out.append([])
                self._goto[state][ch] = nxt
            state = nxt
        self._out[state].append(idx)

    def _build_failure_links(self) -> None:
        queue = deque()
        for child in self._goto[0].values():
            self._fail[child] = 0
            queue.append(child)
        while queue:
            state = queue.popleft()
            for ch, child in self._goto[state].items():
                queue.append(child)
                fall = self._fail[state]
                while fall and ch not in self._goto[fall]:
                    fall = self._fail[fall]
                fallback = self._goto[fall].get(ch, 0)
                self._fail[child] = fallback if fallback != child else 0
                self._out[child] = self._out[child] + self._out[self._fail[child]]

    def finditer(self, text: str) -> Iterator[tuple[int, int, int]]:
        """Yield (start, end, pattern_index) for every match, overlaps included."""
        norm = lower_preserve(text)
        state = 0
        for pos, ch in enumerate(norm):
            while state and ch not in self._goto[state]:
                state = self._fail[state]
            state = self._goto[state].get(ch, 0)
            for idx in self._out[state]:
                end = pos + 1
                yield end - self._lengths[idx], end, idx

    def find_bounded(self, text: str) -> list[tuple[int, int, int]]:
        """Matches restricted to whole-token boundaries, in text order."""
        hits = [
            (start, end, idx)
            for start, end, idx in self.finditer(text)
            if is_token_boundary(text, start, end)
        ]
        hits.sort(key=lambda h: (h[0], h[1], h[2]))
        return hits


def longest_match_wins(hits: list[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    """Resolve overlapping matches: longer spans win, earlier spans break ties."""
    ordered = sorted(hits, key=lambda h: (-(h[1] - h[0]), h[0], h[2]))
    kept: list[tuple[int, int, int]] = []
    for start, end, idx in ordered:
        if all(end <= k_start or start >= k_end for k_start, k_end, _ in kept):
            kept.append((start, end, idx))
    kept.sort(key=lambda h: (h[0], h[1], h[2]))
    return kept
