"""Cross-silo relation discovery.

Date mentions in mail text that hit a calendar event, URLs shared between
mail bodies and bookmarks, and text snippets copied across silos. Links
are informational output for the export; they do not feed term scores.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import date, timedelta
from enum import Enum
from importlib import resources
from typing import Iterable, Optional

from .model import Corpus, FieldKind, PimItem, Silo, TermOccurrence, field_order, silo_order
from .textprep import INDEXED_FIELDS, TokenClass, tokenize


class LinkKind(str, Enum):
    TEMPORAL = "temporal"
    SHARED_URL = "shared-url"
    COPIED_TEXT = "copied-text"


@dataclass
class CrossLink:
    kind: LinkKind
    from_item_id: str
    to_item_id: str
    evidence: list[TermOccurrence] = field(default_factory=list)
    detail: str = ""


# -- date mentions ---------------------------------------------------------------


def _load_months() -> dict[str, int]:
    text = resources.files("conceptminer").joinpath("data", "month_names.txt").read_text(
        encoding="utf-8"
    )
    months: dict[str, int] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, _, number = line.partition("\t")
        if name and number.strip().isdigit():
            months[name.lower()] = int(number)
    return months


_MONTHS = _load_months()
_MONTH_ALT = "|".join(sorted((re.escape(m) for m in _MONTHS), key=len, reverse=True))

# Explicit-year forms first so they win the alternation; textual forms may
# omit the year and get resolved against the reference date.
_DATE_RE = re.compile(
    r"(?<![\w.])(?:"
    r"(?P<iso>(?P<iso_y>\d{4})-(?P<iso_m>\d{2})-(?P<iso_d>\d{2}))"
    r"|(?P<dot>(?P<dot_d>\d{1,2})\.(?P<dot_m>\d{1,2})\.(?P<dot_y>\d{4}))"
    r"|(?P<slash>(?P<sl_d>\d{1,2})/(?P<sl_m>\d{1,2})/(?P<sl_y>\d{4}))"
    r"|(?P<ord>(?P<ord_d>\d{1,2})(?:st|nd|rd|th|\.)?\s+(?P<ord_mon>" + _MONTH_ALT + r")"
    r"(?:\s+(?P<ord_y>\d{4}))?)"
    r"|(?P<mon>(?P<mon_mon>" + _MONTH_ALT + r")\s+(?P<mon_d>\d{1,2})(?:st|nd|rd|th)?"
    r"(?:,?\s+(?P<mon_y>\d{4}))?)"
    r")(?![\w-])",
    re.IGNORECASE,
)


def _safe_date(year: int, month: int, day: int) -> Optional[date]:
    try:
        return date(year, month, day)
    except ValueError:
        return None


def _resolve_yearless(month: int, day: int, reference: Optional[date]) -> Optional[date]:
    """Pick the year that puts the date closest to the reference; ties go later."""
    if reference is None:
        return None
    best: Optional[date] = None
    best_distance: Optional[timedelta] = None
    for year in (reference.year - 1, reference.year, reference.year + 1):
        candidate = _safe_date(year, month, day)
        if candidate is None:
            continue
        distance = abs(candidate - reference)
        if (
            best_distance is None
            or distance < best_distance
            or (distance == best_distance and candidate > best)
        ):
            best, best_distance = candidate, distance
    return best


def detect_date_mentions(
    text: str, reference_date: Optional[date] = None
) -> list[tuple[date, tuple[int, int]]]:
    """Dates written out in text, with their character spans.

    Yearless mentions ("11th February", "March 5") require a reference
    date to resolve the year and yield nothing without one.
    """
    mentions: list[tuple[date, tuple[int, int]]] = []
    for match in _DATE_RE.finditer(text):
        resolved: Optional[date] = None
        if match.group("iso"):
            resolved = _safe_date(
                int(match.group("iso_y")), int(match.group("iso_m")), int(match.group("iso_d"))
            )
        elif match.group("dot"):
            resolved = _safe_date(
                int(match.group("dot_y")), int(match.group("dot_m")), int(match.group("dot_d"))
            )
        elif match.group("slash"):
            resolved = _safe_date(
                int(match.group("sl_y")), int(match.group("sl_m")), int(match.group("sl_d"))
            )
        elif match.group("ord"):
            month = _MONTHS[match.group("ord_mon").lower()]
            day = int(match.group("ord_d"))
            if match.group("ord_y"):
                resolved = _safe_date(int(match.group("ord_y")), month, day)
            else:
                resolved = _resolve_yearless(month, day, reference_date)
        elif match.group("mon"):
            month = _MONTHS[match.group("mon_mon").lower()]
            day = int(match.group("mon_d"))
            if match.group("mon_y"):
                resolved = _safe_date(int(match.group("mon_y")), month, day)
            else:
                resolved = _resolve_yearless(month, day, reference_date)
        if resolved is not None:
            mentions.append((resolved, (match.start(), match.end())))
    return mentions


_MAIL_TEXT_FIELDS = (FieldKind.MAIL_SUBJECT, FieldKind.MAIL_BODY)


def link_temporal(corpus: Corpus) -> list[CrossLink]:
    """Mail→event links where a date mention equals an event's start date."""
    events_by_date: dict[date, list[PimItem]] = {}
    for event in corpus.items_in(Silo.CALENDAR):
        if event.timestamp is not None:
            events_by_date.setdefault(event.timestamp.date(), []).append(event)
    if not events_by_date:
        return []

    links: dict[tuple[str, str, str], CrossLink] = {}
    for mail in corpus.items_in(Silo.MAIL):
        reference = mail.timestamp.date() if mail.timestamp else None
        for kind in _MAIL_TEXT_FIELDS:
            text = mail.text(kind)
            if not text:
                continue
            for mentioned, (start, end) in detect_date_mentions(text, reference):
                for event in events_by_date.get(mentioned, []):
                    link_key = (mail.id, event.id, mentioned.isoformat())
                    link = links.get(link_key)
                    if link is None:
                        link = CrossLink(
                            LinkKind.TEMPORAL, mail.id, event.id, [], mentioned.isoformat()
                        )
                        links[link_key] = link
                    link.evidence.append(
                        TermOccurrence(mail.id, kind, start, end, text[start:end])
                    )
    return _sorted_links(links.values())


# -- shared URLs -----------------------------------------------------------------

_URL_RE = re.compile(r"https?://[^\s<>\"'\)\]]+", re.IGNORECASE)
_TRAILING_PUNCT = ".,;:!?"


def normalize_url(url: str) -> str:
    """Lowercase scheme and host, drop fragment and trailing slash."""
    url = url.strip()
    scheme, sep, rest = url.partition("://")
    if not sep:
        return url.rstrip("/")
    rest = rest.split("#", 1)[0]
    host, slash, path = rest.partition("/")
    normalized = scheme.lower() + "://" + host.lower()
    if slash:
        path = path.rstrip("/")
        if path:
            normalized += "/" + path
    return normalized


def link_shared_urls(corpus: Corpus) -> list[CrossLink]:
    """Mail→bookmark links for URLs that appear in a mail body and got bookmarked."""
    bookmarks_by_url: dict[str, list[PimItem]] = {}
    for bookmark in corpus.items_in(Silo.BOOKMARK):
        url = bookmark.text(FieldKind.BOOKMARK_URL)
        if url:
            bookmarks_by_url.setdefault(normalize_url(url), []).append(bookmark)
    if not bookmarks_by_url:
        return []

    links: dict[tuple[str, str, str], CrossLink] = {}
    for mail in corpus.items_in(Silo.MAIL):
        text = mail.text(FieldKind.MAIL_BODY)
        if not text:
            continue
        for match in _URL_RE.finditer(text):
            raw = match.group(0).rstrip(_TRAILING_PUNCT)
            normalized = normalize_url(raw)
            for bookmark in bookmarks_by_url.get(normalized, []):
                link_key = (mail.id, bookmark.id, normalized)
                link = links.get(link_key)
                if link is None:
                    link = CrossLink(LinkKind.SHARED_URL, mail.id, bookmark.id, [], normalized)
                    links[link_key] = link
                link.evidence.append(
                    TermOccurrence(
                        mail.id,
                        FieldKind.MAIL_BODY,
                        match.start(),
                        match.start() + len(raw),
                        raw,
                    )
                )
    return _sorted_links(links.values())


# -- copied text -----------------------------------------------------------------


def _content_token_runs(item: PimItem) -> list[tuple[FieldKind, list]]:
    """Per-field content tokens (symbols excluded), with offsets."""
    runs = []
    for kind in sorted(item.fields, key=field_order):
        if kind not in INDEXED_FIELDS:
            continue
        text = item.text(kind)
        if not text:
            continue
        tokens = [t for t in tokenize(text) if t.token_class is not TokenClass.SYMBOL]
        if tokens:
            runs.append((kind, tokens))
    return runs


def _extend_match(
    tokens_a: list, tokens_b: list, pos_a: int, pos_b: int, width: int
) -> tuple[int, int, int]:
    """Grow a seed window left and right; returns (start_a, start_b, length)."""
    start_a, start_b, length = pos_a, pos_b, width
    while (
        start_a > 0
        and start_b > 0
        and tokens_a[start_a - 1].surface.lower() == tokens_b[start_b - 1].surface.lower()
    ):
        start_a -= 1
        start_b -= 1
        length += 1
    while (
        start_a + length < len(tokens_a)
        and start_b + length < len(tokens_b)
        and tokens_a[start_a + length].surface.lower()
        == tokens_b[start_b + length].surface.lower()
    ):
        length += 1
    return start_a, start_b, length


def link_copied_text(corpus: Corpus, min_tokens: int = 10) -> list[CrossLink]:
    """Cross-silo pairs sharing a contiguous run of identical tokens.

    Seeds come from hashing every min_tokens-wide token window; each seed
    is verified and extended to the longest run, and every qualifying pair
    yields one link carrying its longest shared run.
    """
    if min_tokens < 1:
        raise ValueError("min_tokens must be positive")

    fields_per_item = [(item, _content_token_runs(item)) for item in corpus.items]
    shingles: dict[tuple[str, ...], list[tuple[int, int, int]]] = {}
    for item_idx, (item, runs) in enumerate(fields_per_item):
        for field_idx, (_, tokens) in enumerate(runs):
            lowered = [t.surface.lower() for t in tokens]
            for pos in range(len(tokens) - min_tokens + 1):
                window = tuple(lowered[pos : pos + min_tokens])
                shingles.setdefault(window, []).append((item_idx, field_idx, pos))

    # Longest verified run per unordered cross-silo item pair.
    best: dict[tuple[str, str], tuple[tuple, int, TermOccurrence, TermOccurrence]] = {}
    for positions in shingles.values():
        if len(positions) < 2:
            continue
        for i, (item_a, field_a, pos_a) in enumerate(positions):
            for item_b, field_b, pos_b in positions[i + 1 :]:
                first, first_runs = fields_per_item[item_a]
                second, second_runs = fields_per_item[item_b]
                if first.silo == second.silo:
                    continue
                kind_a, tokens_a = first_runs[field_a]
                kind_b, tokens_b = second_runs[field_b]
                start_a, start_b, length = _extend_match(
                    tokens_a, tokens_b, pos_a, pos_b, min_tokens
                )
                occ_a = _run_occurrence(first, kind_a, tokens_a, start_a, length)
                occ_b = _run_occurrence(second, kind_b, tokens_b, start_b, length)
                pair_ids, occ_from, occ_to = _canonical_pair(first, second, occ_a, occ_b)
                current = best.get(pair_ids)
                # Longest run wins; equal lengths keep the earliest spans.
                rank = (-length, occ_from.sort_key(), occ_to.sort_key())
                if current is None or rank < current[0]:
                    best[pair_ids] = (rank, length, occ_from, occ_to)

    links = [
        CrossLink(LinkKind.COPIED_TEXT, from_id, to_id, [occ_from, occ_to], str(length))
        for (from_id, to_id), (_, length, occ_from, occ_to) in best.items()
    ]
    return _sorted_links(links)


def _run_occurrence(item: PimItem, kind: FieldKind, tokens: list, start: int, length: int):
    text = item.text(kind) or ""
    char_start = tokens[start].char_start
    char_end = tokens[start + length - 1].char_end
    return TermOccurrence(item.id, kind, char_start, char_end, text[char_start:char_end])


def _canonical_pair(item_a: PimItem, item_b: PimItem, occ_a, occ_b):
    """CopiedText links point from the lexicographically smaller item id."""
    if item_a.id <= item_b.id:
        return (item_a.id, item_b.id), occ_a, occ_b
    return (item_b.id, item_a.id), occ_b, occ_a


def discover_links(corpus: Corpus, min_tokens: int = 10) -> list[CrossLink]:
    """All three link kinds, in one deterministic list."""
    links = link_temporal(corpus) + link_shared_urls(corpus) + link_copied_text(
        corpus, min_tokens
    )
    return _sorted_links(links)


def _sorted_links(links: Iterable[CrossLink]) -> list[CrossLink]:
    return sorted(
        links,
        key=lambda l: (l.kind.value, l.from_item_id, l.to_item_id, l.detail),
    )
