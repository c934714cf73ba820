"""Typed entity pre-extraction from structured fields.

Persons come from mail address headers, places from calendar locations via
a gazetteer, organizations from address and link domains. Confirmed labels
can be rediscovered corpus-wide with one batched automaton pass.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from email.utils import getaddresses
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional
from urllib.parse import urlsplit

from .matching import KeywordAutomaton, longest_match_wins, lower_preserve
from .model import Corpus, FieldKind, PimItem, Silo, TermOccurrence, field_order


class ConceptType(str, Enum):
    PERSON = "person"
    PLACE = "place"
    ORGANIZATION = "organization"
    TOPIC = "topic"
    PROJECT = "project"
    TIME = "time"


class CandidateSource(str, Enum):
    MAIL_HEADER = "mail-header"
    GAZETTEER_LOCATION = "gazetteer-location"
    DOMAIN_NAME = "domain-name"
    USER_PROMOTED = "user-promoted"


@dataclass
class ConceptCandidate:
    label: str
    concept_type: ConceptType
    occurrences: list[TermOccurrence] = field(default_factory=list)
    source: CandidateSource = CandidateSource.USER_PROMOTED


def _data_text(name: str) -> str:
    return resources.files("conceptminer").joinpath("data", name).read_text(encoding="utf-8")


def _read_list(text: str) -> list[str]:
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.append(line)
    return entries


# -- gazetteer -----------------------------------------------------------------


class Gazetteer:
    """Known surface forms matched case-insensitively on token boundaries."""

    def __init__(self, entries: Iterable[tuple[str, ConceptType, str]]):
        self.entries: list[tuple[str, ConceptType, str]] = []
        seen: set[tuple[str, ConceptType]] = set()
        for surface, concept_type, canonical in entries:
            dedup_key = (surface.lower(), concept_type)
            if surface and dedup_key not in seen:
                seen.add(dedup_key)
                self.entries.append((surface, concept_type, canonical))
        self._automaton = KeywordAutomaton([surface for surface, _, _ in self.entries])

    @classmethod
    def from_text(cls, text: str) -> "Gazetteer":
        entries = []
        for line in text.splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            columns = line.rstrip("\n").split("\t")
            if len(columns) < 3:
                continue
            surface, type_name, canonical = columns[0], columns[1], columns[2]
            try:
                concept_type = ConceptType(type_name.strip().lower())
            except ValueError:
                concept_type = ConceptType.PLACE
            entries.append((surface.strip(), concept_type, canonical.strip()))
        return cls(entries)

    @classmethod
    def from_file(cls, path: Path) -> "Gazetteer":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def bundled(cls) -> "Gazetteer":
        return cls.from_text(_data_text("gazetteer.tsv"))

    def match(self, text: str) -> list[tuple[int, int, tuple[str, ConceptType, str]]]:
        """Non-overlapping boundary matches; longest match wins on overlaps."""
        hits = longest_match_wins(self._automaton.find_bounded(text))
        return [(start, end, self.entries[idx]) for start, end, idx in hits]


# -- persons -------------------------------------------------------------------

_NAME_STRIP = ".,;:'\"()<>[]"


def _nice_case(part: str) -> str:
    return part.capitalize() if part.islower() or part.isupper() else part


def _display_name_parts(display: str) -> list[str]:
    """Split a display name into given/family parts, "Family, Given" included."""
    if "," in display:
        family, _, given = display.partition(",")
        raw = given.split() + family.split()
    else:
        raw = display.split()
    parts = []
    for piece in raw:
        piece = piece.strip(_NAME_STRIP)
        if len(piece) >= 2 and piece.isalpha():
            parts.append(_nice_case(piece))
    return parts


def _local_part_parts(local: str) -> list[str]:
    parts = []
    for piece in re.split(r"[._\-]", local):
        if len(piece) >= 2 and piece.isalpha():
            parts.append(_nice_case(piece))
    return parts


def _find_span(text: str, needle: str, start_at: int) -> Optional[tuple[int, int]]:
    pos = text.find(needle, start_at)
    if pos < 0:
        pos = text.find(needle)
    if pos < 0:
        return None
    return pos, pos + len(needle)


class _CandidateSet:
    """Accumulates candidates merged by case-folded label."""

    def __init__(self, concept_type: ConceptType, source: CandidateSource):
        self.concept_type = concept_type
        self.source = source
        self._by_key: dict[str, ConceptCandidate] = {}

    def add(self, label: str, occurrence: Optional[TermOccurrence]) -> None:
        candidate = self._by_key.get(label.lower())
        if candidate is None:
            candidate = ConceptCandidate(label, self.concept_type, [], self.source)
            self._by_key[label.lower()] = candidate
        if occurrence is not None:
            candidate.occurrences.append(occurrence)

    def result(self) -> list[ConceptCandidate]:
        out = sorted(self._by_key.values(), key=lambda c: c.label.lower())
        for candidate in out:
            candidate.occurrences.sort(key=TermOccurrence.sort_key)
        return [c for c in out if c.occurrences]


def extract_persons(corpus: Corpus) -> list[ConceptCandidate]:
    """Person candidates from names found in From/To mail addresses.

    Display names win over address local parts; either way a candidate
    needs at least two alphabetic name parts.
    """
    found = _CandidateSet(ConceptType.PERSON, CandidateSource.MAIL_HEADER)
    for item in corpus.items_in(Silo.MAIL):
        for kind in (FieldKind.MAIL_FROM, FieldKind.MAIL_TO):
            text = item.text(kind)
            if not text:
                continue
            cursor = 0
            for display, addr in getaddresses(item.fields.get(kind, [])):
                parts: list[str] = []
                matched: Optional[str] = None
                if display:
                    parts = _display_name_parts(display)
                    matched = display
                if len(parts) < 2 and "@" in addr:
                    local = addr.split("@", 1)[0]
                    local_parts = _local_part_parts(local)
                    if len(local_parts) >= 2:
                        parts, matched = local_parts, local
                if len(parts) < 2 or matched is None:
                    continue
                span = _find_span(text, matched, cursor)
                if span is None:
                    continue
                cursor = span[1]
                found.add(
                    " ".join(parts),
                    TermOccurrence(item.id, kind, span[0], span[1], matched),
                )
    return found.result()


# -- places --------------------------------------------------------------------


def extract_places(corpus: Corpus, gazetteer: Optional[Gazetteer] = None) -> list[ConceptCandidate]:
    """Place candidates from gazetteer hits in calendar location fields."""
    gazetteer = gazetteer or Gazetteer.bundled()
    found = _CandidateSet(ConceptType.PLACE, CandidateSource.GAZETTEER_LOCATION)
    for item in corpus.items_in(Silo.CALENDAR):
        text = item.text(FieldKind.EVENT_LOCATION)
        if not text:
            continue
        for start, end, (_, concept_type, canonical) in gazetteer.match(text):
            if concept_type is not ConceptType.PLACE:
                continue
            found.add(
                canonical,
                TermOccurrence(item.id, FieldKind.EVENT_LOCATION, start, end, text[start:end]),
            )
    return found.result()


# -- organizations ---------------------------------------------------------------


def default_stoplist() -> set[str]:
    return set(_read_list(_data_text("freemail_stoplist.txt")))


def default_suffixes() -> set[str]:
    return set(_read_list(_data_text("public_suffixes.txt")))


_IP_RE = re.compile(r"^\d{1,3}(\.\d{1,3}){3}$")


def registrable_label(host: str, suffixes: set[str]) -> Optional[str]:
    """Second-level label left of the longest known public suffix."""
    host = host.strip().strip(".").lower()
    if not host or _IP_RE.match(host) or ":" in host:
        return None
    labels = host.split(".")
    if len(labels) < 2:
        return None
    for take in (2, 1):
        if len(labels) > take and ".".join(labels[-take:]) in suffixes:
            return labels[-take - 1]
    return labels[-2]


def _hosts_in_mail(item: PimItem) -> Iterable[tuple[FieldKind, str]]:
    for kind in (FieldKind.MAIL_FROM, FieldKind.MAIL_TO):
        values = item.fields.get(kind)
        if not values:
            continue
        for _, addr in getaddresses(values):
            if "@" in addr:
                yield kind, addr.rsplit("@", 1)[1]


def extract_organizations(
    corpus: Corpus,
    stoplist: Optional[set[str]] = None,
    suffixes: Optional[set[str]] = None,
) -> list[ConceptCandidate]:
    """Organization candidates from mail address domains and bookmark URLs."""
    stoplist = default_stoplist() if stoplist is None else stoplist
    suffixes = default_suffixes() if suffixes is None else suffixes
    found = _CandidateSet(ConceptType.ORGANIZATION, CandidateSource.DOMAIN_NAME)

    def add_host(item: PimItem, kind: FieldKind, host: str) -> None:
        label = registrable_label(host, suffixes)
        if not label or len(label) < 2 or label in stoplist:
            return
        if not any(c.isalpha() for c in label):
            return
        text = item.text(kind)
        if not text:
            return
        lower = lower_preserve(text)
        host_pos = lower.find(host.lower())
        if host_pos < 0:
            span = _find_span(lower, label, 0)
        else:
            label_off = host.lower().rfind(label)
            span = (host_pos + label_off, host_pos + label_off + len(label))
        if span is None:
            return
        found.add(
            label.title(),
            TermOccurrence(item.id, kind, span[0], span[1], text[span[0] : span[1]]),
        )

    for item in corpus.items:
        if item.silo == Silo.MAIL:
            for kind, host in _hosts_in_mail(item):
                add_host(item, kind, host)
        elif item.silo == Silo.BOOKMARK:
            url = item.text(FieldKind.BOOKMARK_URL)
            if url:
                host = urlsplit(url.strip()).hostname or ""
                if host:
                    add_host(item, FieldKind.BOOKMARK_URL, host)
    return found.result()


# -- rediscovery -----------------------------------------------------------------


def rediscover_all(labels: list[str], corpus: Corpus) -> dict[str, list[TermOccurrence]]:
    """Every boundary occurrence of every label across all text fields.

    One automaton pass per field text, so total work is linear in corpus
    text size regardless of how many labels are being looked up.
    """
    result: dict[str, list[TermOccurrence]] = {label: [] for label in labels}
    pattern_labels = [label for label in labels if label]
    if not pattern_labels:
        return result
    automaton = KeywordAutomaton(pattern_labels)
    for item in corpus.items:
        for kind in sorted(item.fields, key=field_order):
            text = item.text(kind)
            if not text:
                continue
            for start, end, idx in automaton.find_bounded(text):
                label = pattern_labels[idx]
                result[label].append(
                    TermOccurrence(item.id, kind, start, end, text[start:end])
                )
    return result


def rediscover(concept: ConceptCandidate | str, corpus: Corpus) -> list[TermOccurrence]:
    """Occurrences of one concept label corpus-wide (case-insensitive)."""
    label = concept if isinstance(concept, str) else concept.label
    return rediscover_all([label], corpus)[label]
