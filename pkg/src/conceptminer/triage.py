"""Interactive classification state: the engine behind the triage UI.

Tracks promising/discarded terms with provenance, concept types, progress
tallies and per-silo coverage. Mutations go through a lock so concurrent
API requests see one consistent, monotonically versioned session.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .extractors import CandidateSource, ConceptCandidate, ConceptType
from .linkers import CrossLink, LinkKind
from .metrics import MetricCombination, presets
from .model import Corpus, FieldKind, Silo, TermOccurrence, field_order, silo_order
from .textprep import TermIndex, tokenize


class UnknownTerm(Exception):
    pass


class InvalidStatus(Exception):
    pass


class CorpusMismatch(Exception):
    """The index or session was built from a different corpus."""


class Status:
    UNCLASSIFIED = "unclassified"
    PROMISING = "promising"
    DISCARDED = "discarded"


class Provenance:
    AUTO = "auto"
    USER = "user"


@dataclass
class Classification:
    status: str
    provenance: str


@dataclass
class SiloCoverage:
    total: int
    covered: int

    @property
    def uncovered(self) -> int:
        return self.total - self.covered


@dataclass
class CoverageReport:
    silos: dict[Silo, SiloCoverage]
    terms: dict[str, int]


@dataclass
class TriageSession:
    corpus_ref: str
    classifications: dict[str, Classification] = field(default_factory=dict)
    concept_types: dict[str, ConceptType] = field(default_factory=dict)
    active_combination: MetricCombination = field(default_factory=lambda: presets()[0])
    candidates: list[ConceptCandidate] = field(default_factory=list)
    links: list[CrossLink] = field(default_factory=list)
    revision: int = 0

    def __post_init__(self) -> None:
        self._lock = threading.RLock()

    @property
    def lock(self) -> threading.RLock:
        return self._lock

    def status_of(self, key: str) -> str:
        classification = self.classifications.get(key)
        return classification.status if classification else Status.UNCLASSIFIED

    def candidate_by_label(self, label: str) -> Optional[ConceptCandidate]:
        wanted = label.lower()
        for candidate in self.candidates:
            if candidate.label.lower() == wanted:
                return candidate
        return None


def new_session(
    corpus: Corpus,
    index: TermIndex,
    candidates: list[ConceptCandidate],
    links: Optional[list[CrossLink]] = None,
    combination: Optional[MetricCombination] = None,
) -> TriageSession:
    """Fresh session: everything unclassified except auto-promoted seeds.

    Term keys matching tokens of extracted person/place labels start as
    promising with auto provenance; symbol/number tokens never reached the
    index in the first place.
    """
    corpus_ref = corpus.content_hash()
    if index.corpus_ref != corpus_ref:
        raise CorpusMismatch("index was built from a different corpus")

    session = TriageSession(
        corpus_ref=corpus_ref,
        candidates=list(candidates),
        links=list(links or []),
        active_combination=combination or presets()[0],
    )
    for candidate in candidates:
        if candidate.concept_type not in (ConceptType.PERSON, ConceptType.PLACE):
            continue
        # The multi-word candidate itself stays promising for the export;
        # its individual word tokens seed the single-word term list.
        label_key = candidate.label.lower()
        session.classifications[label_key] = Classification(Status.PROMISING, Provenance.AUTO)
        session.concept_types.setdefault(label_key, candidate.concept_type)
        for token in tokenize(candidate.label):
            key = token.surface.lower()
            if len(key) >= 2 and key in index:
                session.classifications[key] = Classification(Status.PROMISING, Provenance.AUTO)
                session.concept_types.setdefault(key, candidate.concept_type)
    return session


def classify(
    session: TriageSession,
    index: TermIndex,
    key: str,
    status: str,
    as_type: Optional[ConceptType] = None,
) -> TriageSession:
    """Set a user classification; user decisions override auto seeds."""
    if status not in (Status.PROMISING, Status.DISCARDED):
        raise InvalidStatus(status)
    normalized = key.lower()
    default_type = ConceptType.TOPIC
    target = normalized if normalized in index else None
    if target is None:
        candidate = session.candidate_by_label(key)
        if candidate is None:
            raise UnknownTerm(key)
        target = candidate.label.lower()
        default_type = candidate.concept_type

    with session.lock:
        session.classifications[target] = Classification(status, Provenance.USER)
        if status == Status.PROMISING:
            if as_type is not None:
                session.concept_types[target] = as_type
            else:
                session.concept_types.setdefault(target, default_type)
        else:
            session.concept_types.pop(target, None)
        session.revision += 1
    return session


def promising_item_ids(session: TriageSession, index: TermIndex) -> set[str]:
    """Items containing at least one promising term or candidate label."""
    covered: set[str] = set()
    for key, classification in session.classifications.items():
        if classification.status != Status.PROMISING:
            continue
        record = index.get(key)
        if record is not None:
            covered |= record.item_ids()
            continue
        candidate = session.candidate_by_label(key)
        if candidate is not None:
            covered |= {occ.item_id for occ in candidate.occurrences}
    return covered


def coverage(session: TriageSession, corpus: Corpus, index: TermIndex) -> CoverageReport:
    """Per-silo covered/uncovered item counts plus term status tallies."""
    covered_ids = promising_item_ids(session, index)
    silos = {}
    for silo in Silo:
        items = corpus.items_in(silo)
        covered_count = sum(1 for item in items if item.id in covered_ids)
        silos[silo] = SiloCoverage(total=len(items), covered=covered_count)
    return CoverageReport(silos=silos, terms=progress(session, index))


def progress(session: TriageSession, index: TermIndex) -> dict[str, int]:
    """Status tallies over index terms; the three statuses partition the keys."""
    promising = discarded = 0
    for key, classification in session.classifications.items():
        if key not in index:
            continue
        if classification.status == Status.PROMISING:
            promising += 1
        elif classification.status == Status.DISCARDED:
            discarded += 1
    total = len(index)
    return {
        "unclassified": total - promising - discarded,
        "promising": promising,
        "discarded": discarded,
        "total": total,
    }


@dataclass
class OccurrenceRow:
    item_id: str
    item_summary: str
    silo: Silo
    field_kind: FieldKind
    char_start: int
    char_end: int
    surface: str
    context: str
    context_start: int


CONTEXT_CHARS = 40


def occurrences_of(
    session: TriageSession, corpus: Corpus, index: TermIndex, key: str
) -> list[OccurrenceRow]:
    """Every occurrence of a term or candidate label, with ±40 chars context.

    Context never truncates the matched surface itself.
    """
    normalized = key.lower()
    record = index.get(normalized)
    if record is not None:
        occurrences = record.occurrences
    else:
        candidate = session.candidate_by_label(key)
        if candidate is None:
            raise UnknownTerm(key)
        occurrences = candidate.occurrences

    rows = []
    for occ in occurrences:
        item = corpus.item(occ.item_id)
        text = item.text(occ.field_kind) or ""
        left = max(0, occ.char_start - CONTEXT_CHARS)
        right = min(len(text), occ.char_end + CONTEXT_CHARS)
        rows.append(
            OccurrenceRow(
                item_id=item.id,
                item_summary=item.title(),
                silo=item.silo,
                field_kind=occ.field_kind,
                char_start=occ.char_start,
                char_end=occ.char_end,
                surface=occ.surface,
                context=text[left:right],
                context_start=left,
            )
        )
    rows.sort(
        key=lambda r: (silo_order(r.silo), r.item_id, field_order(r.field_kind), r.char_start)
    )
    return rows


# -- persistence -----------------------------------------------------------------


def _occurrence_to_dict(occ: TermOccurrence) -> dict:
    return {
        "itemId": occ.item_id,
        "field": occ.field_kind.value,
        "start": occ.char_start,
        "end": occ.char_end,
        "surface": occ.surface,
    }


def _occurrence_from_dict(data: dict) -> TermOccurrence:
    return TermOccurrence(
        item_id=data["itemId"],
        field_kind=FieldKind(data["field"]),
        char_start=data["start"],
        char_end=data["end"],
        surface=data["surface"],
    )


def session_to_dict(session: TriageSession) -> dict:
    return {
        "corpusRef": session.corpus_ref,
        "revision": session.revision,
        "classifications": {
            key: {"status": c.status, "provenance": c.provenance}
            for key, c in sorted(session.classifications.items())
        },
        "conceptTypes": {
            key: t.value for key, t in sorted(session.concept_types.items())
        },
        "combination": {
            "name": session.active_combination.name,
            "weights": dict(sorted(session.active_combination.weights.items())),
        },
        "candidates": [
            {
                "label": c.label,
                "type": c.concept_type.value,
                "source": c.source.value,
                "occurrences": [_occurrence_to_dict(o) for o in c.occurrences],
            }
            for c in session.candidates
        ],
        "links": [
            {
                "kind": l.kind.value,
                "from": l.from_item_id,
                "to": l.to_item_id,
                "detail": l.detail,
                "evidence": [_occurrence_to_dict(o) for o in l.evidence],
            }
            for l in session.links
        ],
    }


def session_from_dict(data: dict) -> TriageSession:
    return TriageSession(
        corpus_ref=data["corpusRef"],
        revision=data.get("revision", 0),
        classifications={
            key: Classification(value["status"], value["provenance"])
            for key, value in data.get("classifications", {}).items()
        },
        concept_types={
            key: ConceptType(value) for key, value in data.get("conceptTypes", {}).items()
        },
        active_combination=MetricCombination(
            data["combination"]["name"], dict(data["combination"]["weights"])
        ),
        candidates=[
            ConceptCandidate(
                label=c["label"],
                concept_type=ConceptType(c["type"]),
                occurrences=[_occurrence_from_dict(o) for o in c.get("occurrences", [])],
                source=CandidateSource(c["source"]),
            )
            for c in data.get("candidates", [])
        ],
        links=[
            CrossLink(
                kind=LinkKind(l["kind"]),
                from_item_id=l["from"],
                to_item_id=l["to"],
                evidence=[_occurrence_from_dict(o) for o in l.get("evidence", [])],
                detail=l.get("detail", ""),
            )
            for l in data.get("links", [])
        ],
    )


def session_to_json(session: TriageSession) -> str:
    return json.dumps(session_to_dict(session), ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def save_session(session: TriageSession, path) -> None:
    """Atomic write: the file on disk is always a complete document."""
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with session.lock:
        payload = session_to_json(session)
    with open(tmp, "w", encoding="utf-8") as handle:
        handle.write(payload)
        handle.flush()
        os.fsync(handle.fileno())
    os.replace(tmp, path)


class CorruptSession(Exception):
    pass


def load_session(path) -> TriageSession:
    path = Path(path)
    try:
        return session_from_dict(json.loads(path.read_text(encoding="utf-8")))
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        raise CorruptSession(f"cannot load session {path}: {exc}") from exc
