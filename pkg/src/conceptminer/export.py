"""Knowledge-graph export of a triage session.

Promising concepts become typed nodes linked to the items they occur in,
with field and offset provenance; cross-silo links ride along. Output is
deterministic: identifiers and statements are sorted.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .extractors import ConceptType
from .model import Corpus, Silo, TermOccurrence
from .textprep import TermIndex
from .triage import Status, TriageSession


class UnsupportedFormat(Exception):
    pass


@dataclass
class GraphConcept:
    concept_id: str
    label: str
    concept_type: ConceptType
    occurrences: list[TermOccurrence]


def _slugify(key: str, used: set[str]) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", key.lower()).strip("-") or "concept"
    base, n = slug, 1
    while slug in used:
        n += 1
        slug = f"{base}-{n}"
    used.add(slug)
    return slug


def collect_concepts(
    session: TriageSession, corpus: Corpus, index: TermIndex
) -> list[GraphConcept]:
    """One concept per promising key: index terms and candidate labels."""
    concepts = []
    used: set[str] = set()
    for key in sorted(session.classifications):
        if session.classifications[key].status != Status.PROMISING:
            continue
        record = index.get(key)
        if record is not None:
            label = record.display_surface()
            concept_type = session.concept_types.get(key, ConceptType.TOPIC)
            occurrences = record.occurrences
        else:
            candidate = session.candidate_by_label(key)
            if candidate is None:
                continue
            label = candidate.label
            concept_type = session.concept_types.get(key, candidate.concept_type)
            occurrences = candidate.occurrences
        concepts.append(GraphConcept(_slugify(key, used), label, concept_type, occurrences))
    return concepts


def export_graph(
    session: TriageSession, corpus: Corpus, index: TermIndex, format: str
) -> bytes:
    """Serialize the session's concept graph as Turtle or JSON."""
    if format in ("ttl", "turtle"):
        return _to_turtle(session, corpus, index).encode("utf-8")
    if format == "json":
        return _to_json(session, corpus, index).encode("utf-8")
    raise UnsupportedFormat(format)


_ITEM_CLASS = {
    Silo.MAIL: "MailItem",
    Silo.CALENDAR: "CalendarItem",
    Silo.BOOKMARK: "BookmarkItem",
}

_PREFIX = "http://conceptminer.local/ns#"


def _ttl_escape(value: str) -> str:
    return (
        value.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )


def _to_turtle(session: TriageSession, corpus: Corpus, index: TermIndex) -> str:
    lines = [
        f"@prefix cm: <{_PREFIX}> .",
        "@prefix concept: <http://conceptminer.local/concept/> .",
        "@prefix item: <http://conceptminer.local/item/> .",
        "",
    ]
    for item in corpus.items:
        lines.append(f"item:{item.id} a cm:{_ITEM_CLASS[item.silo]} ;")
        lines.append(f'    cm:title "{_ttl_escape(item.title())}" .')

    concepts = collect_concepts(session, corpus, index)
    for concept in concepts:
        type_name = concept.concept_type.value.capitalize()
        lines.append("")
        lines.append(f"concept:{concept.concept_id} a cm:{type_name} ;")
        lines.append(f'    cm:label "{_ttl_escape(concept.label)}" .')
        for n, occ in enumerate(concept.occurrences):
            node = f"concept:{concept.concept_id}-occ{n}"
            lines.append(f"concept:{concept.concept_id} cm:occursIn item:{occ.item_id} .")
            lines.append(f"{node} a cm:Occurrence ;")
            lines.append(f"    cm:concept concept:{concept.concept_id} ;")
            lines.append(f"    cm:item item:{occ.item_id} ;")
            lines.append(f'    cm:field "{occ.field_kind.value}" ;')
            lines.append(f"    cm:start {occ.char_start} ;")
            lines.append(f"    cm:end {occ.char_end} .")

    link_predicates = {
        "temporal": "temporalLink",
        "shared-url": "sharedUrlLink",
        "copied-text": "copiedTextLink",
    }
    if session.links:
        lines.append("")
        for link in session.links:
            predicate = link_predicates[link.kind.value]
            lines.append(f"item:{link.from_item_id} cm:{predicate} item:{link.to_item_id} .")

    return "\n".join(lines) + "\n"


def _to_json(session: TriageSession, corpus: Corpus, index: TermIndex) -> str:
    concepts = collect_concepts(session, corpus, index)
    payload = {
        "concepts": [
            {
                "id": c.concept_id,
                "label": c.label,
                "type": c.concept_type.value,
                "occursIn": [
                    {
                        "itemId": occ.item_id,
                        "field": occ.field_kind.value,
                        "start": occ.char_start,
                        "end": occ.char_end,
                    }
                    for occ in c.occurrences
                ],
            }
            for c in concepts
        ],
        "items": [
            {"id": item.id, "silo": item.silo.value, "title": item.title()}
            for item in corpus.items
        ],
        "links": [
            {
                "kind": link.kind.value,
                "from": link.from_item_id,
                "to": link.to_item_id,
                "detail": link.detail,
            }
            for link in session.links
        ],
    }
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
