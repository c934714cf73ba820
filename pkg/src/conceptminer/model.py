"""Domain model shared by every pipeline stage.

Items, typed text fields, folder trees, terms and their occurrences. A
Corpus is immutable after construction and safe for concurrent reads;
construction happens once, in the crawler.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Iterator, Optional


class Silo(str, Enum):
    MAIL = "mail"
    CALENDAR = "calendar"
    BOOKMARK = "bookmark"


# Declaration order is the canonical order for items, fields and JSON output.
_SILO_ORDER = {Silo.MAIL: 0, Silo.CALENDAR: 1, Silo.BOOKMARK: 2}


class Authorship(str, Enum):
    USER = "user"
    EXTERNAL = "external"
    STRUCTURED = "structured"


class FieldKind(str, Enum):
    MAIL_SUBJECT = "MailSubject"
    MAIL_BODY = "MailBody"
    MAIL_FROM = "MailFrom"
    MAIL_TO = "MailTo"
    MAIL_FOLDER = "MailFolder"
    MAIL_DATE = "MailDate"
    EVENT_SUMMARY = "EventSummary"
    EVENT_DESCRIPTION = "EventDescription"
    EVENT_LOCATION = "EventLocation"
    EVENT_START = "EventStart"
    EVENT_END = "EventEnd"
    BOOKMARK_TITLE = "BookmarkTitle"
    BOOKMARK_DESCRIPTION = "BookmarkDescription"
    BOOKMARK_URL = "BookmarkUrl"
    BOOKMARK_FOLDER = "BookmarkFolder"


# Authorship is fixed per field kind. BookmarkDescription is treated as
# user-authored: in the Netscape format the description is typed in by the
# user when the bookmark is filed.
AUTHORSHIP: dict[FieldKind, Authorship] = {
    FieldKind.MAIL_SUBJECT: Authorship.USER,
    FieldKind.MAIL_FOLDER: Authorship.USER,
    FieldKind.EVENT_SUMMARY: Authorship.USER,
    FieldKind.EVENT_DESCRIPTION: Authorship.USER,
    FieldKind.BOOKMARK_FOLDER: Authorship.USER,
    FieldKind.BOOKMARK_DESCRIPTION: Authorship.USER,
    FieldKind.BOOKMARK_TITLE: Authorship.EXTERNAL,
    FieldKind.MAIL_BODY: Authorship.EXTERNAL,
    FieldKind.MAIL_FROM: Authorship.STRUCTURED,
    FieldKind.MAIL_TO: Authorship.STRUCTURED,
    FieldKind.MAIL_DATE: Authorship.STRUCTURED,
    FieldKind.EVENT_START: Authorship.STRUCTURED,
    FieldKind.EVENT_END: Authorship.STRUCTURED,
    FieldKind.EVENT_LOCATION: Authorship.STRUCTURED,
    FieldKind.BOOKMARK_URL: Authorship.STRUCTURED,
}

_FIELD_ORDER = {kind: i for i, kind in enumerate(FieldKind)}


def field_order(kind: FieldKind) -> int:
    """Stable position of a field kind, used to order occurrences."""
    return _FIELD_ORDER[kind]


def silo_order(silo: Silo) -> int:
    return _SILO_ORDER[silo]


def make_item_id(silo: Silo, source_key: str) -> str:
    """Deterministic item id from the silo and a canonical source key.

    Source keys: mail Message-ID (or a hash of the raw bytes when absent),
    event UID, bookmark URL plus title. Identical inputs always hash to the
    same id, so re-crawls and duplicate sources collapse to one item.
    """
    digest = hashlib.sha256(
        silo.value.encode("utf-8") + b"\x00" + source_key.encode("utf-8")
    ).hexdigest()
    return digest[:16]


@dataclass(frozen=True)
class TermOccurrence:
    """One sighting of a term inside one field of one item.

    Offsets are 0-based half-open into the field's extracted plain text
    (multi-valued fields are newline-joined first).
    """

    item_id: str
    field_kind: FieldKind
    char_start: int
    char_end: int
    surface: str

    def sort_key(self) -> tuple:
        return (self.item_id, field_order(self.field_kind), self.char_start, self.char_end)


@dataclass
class TermRecord:
    """A normalized term with every occurrence and a cached metric vector."""

    key: str
    surfaces: dict[str, int] = field(default_factory=dict)
    occurrences: list[TermOccurrence] = field(default_factory=list)
    metrics: Optional[dict[str, float]] = None

    def add(self, occurrence: TermOccurrence) -> None:
        self.surfaces[occurrence.surface] = self.surfaces.get(occurrence.surface, 0) + 1
        self.occurrences.append(occurrence)

    @property
    def count(self) -> int:
        return len(self.occurrences)

    def display_surface(self) -> str:
        """Most frequent observed casing; ties resolve lexicographically."""
        if not self.surfaces:
            return self.key
        return min(self.surfaces, key=lambda s: (-self.surfaces[s], s))

    def item_ids(self) -> set[str]:
        return {occ.item_id for occ in self.occurrences}

    def silos_of(self, corpus: "Corpus") -> set[Silo]:
        return {corpus.item(occ.item_id).silo for occ in self.occurrences}


@dataclass
class PimItem:
    """One crawled information item: a mail, calendar event or bookmark."""

    id: str
    silo: Silo
    fields: dict[FieldKind, list[str]] = field(default_factory=dict)
    folder_path: tuple[str, ...] = ()
    timestamp: Optional[datetime] = None

    def text(self, kind: FieldKind) -> Optional[str]:
        """Plain text of a field; multi-valued fields join with newlines."""
        values = self.fields.get(kind)
        if not values:
            return None
        return "\n".join(values)

    def title(self) -> str:
        """Short human-readable handle for occurrence listings."""
        for kind in (FieldKind.MAIL_SUBJECT, FieldKind.EVENT_SUMMARY, FieldKind.BOOKMARK_TITLE):
            text = self.text(kind)
            if text:
                return text.splitlines()[0][:80]
        return self.id


def item_text(item: PimItem, kind: FieldKind) -> Optional[str]:
    return item.text(kind)


@dataclass
class FolderNode:
    name: str
    children: dict[str, "FolderNode"] = field(default_factory=dict)

    def walk(self, depth: int = 1) -> Iterator[tuple[str, int]]:
        """Yield (name, depth) for this node and all descendants."""
        yield self.name, depth
        for name in sorted(self.children):
            yield from self.children[name].walk(depth + 1)


@dataclass
class ManifestEntry:
    source: str
    format: str
    count: int
    warnings: list[str] = field(default_factory=list)


class Corpus:
    """Immutable collection of items plus per-silo folder trees.

    Items are kept in canonical order (silo, then id); every non-empty
    folder path of every item is reachable in its silo's tree.
    """

    def __init__(self, items: list[PimItem], manifest: Optional[list[ManifestEntry]] = None):
        self._items = sorted(items, key=lambda it: (silo_order(it.silo), it.id))
        self._by_id = {it.id: it for it in self._items}
        self.manifest: list[ManifestEntry] = list(manifest or [])
        self.folder_trees: dict[Silo, dict[str, FolderNode]] = {s: {} for s in Silo}
        for it in self._items:
            self._insert_path(it.silo, it.folder_path)

    def _insert_path(self, silo: Silo, path: tuple[str, ...]) -> None:
        level = self.folder_trees[silo]
        for segment in path:
            node = level.get(segment)
            if node is None:
                node = FolderNode(segment)
                level[segment] = node
            level = node.children

    @property
    def items(self) -> list[PimItem]:
        return self._items

    def item(self, item_id: str) -> PimItem:
        return self._by_id[item_id]

    def has_item(self, item_id: str) -> bool:
        return item_id in self._by_id

    def items_in(self, silo: Silo) -> list[PimItem]:
        return [it for it in self._items if it.silo == silo]

    def walk_folders(self, silo: Silo) -> Iterator[tuple[str, int]]:
        """Yield (folder name, depth) over the silo tree; root children are depth 1."""
        for name in sorted(self.folder_trees[silo]):
            yield from self.folder_trees[silo][name].walk(1)

    def folder_depth(self, silo: Silo, folder_name: str) -> Optional[int]:
        """Minimum depth of a folder with this (case-folded) name, if any."""
        wanted = folder_name.lower()
        best: Optional[int] = None
        for name, depth in self.walk_folders(silo):
            if name.lower() == wanted and (best is None or depth < best):
                best = depth
        return best

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "items": [_item_to_dict(it) for it in self._items],
            "folderTrees": {
                silo.value: _tree_to_list(self.folder_trees[silo]) for silo in Silo
            },
            "manifest": [
                {
                    "source": m.source,
                    "format": m.format,
                    "count": m.count,
                    "warnings": list(m.warnings),
                }
                for m in self.manifest
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=True) + "\n"

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()

    @classmethod
    def from_dict(cls, data: dict) -> "Corpus":
        items = [_item_from_dict(d) for d in data.get("items", [])]
        manifest = [
            ManifestEntry(
                source=m["source"],
                format=m["format"],
                count=m["count"],
                warnings=list(m.get("warnings", [])),
            )
            for m in data.get("manifest", [])
        ]
        return cls(items, manifest)

    @classmethod
    def from_json(cls, text: str) -> "Corpus":
        return cls.from_dict(json.loads(text))


def save_corpus(corpus: Corpus, path) -> None:
    from pathlib import Path

    Path(path).write_text(corpus.to_json(), encoding="utf-8")


def load_corpus(path) -> Corpus:
    from pathlib import Path

    return Corpus.from_json(Path(path).read_text(encoding="utf-8"))


def _format_timestamp(ts: datetime) -> str:
    ts = ts.astimezone(timezone.utc).replace(microsecond=0)
    return ts.strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_timestamp(text: str) -> datetime:
    return datetime.strptime(text, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=timezone.utc)


def _item_to_dict(item: PimItem) -> dict:
    return {
        "id": item.id,
        "silo": item.silo.value,
        "fields": {
            kind.value: list(values)
            for kind, values in sorted(item.fields.items(), key=lambda kv: field_order(kv[0]))
            if values
        },
        "folderPath": list(item.folder_path),
        "timestamp": _format_timestamp(item.timestamp) if item.timestamp else None,
    }


def _item_from_dict(data: dict) -> PimItem:
    return PimItem(
        id=data["id"],
        silo=Silo(data["silo"]),
        fields={FieldKind(k): list(v) for k, v in data.get("fields", {}).items()},
        folder_path=tuple(data.get("folderPath", [])),
        timestamp=parse_timestamp(data["timestamp"]) if data.get("timestamp") else None,
    )


def _tree_to_list(level: dict[str, FolderNode]) -> list[dict]:
    return [
        {"name": name, "children": _tree_to_list(level[name].children)}
        for name in sorted(level)
    ]
