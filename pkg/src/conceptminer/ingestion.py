"""Crawler: parse raw mail, calendar and bookmark sources into items.

Supported inputs: RFC 4155 mbox, directories of RFC 5322 .eml files,
RFC 5545 iCalendar streams, and Netscape bookmark HTML. Parsers are
total: malformed input yields skips and manifest warnings, never crashes.
"""

from __future__ import annotations

import hashlib
import logging
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from email import policy
from email.parser import BytesParser
from email.utils import parsedate_to_datetime
from enum import Enum
from html.parser import HTMLParser
from pathlib import Path
from typing import Optional

from .model import Corpus, FieldKind, ManifestEntry, PimItem, Silo, make_item_id
from .textprep import html_to_text

logger = logging.getLogger(__name__)


class UnreadableSource(Exception):
    """The source file or directory cannot be read at all."""


class MalformedMessage(Exception):
    """One message/component is broken; the parser skips it."""


class SourceFormat(str, Enum):
    MBOX = "mbox"
    EML_DIRECTORY = "eml-directory"
    ICS = "ics"
    BOOKMARKS_HTML = "bookmarks-html"


@dataclass(frozen=True)
class SourceSpec:
    path: Path
    format: SourceFormat


_PARSER = BytesParser(policy=policy.default)


def _header(msg, name: str) -> Optional[str]:
    try:
        value = msg.get(name)
        return str(value) if value is not None else None
    except Exception:
        return None


def _header_all(msg, name: str) -> list[str]:
    try:
        return [str(v) for v in (msg.get_all(name) or [])]
    except Exception:
        return []


def _decode_part(part) -> str:
    try:
        return part.get_content()
    except Exception:
        payload = part.get_payload(decode=True)
        if payload is None:
            payload = str(part.get_payload()).encode("utf-8", "replace")
        return payload.decode("utf-8", "replace")


def _message_to_item(raw: bytes, folder: tuple[str, ...]) -> PimItem:
    try:
        msg = _PARSER.parsebytes(raw)
    except Exception as exc:
        raise MalformedMessage(f"unparseable message: {exc}") from exc

    fields: dict[FieldKind, list[str]] = {}

    subject = _header(msg, "Subject")
    if subject:
        fields[FieldKind.MAIL_SUBJECT] = [subject]
    froms = _header_all(msg, "From")
    if froms:
        fields[FieldKind.MAIL_FROM] = froms
    tos = _header_all(msg, "To") + _header_all(msg, "Cc")
    if tos:
        fields[FieldKind.MAIL_TO] = tos

    timestamp = None
    date_header = _header(msg, "Date")
    if date_header:
        fields[FieldKind.MAIL_DATE] = [date_header]
        try:
            parsed = parsedate_to_datetime(date_header)
            if parsed.tzinfo is None:
                parsed = parsed.replace(tzinfo=timezone.utc)
            timestamp = parsed.astimezone(timezone.utc)
        except Exception:
            timestamp = None

    # Attachments are dropped; only the first text/plain or text/html body
    # part is used, preferring plain.
    body_text = None
    try:
        body_part = msg.get_body(preferencelist=("plain", "html"))
    except Exception:
        body_part = None
    if body_part is not None:
        content = _decode_part(body_part)
        if body_part.get_content_type() == "text/html":
            content = html_to_text(content)
        if content.strip():
            body_text = content.strip("\n")
    if body_text:
        fields[FieldKind.MAIL_BODY] = [body_text]

    if folder:
        fields[FieldKind.MAIL_FOLDER] = list(folder)

    message_id = _header(msg, "Message-ID")
    source_key = message_id.strip() if message_id else "bytes:" + hashlib.sha256(raw).hexdigest()

    if not fields:
        raise MalformedMessage("message without any usable field")

    return PimItem(
        id=make_item_id(Silo.MAIL, source_key),
        silo=Silo.MAIL,
        fields=fields,
        folder_path=folder,
        timestamp=timestamp,
    )


def parse_mbox(data: bytes, folder: tuple[str, ...] = ()) -> tuple[list[PimItem], list[str]]:
    """Parse an RFC 4155 mbox stream: one item per "From "-delimited message."""
    items: list[PimItem] = []
    warnings: list[str] = []
    current: list[bytes] = []
    chunks: list[bytes] = []
    prev_blank = True
    in_message = False
    for line in data.splitlines(keepends=True):
        if prev_blank and line.startswith(b"From "):
            if in_message and current:
                chunks.append(b"".join(current))
            current = []
            in_message = True
        elif in_message:
            # mboxrd-style unquoting of ">From " at line start
            if line.startswith(b">") and line.lstrip(b">").startswith(b"From "):
                line = line[1:]
            current.append(line)
        prev_blank = line.strip() == b""
    if in_message and current:
        chunks.append(b"".join(current))

    for n, chunk in enumerate(chunks, start=1):
        if not chunk.strip():
            continue
        try:
            items.append(_message_to_item(chunk, folder))
        except MalformedMessage as exc:
            warnings.append(f"message {n}: {exc}")
    return items, warnings


def parse_eml_directory(path: Path) -> tuple[list[PimItem], list[str]]:
    """Parse a directory tree of .eml files; subdirectories become mail folders."""
    path = Path(path)
    if not path.is_dir():
        raise UnreadableSource(f"not a directory: {path}")
    items: list[PimItem] = []
    warnings: list[str] = []
    for file in sorted(path.rglob("*")):
        if not file.is_file():
            continue
        rel = file.relative_to(path)
        if file.suffix.lower() != ".eml":
            warnings.append(f"skipped non-mail file: {rel}")
            continue
        try:
            raw = file.read_bytes()
        except OSError as exc:
            warnings.append(f"unreadable file {rel}: {exc}")
            continue
        try:
            items.append(_message_to_item(raw, tuple(rel.parent.parts)))
        except MalformedMessage as exc:
            warnings.append(f"{rel}: {exc}")
    return items, warnings


# -- iCalendar ---------------------------------------------------------------

_ICS_ESCAPES = {"\\\\": "\\", "\\n": "\n", "\\N": "\n", "\\,": ",", "\\;": ";"}


def _unescape_ics(value: str) -> str:
    out = []
    i = 0
    while i < len(value):
        pair = value[i : i + 2]
        if pair in _ICS_ESCAPES:
            out.append(_ICS_ESCAPES[pair])
            i += 2
        else:
            out.append(value[i])
            i += 1
    return "".join(out)


def _unfold_ics(text: str) -> list[str]:
    lines: list[str] = []
    for raw in text.splitlines():
        if raw[:1] in (" ", "\t") and lines:
            lines[-1] += raw[1:]
        else:
            lines.append(raw)
    return lines


def _parse_ics_datetime(value: str) -> Optional[datetime]:
    value = value.strip()
    try:
        if re.fullmatch(r"\d{8}", value):
            return datetime.strptime(value, "%Y%m%d").replace(tzinfo=timezone.utc)
        if re.fullmatch(r"\d{8}T\d{6}Z?", value):
            dt = datetime.strptime(value.rstrip("Z"), "%Y%m%dT%H%M%S")
            # Floating times are normalized to UTC; finer zone handling is
            # out of scope for term mining.
            return dt.replace(tzinfo=timezone.utc)
    except ValueError:
        return None
    return None


def parse_ics(data: bytes) -> tuple[list[PimItem], list[str]]:
    """Parse an RFC 5545 stream: one item per VEVENT, other components ignored."""
    text = data.decode("utf-8", "replace")
    items: list[PimItem] = []
    warnings: list[str] = []

    event: Optional[dict[str, str]] = None
    nested = 0
    for line in _unfold_ics(text):
        if not line.strip():
            continue
        name, _, value = line.partition(":")
        if not _:
            if event is not None:
                warnings.append(f"ignored malformed line in VEVENT: {line[:60]!r}")
            continue
        prop = name.split(";", 1)[0].strip().upper()
        if prop == "BEGIN":
            component = value.strip().upper()
            if component == "VEVENT" and event is None:
                event = {}
            elif event is not None:
                nested += 1
            continue
        if prop == "END":
            component = value.strip().upper()
            if event is not None and nested and component != "VEVENT":
                nested -= 1
                continue
            if component == "VEVENT" and event is not None and not nested:
                item = _event_to_item(event, warnings)
                if item is not None:
                    items.append(item)
                event = None
            continue
        if event is not None and not nested:
            event[prop] = value
    if event is not None:
        warnings.append("unterminated VEVENT skipped")
    return items, warnings


def _event_to_item(props: dict[str, str], warnings: list[str]) -> Optional[PimItem]:
    fields: dict[FieldKind, list[str]] = {}
    mapping = {
        "SUMMARY": FieldKind.EVENT_SUMMARY,
        "DESCRIPTION": FieldKind.EVENT_DESCRIPTION,
        "LOCATION": FieldKind.EVENT_LOCATION,
    }
    for prop, kind in mapping.items():
        if prop in props:
            value = _unescape_ics(props[prop])
            if value:
                fields[kind] = [value]

    timestamp = None
    for prop, kind in (("DTSTART", FieldKind.EVENT_START), ("DTEND", FieldKind.EVENT_END)):
        if prop in props:
            fields[kind] = [props[prop].strip()]
            parsed = _parse_ics_datetime(props[prop])
            if parsed is None:
                warnings.append(f"unparseable {prop}: {props[prop][:40]!r}")
            elif prop == "DTSTART":
                timestamp = parsed

    if not fields:
        warnings.append("VEVENT without usable fields skipped")
        return None

    uid = props.get("UID", "").strip()
    source_key = uid or "props:" + hashlib.sha256(
        repr(sorted(props.items())).encode("utf-8")
    ).hexdigest()

    return PimItem(
        id=make_item_id(Silo.CALENDAR, source_key),
        silo=Silo.CALENDAR,
        fields=fields,
        folder_path=(),
        timestamp=timestamp,
    )


# -- Netscape bookmarks --------------------------------------------------------


class _BookmarkParser(HTMLParser):
    """Pull anchors and their H3 folder chain out of a Netscape bookmark file."""

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.records: list[tuple[str, str, Optional[str], tuple[str, ...]]] = []
        self._stack: list[Optional[str]] = []
        self._pending_folder: Optional[str] = None
        self._h3_chars: Optional[list[str]] = None
        self._a_chars: Optional[list[str]] = None
        self._a_href: Optional[str] = None
        self._dd_chars: Optional[list[str]] = None

    def _folder_path(self) -> tuple[str, ...]:
        return tuple(name for name in self._stack if name)

    def _close_anchor(self) -> None:
        if self._a_href is not None:
            title = "".join(self._a_chars or []).strip()
            self.records.append((self._a_href, title, None, self._folder_path()))
        self._a_href = None
        self._a_chars = None

    def _close_dd(self) -> None:
        if self._dd_chars is not None and self.records:
            description = " ".join("".join(self._dd_chars).split())
            if description:
                url, title, _, path = self.records[-1]
                self.records[-1] = (url, title, description, path)
        self._dd_chars = None

    def _close_h3(self) -> None:
        # Sloppy files leave headings unclosed; a structural tag ends them.
        if self._h3_chars is not None:
            self._pending_folder = "".join(self._h3_chars).strip() or None
            self._h3_chars = None

    def handle_starttag(self, tag: str, attrs) -> None:
        if tag == "h3":
            self._close_dd()
            self._h3_chars = []
        elif tag == "dl":
            self._close_h3()
            self._close_dd()
            self._stack.append(self._pending_folder)
            self._pending_folder = None
        elif tag == "a":
            self._close_h3()
            self._close_dd()
            self._close_anchor()
            self._a_href = dict(attrs).get("href") or ""
            self._a_chars = []
        elif tag == "dd":
            self._close_h3()
            self._close_anchor()
            self._dd_chars = []
        elif tag == "dt":
            self._close_h3()
            self._close_dd()
            self._close_anchor()

    def handle_endtag(self, tag: str) -> None:
        if tag == "h3":
            self._close_h3()
        elif tag == "dl":
            self._close_dd()
            self._close_anchor()
            if self._stack:
                self._stack.pop()
        elif tag == "a":
            self._close_anchor()

    def handle_data(self, data: str) -> None:
        if self._h3_chars is not None:
            self._h3_chars.append(data)
        elif self._a_chars is not None:
            self._a_chars.append(data)
        elif self._dd_chars is not None:
            self._dd_chars.append(data)

    def finalize(self) -> None:
        self._close_dd()
        self._close_anchor()


def parse_bookmarks_html(data: bytes) -> tuple[list[PimItem], list[str]]:
    """Parse Netscape bookmark HTML: one item per anchor, H3 chain as folders."""
    text = data.decode("utf-8", "replace")
    parser = _BookmarkParser()
    warnings: list[str] = []
    try:
        parser.feed(text)
        parser.close()
    except Exception as exc:
        warnings.append(f"malformed document, emitted items parsed so far: {exc}")
    parser.finalize()

    items: list[PimItem] = []
    for url, title, description, folder in parser.records:
        fields: dict[FieldKind, list[str]] = {
            FieldKind.BOOKMARK_TITLE: [title],
            FieldKind.BOOKMARK_URL: [url],
        }
        if description:
            fields[FieldKind.BOOKMARK_DESCRIPTION] = [description]
        if folder:
            fields[FieldKind.BOOKMARK_FOLDER] = list(folder)
        items.append(
            PimItem(
                id=make_item_id(Silo.BOOKMARK, url + "\x00" + title),
                silo=Silo.BOOKMARK,
                fields=fields,
                folder_path=folder,
            )
        )
    return items, warnings


# -- crawl ---------------------------------------------------------------------


def crawl(specs: list[SourceSpec]) -> Corpus:
    """Parse every source and merge into one deduplicated Corpus."""
    all_items: list[PimItem] = []
    seen: set[str] = set()
    manifest: list[ManifestEntry] = []

    for spec in specs:
        path = Path(spec.path)
        if spec.format == SourceFormat.EML_DIRECTORY:
            items, warnings = parse_eml_directory(path)
        else:
            try:
                data = path.read_bytes()
            except OSError as exc:
                raise UnreadableSource(f"cannot read {path}: {exc}") from exc
            if spec.format == SourceFormat.MBOX:
                items, warnings = parse_mbox(data, folder=(path.stem,))
            elif spec.format == SourceFormat.ICS:
                items, warnings = parse_ics(data)
            elif spec.format == SourceFormat.BOOKMARKS_HTML:
                items, warnings = parse_bookmarks_html(data)
            else:
                raise UnreadableSource(f"unknown format: {spec.format}")
        manifest.append(ManifestEntry(str(path), spec.format.value, len(items), warnings))
        for item in items:
            if item.id not in seen:
                seen.add(item.id)
                all_items.append(item)
        logger.info("parsed %s: %d items, %d warnings", path, len(items), len(warnings))

    return Corpus(all_items, manifest)
