"""Plain-text conversion and tokenization of item fields.

Produces the single-word term index the ranking and triage stages work on.
Tokens made of nothing but symbols or digits never become terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from html.parser import HTMLParser
from typing import Iterator, Optional

from .model import Corpus, FieldKind, TermOccurrence, TermRecord, field_order

# Field kinds whose text feeds the term index. Address, URL and date fields
# are deliberately absent: they feed the schema extractors instead.
INDEXED_FIELDS: tuple[FieldKind, ...] = (
    FieldKind.MAIL_SUBJECT,
    FieldKind.MAIL_BODY,
    FieldKind.MAIL_FOLDER,
    FieldKind.EVENT_SUMMARY,
    FieldKind.EVENT_DESCRIPTION,
    FieldKind.EVENT_LOCATION,
    FieldKind.BOOKMARK_TITLE,
    FieldKind.BOOKMARK_DESCRIPTION,
    FieldKind.BOOKMARK_FOLDER,
)

MIN_TERM_LENGTH = 2


class TokenClass(Enum):
    WORD = "word"
    NUMBER = "number"
    SYMBOL = "symbol"
    MIXED = "mixed"


@dataclass(frozen=True)
class Token:
    surface: str
    char_start: int
    char_end: int
    token_class: TokenClass


# Alphanumeric cores joined by apostrophes or hyphens, else runs of
# non-whitespace symbols. [^\W_] is "alphanumeric without underscore".
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’\-][^\W_]+)*|(?:[^\w\s]|_)+")


def classify_token(surface: str) -> TokenClass:
    has_alpha = any(c.isalpha() for c in surface)
    has_digit = any(c.isdigit() for c in surface)
    if has_alpha and has_digit:
        return TokenClass.MIXED
    if has_alpha:
        return TokenClass.WORD
    if has_digit:
        return TokenClass.NUMBER
    return TokenClass.SYMBOL


def tokenize(text: str) -> list[Token]:
    """Split text into classified tokens with exact character offsets."""
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        surface = match.group(0)
        tokens.append(
            Token(surface, match.start(), match.end(), classify_token(surface))
        )
    return tokens


# -- HTML to plain text ------------------------------------------------------

_BLOCK_TAGS = {
    "p", "div", "br", "li", "ul", "ol", "dl", "dt", "dd", "tr", "table",
    "h1", "h2", "h3", "h4", "h5", "h6", "blockquote", "pre", "hr",
    "section", "article", "header", "footer", "form", "fieldset", "address",
}
_DROP_TAGS = {"script", "style"}


class _TextExtractor(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []
        self._drop_depth = 0

    def handle_starttag(self, tag: str, attrs) -> None:
        if tag in _DROP_TAGS:
            self._drop_depth += 1
        elif tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_endtag(self, tag: str) -> None:
        if tag in _DROP_TAGS:
            self._drop_depth = max(0, self._drop_depth - 1)
        elif tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_data(self, data: str) -> None:
        if not self._drop_depth:
            self.parts.append(data)


_TAG_FALLBACK_RE = re.compile(r"<[^>]*>")


def html_to_text(html: str) -> str:
    """Strip tags, decode entities, turn block elements into newlines.

    Whitespace runs collapse to single spaces within lines; script and
    style content disappears. Best effort on malformed markup.
    """
    extractor = _TextExtractor()
    try:
        extractor.feed(html)
        extractor.close()
        raw = "".join(extractor.parts)
    except Exception:
        raw = _TAG_FALLBACK_RE.sub(" ", html)
    lines = [" ".join(line.split()) for line in raw.split("\n")]
    return "\n".join(line for line in lines if line)


# -- term index ---------------------------------------------------------------


class TermIndex:
    """Map of normalized term key to TermRecord, in document order."""

    def __init__(self, records: dict[str, TermRecord], corpus_ref: str, ngrams: bool = False):
        self.records = records
        self.corpus_ref = corpus_ref
        self.ngrams = ngrams

    def __contains__(self, key: str) -> bool:
        return key in self.records

    def __len__(self) -> int:
        return len(self.records)

    def get(self, key: str) -> Optional[TermRecord]:
        return self.records.get(key)

    def keys(self) -> Iterator[str]:
        return iter(self.records)

    def values(self) -> Iterator[TermRecord]:
        return iter(self.records.values())


def _word_ngrams(tokens: list[Token], text: str) -> Iterator[tuple[str, int, int]]:
    """Bigram/trigram spans over consecutive Word tokens within one field."""
    for size in (2, 3):
        for i in range(len(tokens) - size + 1):
            window = tokens[i : i + size]
            if any(t.token_class is not TokenClass.WORD for t in window):
                continue
            start, end = window[0].char_start, window[-1].char_end
            yield text[start:end], start, end


def build_term_index(corpus: Corpus, ngrams: bool = False) -> TermIndex:
    """Tokenize the indexed fields of every item and group terms by key.

    Occurrence order is document order: items in canonical corpus order,
    fields in declaration order, tokens left to right.
    """
    records: dict[str, TermRecord] = {}

    def add(key: str, occurrence: TermOccurrence) -> None:
        record = records.get(key)
        if record is None:
            record = TermRecord(key)
            records[key] = record
        record.add(occurrence)

    for item in corpus.items:
        for kind in sorted(item.fields, key=field_order):
            if kind not in INDEXED_FIELDS:
                continue
            text = item.text(kind)
            if not text:
                continue
            tokens = tokenize(text)
            for token in tokens:
                if token.token_class in (TokenClass.SYMBOL, TokenClass.NUMBER):
                    continue
                if len(token.surface) < MIN_TERM_LENGTH:
                    continue
                add(
                    token.surface.lower(),
                    TermOccurrence(item.id, kind, token.char_start, token.char_end, token.surface),
                )
            if ngrams:
                for surface, start, end in _word_ngrams(tokens, text):
                    add(surface.lower(), TermOccurrence(item.id, kind, start, end, surface))

    return TermIndex(records, corpus.content_hash(), ngrams=ngrams)
