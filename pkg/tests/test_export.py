from __future__ import annotations

import json
import random
import re

import pytest

from conceptminer.export import UnsupportedFormat, collect_concepts, export_graph
from conceptminer.extractors import CandidateSource, ConceptCandidate, ConceptType
from conceptminer.model import Corpus, FieldKind, PimItem, Silo, TermOccurrence
from conceptminer.textprep import build_term_index
from conceptminer.triage import Status, classify, coverage, new_session

from .gencorpus import random_corpus

# -- a tiny Turtle reader used only to validate well-formedness -----------------------

_TURTLE_TOKEN = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>\#[^\n]*)
    | (?P<iriref><[^<>"{}|^`\\\s]*>)
    | (?P<literal>"(?:[^"\\\n]|\\.)*")
    | (?P<number>-?\d+(?:\.\d+)?)
    | (?P<pname>[A-Za-z][\w-]*)?:(?P<local>[\w][\w.-]*)?
    | (?P<kw_a>\ba\b)
    | (?P<at>@prefix)
    | (?P<punct>[.;,])
    """,
    re.VERBOSE,
)


def _tokenize_turtle(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TURTLE_TOKEN.match(text, pos)
        if match is None:
            raise AssertionError(f"turtle: cannot tokenize at {text[pos:pos + 30]!r}")
        pos = match.end()
        kind = match.lastgroup
        if kind in ("ws", "comment"):
            continue
        if match.group("pname") is not None or (
            match.group(0).find(":") >= 0 and kind in ("pname", "local")
        ):
            tokens.append(("pname", match.group(0)))
        elif kind == "kw_a":
            tokens.append(("a", "a"))
        else:
            tokens.append((kind, match.group(0)))
    return tokens


def validate_turtle(text: str) -> None:
    """Assert the document matches the emitted Turtle subset's grammar."""
    tokens = _tokenize_turtle(text)
    prefixes: set[str] = set()
    i = 0

    def expect(kind: str) -> tuple[str, str]:
        nonlocal i
        assert i < len(tokens), f"turtle: unexpected end, wanted {kind}"
        token = tokens[i]
        assert token[0] == kind or (kind == "punct" and token[0] == "punct"), (
            f"turtle: wanted {kind}, got {token}"
        )
        i += 1
        return token

    def check_pname(value: str) -> None:
        prefix = value.split(":", 1)[0]
        assert prefix in prefixes, f"turtle: undeclared prefix {prefix!r}"

    def term_is_object(token: tuple[str, str]) -> bool:
        return token[0] in ("pname", "literal", "number", "iriref")

    while i < len(tokens):
        if tokens[i][0] == "at":
            i += 1
            name = expect("pname")
            assert name[1].endswith(":"), "prefix declaration needs a ':' name"
            expect("iriref")
            dot = expect("punct")
            assert dot[1] == "."
            prefixes.add(name[1][:-1])
            continue

        subject = expect("pname")
        check_pname(subject[1])
        while True:
            verb = tokens[i]
            if verb[0] == "a":
                i += 1
            else:
                verb = expect("pname")
                check_pname(verb[1])
            obj = tokens[i]
            assert term_is_object(obj), f"turtle: bad object {obj}"
            if obj[0] == "pname":
                check_pname(obj[1])
            i += 1
            punct = expect("punct")
            if punct[1] == ".":
                break
            assert punct[1] == ";", f"turtle: unexpected {punct}"


# -- fixtures ---------------------------------------------------------------------------


def _world():
    corpus = Corpus(
        [
            PimItem(
                id="m1",
                silo=Silo.MAIL,
                fields={FieldKind.MAIL_SUBJECT: ["MLKG telco again"]},
            ),
            PimItem(
                id="e1", silo=Silo.CALENDAR, fields={FieldKind.EVENT_SUMMARY: ["MLKG review"]}
            ),
            PimItem(
                id="b1",
                silo=Silo.BOOKMARK,
                fields={FieldKind.BOOKMARK_TITLE: ['MLKG "wiki"\nand notes']},
            ),
        ]
    )
    index = build_term_index(corpus)
    session = new_session(corpus, index, [])
    return corpus, index, session


def test_promising_concept_nodes_and_edges():
    corpus, index, session = _world()
    classify(session, index, "mlkg", Status.PROMISING, ConceptType.PROJECT)
    payload = json.loads(export_graph(session, corpus, index, "json"))
    assert len(payload["concepts"]) == 1
    concept = payload["concepts"][0]
    assert concept["label"] == "MLKG"
    assert concept["type"] == "project"
    assert len(concept["occursIn"]) == 3
    assert len(payload["items"]) == 3


def test_empty_promising_set_graph():
    corpus, index, session = _world()
    payload = json.loads(export_graph(session, corpus, index, "json"))
    assert payload["concepts"] == []
    assert len(payload["items"]) == 3


def test_turtle_reparses():
    corpus, index, session = _world()
    classify(session, index, "mlkg", Status.PROMISING, ConceptType.PROJECT)
    classify(session, index, "telco", Status.PROMISING)
    text = export_graph(session, corpus, index, "ttl").decode("utf-8")
    validate_turtle(text)
    assert 'cm:label "MLKG"' in text
    assert "cm:occursIn item:m1" in text


def test_turtle_escapes_quotes_and_newlines():
    corpus, index, session = _world()
    classify(session, index, "wiki", Status.PROMISING)
    text = export_graph(session, corpus, index, "ttl").decode("utf-8")
    validate_turtle(text)
    assert '\\"wiki\\"' in text


def test_unsupported_format():
    corpus, index, session = _world()
    with pytest.raises(UnsupportedFormat):
        export_graph(session, corpus, index, "xml")


def test_export_deterministic():
    corpus, index, session = _world()
    classify(session, index, "mlkg", Status.PROMISING)
    first = export_graph(session, corpus, index, "ttl")
    second = export_graph(session, corpus, index, "ttl")
    assert first == second


def test_export_items_match_coverage_on_random_sessions():
    rng = random.Random(606)
    for _ in range(10):
        corpus = random_corpus(rng, 25)
        index = build_term_index(corpus)
        session = new_session(corpus, index, [])
        keys = list(index.keys())
        for key in rng.sample(keys, min(8, len(keys))):
            classify(session, index, key, rng.choice([Status.PROMISING, Status.DISCARDED]))
        payload = json.loads(export_graph(session, corpus, index, "json"))
        exported_items = {
            occ["itemId"] for c in payload["concepts"] for occ in c["occursIn"]
        }
        report = coverage(session, corpus, index)
        covered_total = sum(c.covered for c in report.silos.values())
        assert len(exported_items) == covered_total


def test_candidate_label_exported_as_concept():
    corpus, index, session = _world()
    anna = ConceptCandidate(
        "Anna Brown",
        ConceptType.PERSON,
        [TermOccurrence("m1", FieldKind.MAIL_SUBJECT, 0, 4, "MLKG")],
        CandidateSource.MAIL_HEADER,
    )
    session.candidates.append(anna)
    classify(session, index, "Anna Brown", Status.PROMISING)
    concepts = collect_concepts(session, corpus, index)
    assert [c.label for c in concepts] == ["Anna Brown"]
    assert concepts[0].concept_type is ConceptType.PERSON
