from __future__ import annotations

import random

from conceptminer.extractors import (
    ConceptType,
    Gazetteer,
    extract_organizations,
    extract_persons,
    extract_places,
    rediscover,
    rediscover_all,
    registrable_label,
)
from conceptminer.matching import lower_preserve
from conceptminer.model import Corpus, FieldKind, PimItem, Silo

from .gencorpus import random_corpus
from .test_matching import naive_bounded_scan


def _mail(item_id, **fields):
    mapped = {FieldKind(k): v if isinstance(v, list) else [v] for k, v in fields.items()}
    return PimItem(id=item_id, silo=Silo.MAIL, fields=mapped)


def _event(item_id, location):
    return PimItem(
        id=item_id, silo=Silo.CALENDAR, fields={FieldKind.EVENT_LOCATION: [location]}
    )


def _bookmark(item_id, title, url):
    return PimItem(
        id=item_id,
        silo=Silo.BOOKMARK,
        fields={FieldKind.BOOKMARK_TITLE: [title], FieldKind.BOOKMARK_URL: [url]},
    )


# -- persons ------------------------------------------------------------------------


def test_person_from_local_part_and_single_part_rejected():
    corpus = Corpus(
        [
            _mail(
                "m1",
                MailFrom="Koehler <koehler@mercurtainment.com>",
                MailTo="anna.brown@x.org",
            )
        ]
    )
    persons = extract_persons(corpus)
    assert [p.label for p in persons] == ["Anna Brown"]
    (anna,) = persons
    assert anna.concept_type is ConceptType.PERSON
    occ = anna.occurrences[0]
    assert occ.field_kind is FieldKind.MAIL_TO
    assert occ.surface == "anna.brown"


def test_person_from_display_name():
    corpus = Corpus([_mail("m1", MailFrom="John Smith <js@x.org>")])
    persons = extract_persons(corpus)
    assert [p.label for p in persons] == ["John Smith"]
    assert persons[0].occurrences[0].surface == "John Smith"


def test_person_family_comma_given_reordered():
    corpus = Corpus([_mail("m1", MailFrom='"Brown, Anna" <ab@x.org>')])
    persons = extract_persons(corpus)
    assert [p.label for p in persons] == ["Anna Brown"]


def test_person_bare_role_address_rejected():
    corpus = Corpus([_mail("m1", MailFrom="info@x.org")])
    assert extract_persons(corpus) == []


def test_person_duplicates_merge_case_folded():
    corpus = Corpus(
        [
            _mail("m1", MailFrom="Anna Brown <ab@x.org>"),
            _mail("m2", MailFrom="anna.brown@x.org"),
        ]
    )
    persons = extract_persons(corpus)
    assert len(persons) == 1
    assert len(persons[0].occurrences) == 2


def test_person_extraction_idempotent():
    rng = random.Random(21)
    corpus = random_corpus(rng, 30)
    assert extract_persons(corpus) == extract_persons(corpus)


# -- places ---------------------------------------------------------------------------


def _gazetteer():
    return Gazetteer(
        [
            ("Kaiserslautern", ConceptType.PLACE, "Kaiserslautern"),
            ("Germany", ConceptType.PLACE, "Germany"),
            ("New York", ConceptType.PLACE, "New York"),
            ("York", ConceptType.PLACE, "York"),
        ]
    )


def test_places_two_disjoint_matches():
    corpus = Corpus([_event("e1", "Kaiserslautern, Germany")])
    places = extract_places(corpus, _gazetteer())
    assert [p.label for p in places] == ["Germany", "Kaiserslautern"]


def test_places_no_hit():
    corpus = Corpus([_event("e1", "Room 2.31")])
    assert extract_places(corpus, _gazetteer()) == []


def test_places_longest_match_wins():
    corpus = Corpus([_event("e1", "New York")])
    places = extract_places(corpus, _gazetteer())
    assert [p.label for p in places] == ["New York"]


def test_places_only_event_location_fields():
    corpus = Corpus(
        [
            _mail("m1", MailSubject="Germany trip"),
            _bookmark("b1", "Germany guide", "https://travel.example.org/"),
        ]
    )
    assert extract_places(corpus, _gazetteer()) == []


def test_bundled_gazetteer_loads():
    gazetteer = Gazetteer.bundled()
    assert len(gazetteer.entries) >= 450
    hits = gazetteer.match("Meet in Kaiserslautern")
    assert [entry[2] for _, _, entry in hits] == ["Kaiserslautern"]


# -- organizations ------------------------------------------------------------------------


def test_org_merges_mail_domain_and_bookmark_url():
    corpus = Corpus(
        [
            _mail("m1", MailFrom="koehler@mercurtainment.com"),
            _bookmark("b1", "Careers", "https://www.mercurtainment.com/careers"),
        ]
    )
    orgs = extract_organizations(corpus)
    assert [o.label for o in orgs] == ["Mercurtainment"]
    assert len(orgs[0].occurrences) == 2
    for occ in orgs[0].occurrences:
        assert occ.surface.lower() == "mercurtainment"


def test_org_freemail_stoplisted():
    corpus = Corpus([_mail("m1", MailFrom="someone@gmail.com")])
    assert extract_organizations(corpus) == []


def test_org_empty_corpus():
    assert extract_organizations(Corpus([])) == []


def test_registrable_label_two_level_suffix():
    suffixes = {"com", "co.uk"}
    assert registrable_label("www.widgets.co.uk", suffixes) == "widgets"
    assert registrable_label("mercurtainment.com", suffixes) == "mercurtainment"
    assert registrable_label("10.0.0.1", suffixes) is None
    assert registrable_label("localhost", suffixes) is None


# -- rediscovery ---------------------------------------------------------------------------


def test_rediscover_in_bookmark_title():
    corpus = Corpus(
        [
            _mail("m1", MailFrom="k@mercurtainment.com"),
            _bookmark("b1", "Mercurtainment Careers", "https://example.org/"),
        ]
    )
    occurrences = rediscover("Mercurtainment", corpus)
    titles = [o for o in occurrences if o.field_kind is FieldKind.BOOKMARK_TITLE]
    assert len(titles) == 1
    assert titles[0].surface == "Mercurtainment"


def test_rediscover_across_three_silos():
    corpus = Corpus(
        [
            _mail("m1", MailSubject="MLKG telco"),
            PimItem(
                id="e1", silo=Silo.CALENDAR, fields={FieldKind.EVENT_SUMMARY: ["MLKG review"]}
            ),
            PimItem(
                id="b1",
                silo=Silo.BOOKMARK,
                fields={FieldKind.BOOKMARK_FOLDER: ["MLKG"]},
                folder_path=("MLKG",),
            ),
        ]
    )
    occurrences = rediscover("mlkg", corpus)
    silos = {corpus.item(o.item_id).silo for o in occurrences}
    assert silos == {Silo.MAIL, Silo.CALENDAR, Silo.BOOKMARK}


def test_rediscover_absent_label():
    corpus = Corpus([_mail("m1", MailSubject="nothing here")])
    assert rediscover("zephyr", corpus) == []


def test_rediscover_no_partial_word_matches():
    corpus = Corpus([_mail("m1", MailSubject="Yorkshire")])
    assert rediscover("York", corpus) == []


def test_rediscover_equals_naive_scan_on_random_corpora():
    rng = random.Random(77)
    labels = ["alpha", "MLKG", "new york", "tango", "kilo lima", "zzz"]
    for _ in range(15):
        corpus = random_corpus(rng, rng.randint(5, 50))
        batched = rediscover_all(labels, corpus)
        for label in labels:
            expected = []
            for item in corpus.items:
                for kind in sorted(item.fields, key=lambda k: list(FieldKind).index(k)):
                    text = item.text(kind)
                    if not text:
                        continue
                    for start, end in naive_bounded_scan(text, label):
                        expected.append((item.id, kind, start, end))
            got = [
                (o.item_id, o.field_kind, o.char_start, o.char_end)
                for o in batched[label]
            ]
            assert got == expected, label


def test_rediscover_on_100_random_texts():
    rng = random.Random(88)
    vocabulary = ["york", "new york", "ab", "a", "mlkg", "kaiserslautern"]
    for _ in range(100):
        words = [rng.choice(["new", "york", "ab", "x", "MLKG", "-", "7"]) for _ in range(30)]
        text = " ".join(words)
        corpus = Corpus([_mail("m1", MailBody=text)])
        for label in vocabulary:
            got = [
                (o.char_start, o.char_end)
                for o in rediscover(label, corpus)
                if o.field_kind is FieldKind.MAIL_BODY
            ]
            assert got == naive_bounded_scan(text, label), (text, label)
