#!/usr/bin/env python3
"""Regenerate the bundled demo corpus under src/conceptminer/data/scenario/.

Everything is deterministic: fixed message ids, dates and texts, so crawling
the output always yields the same corpus hash. Mail bodies deliberately
contain exactly one date mention ("11th February", matching the MLKG telco
event) so the temporal-link demo stays unambiguous.
"""

from __future__ import annotations

import shutil
from email.utils import format_datetime
from datetime import datetime, timezone
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1] / "src" / "conceptminer" / "data" / "scenario"

AGENDA_SNIPPET = (
    "Agenda for the telco: dataset cleaning status, gazetteer matching results, "
    "entity linking experiments, and the roadmap for the knowledge graph construction "
    "milestone next quarter."
)

# (folder, filename, from, to, date(y,m,d,h), subject, body, content_type)
MAILS = [
    (
        "Projects/MLKG",
        "telco-invite.eml",
        "Koehler <koehler@mercurtainment.com>",
        "Anna Brown <anna.brown@mercurtainment.com>",
        (2019, 2, 5, 10),
        "MLKG Telco",
        "Hi Anna,\n\n"
        "the MLKG telco takes place on 11th February as discussed. Dial-in details\n"
        "follow in the calendar invite.\n\n"
        + AGENDA_SNIPPET
        + "\n\nBest,\nKoehler\n",
        "plain",
    ),
    (
        "Projects/MLKG",
        "kickoff.eml",
        "Anna Brown <anna.brown@mercurtainment.com>",
        "Koehler <koehler@mercurtainment.com>",
        (2019, 1, 14, 9),
        "MLKG kickoff notes",
        "Hello Koehler,\n\n"
        "thanks for a productive kickoff. We agreed that MLKG focuses on mining\n"
        "concepts from personal data silos and linking them into a lightweight\n"
        "knowledge graph. Machine learning comes in for the ranking heuristics.\n\n"
        "Anna\n",
        "plain",
    ),
    (
        "Projects/MLKG",
        "dataset.eml",
        "David Fischer <david.fischer@dataforge.dev>",
        "koehler@mercurtainment.com",
        (2019, 2, 18, 14),
        "MLKG dataset drop",
        "Hi,\n\n"
        "the anonymized corpus snapshot is ready on the dataforge portal. It bundles\n"
        "mail archives, calendars and bookmark collections from the pilot group.\n"
        "Checksums are in the manifest file next to the download.\n\n"
        "Cheers, David\n",
        "plain",
    ),
    (
        "Projects/MLKG",
        "review.eml",
        "Koehler <koehler@mercurtainment.com>",
        "anna.brown@mercurtainment.com, david.fischer@dataforge.dev",
        (2019, 3, 11, 16),
        "Re: MLKG quarterly review",
        "Team,\n\n"
        "the quarterly review went well. Reviewers liked the gazetteer precision\n"
        "numbers and asked for a deeper error analysis of the tokenizer on noisy\n"
        "bookmark titles. Action items are tracked on the wiki:\n"
        "https://wiki.mercurtainment.com/mlkg\n\n"
        "Koehler\n",
        "plain",
    ),
    (
        "Projects/MLKG",
        "minutes.eml",
        "Anna Brown <anna.brown@mercurtainment.com>",
        "koehler@mercurtainment.com",
        (2019, 2, 12, 8),
        "Telco minutes",
        "Minutes from yesterday:\n\n"
        + AGENDA_SNIPPET
        + "\n\nDecisions: we keep the harmonic ranking, Anna drafts the triage screen,\n"
        "David owns the crawler hardening work.\n",
        "plain",
    ),
    (
        "Projects/MLKG",
        "demo-prep.eml",
        "Koehler <koehler@mercurtainment.com>",
        "anna.brown@mercurtainment.com",
        (2019, 6, 24, 11),
        "MLKG demo preparation",
        "Anna,\n\n"
        "for the demo day we should preload the sample sphere and walk through\n"
        "classification with the keyboard only. Please double check the coverage\n"
        "counters against the exported graph before we record the video.\n\n"
        "K.\n",
        "plain",
    ),
    (
        "Projects/MLKG",
        "paper-draft.eml",
        "Anna Brown <anna.brown@mercurtainment.com>",
        "koehler@mercurtainment.com",
        (2019, 7, 29, 13),
        "Draft of the MLKG writeup",
        "Hi Koehler,\n\n"
        "the draft now explains terminology extraction, the metric presets and the\n"
        "interactive feedback loop. Missing pieces: the evaluation table and the\n"
        "screenshot of the occurrence viewer. Comments welcome until Friday.\n\n"
        "Anna\n",
        "plain",
    ),
    (
        "Projects/MLKG",
        "budget.eml",
        "Maria Santos <maria.santos@mercurtainment.com>",
        "koehler@mercurtainment.com",
        (2019, 10, 7, 15),
        "MLKG budget carryover",
        "Dear Koehler,\n\n"
        "finance approved the requested carryover for the MLKG annotation budget.\n"
        "Invoices for the labelling contractors go to the shared folder as usual.\n\n"
        "Regards, Maria Santos\n",
        "plain",
    ),
    (
        "Projects/Orion",
        "sync.eml",
        "Tom Weber <tom.weber@orionsoft.io>",
        "koehler@mercurtainment.com",
        (2019, 3, 20, 10),
        "Orion sync agenda",
        "Hi Koehler,\n\n"
        "for the Orion sync let us cover the ingestion throughput regression, the\n"
        "retry storm we saw in staging, and the migration of the scheduler config.\n\n"
        "Tom\n",
        "plain",
    ),
    (
        "Projects/Orion",
        "throughput.eml",
        "Tom Weber <tom.weber@orionsoft.io>",
        "koehler@mercurtainment.com",
        (2019, 4, 3, 17),
        "Orion throughput fixed",
        "The regression came from an overly eager cache invalidation. Throughput is\n"
        "back to baseline and the dashboards look healthy again. Postmortem doc is\n"
        "linked from the Orion runbook.\n\n"
        "Tom\n",
        "plain",
    ),
    (
        "Projects/Orion",
        "release.eml",
        "release-bot@orionsoft.io",
        "koehler@mercurtainment.com",
        (2019, 8, 26, 7),
        "Orion release candidate built",
        "Automated notice: the Orion release candidate passed the integration\n"
        "suite. Artifacts are staged; release notes need a human pass before the\n"
        "rollout window opens.\n",
        "plain",
    ),
    (
        "Projects/Orion",
        "oncall.eml",
        "Weber, Tom <tom.weber@orionsoft.io>",
        "koehler@mercurtainment.com",
        (2019, 9, 4, 19),
        "Orion on-call handover",
        "Handover notes: two silenced alerts on the ingestion queue, one flaky\n"
        "probe on the europe cluster, nothing customer visible. Escalation path\n"
        "unchanged.\n\nTom\n",
        "plain",
    ),
    (
        "Projects/Orion",
        "retro.eml",
        "Koehler <koehler@mercurtainment.com>",
        "tom.weber@orionsoft.io",
        (2019, 9, 30, 12),
        "Orion retro follow-ups",
        "Tom,\n\n"
        "from the retro: we adopt trunk based development for the connectors,\n"
        "keep the canary stage at ten percent, and document the rollback drill.\n\n"
        "Koehler\n",
        "plain",
    ),
    (
        "Inbox",
        "travel.eml",
        "Lena Hoffmann <lena.hoffmann@voyagio.example>",
        "koehler@mercurtainment.com",
        (2019, 5, 6, 9),
        "Your itinerary to Kaiserslautern",
        "Dear traveller,\n\n"
        "your train itinerary to Kaiserslautern is confirmed. The return leg is\n"
        "flexible; seat reservations are included in both directions.\n\n"
        "Voyagio bookings\n",
        "plain",
    ),
    (
        "Inbox",
        "hr-policy.eml",
        "Maria Santos <maria.santos@mercurtainment.com>",
        "staff@mercurtainment.com",
        (2019, 1, 28, 8),
        "Updated home office policy",
        "All,\n\n"
        "the updated home office policy is live on the intranet. Core hours stay\n"
        "unchanged; equipment requests now go through the self service portal.\n\n"
        "Maria\n",
        "plain",
    ),
    (
        "Inbox",
        "it-maintenance.eml",
        "it-ops@mercurtainment.com",
        "staff@mercurtainment.com",
        (2019, 2, 25, 18),
        "Maintenance window for the mail gateway",
        "Heads up: the mail gateway gets patched during the weekend maintenance\n"
        "window. Expect short reconnects; queued messages are delivered afterwards.\n\n"
        "IT operations\n",
        "plain",
    ),
    (
        "Inbox",
        "lunch.eml",
        "Anna Brown <anna.brown@mercurtainment.com>",
        "koehler@mercurtainment.com",
        (2019, 4, 16, 11),
        "Lunch at the market hall?",
        "Fancy lunch at the market hall today? They opened a new falafel stand and\n"
        "I want opinions before recommending it to the whole floor.\n\nAnna\n",
        "plain",
    ),
    (
        "Inbox",
        "library.eml",
        "service@city-library.example",
        "koehler@mercurtainment.com",
        (2019, 5, 27, 16),
        "Reserved title ready for pickup",
        "Your reserved title on graph databases is ready at the central desk.\n"
        "Please pick it up within the next seven opening days.\n\nCity library\n",
        "plain",
    ),
    (
        "Inbox",
        "conference-cfp.eml",
        "program@semconf.example",
        "koehler@mercurtainment.com",
        (2019, 3, 4, 6),
        "Call for demos now open",
        "The call for demonstrations is open. We welcome tools for terminology\n"
        "extraction, personal information management and semantic desktops.\n"
        "Submissions run through the usual review portal.\n\nProgram committee\n",
        "plain",
    ),
    (
        "Inbox",
        "gym.eml",
        "studio@fitlane.example",
        "koehler@mercurtainment.com",
        (2019, 6, 3, 20),
        "Your membership renewal",
        "Your gym membership renews automatically next month. Freeze options and\n"
        "the updated course schedule are available in the member area.\n\nFitlane\n",
        "plain",
    ),
    (
        "Inbox",
        "warranty.eml",
        "support@helioware.example",
        "koehler@mercurtainment.com",
        (2019, 7, 15, 10),
        "Warranty claim received",
        "We received your warranty claim for the mechanical keyboard. A replacement\n"
        "ships once the return scan is registered at the parcel shop.\n\n"
        "Helioware support\n",
        "plain",
    ),
    (
        "Inbox",
        "tax.eml",
        "Maria Santos <maria.santos@mercurtainment.com>",
        "koehler@mercurtainment.com",
        (2019, 8, 12, 9),
        "Payroll statement archive",
        "Reminder that payroll statements moved to the employee archive. Download\n"
        "needs the company login; printing is no longer offered at the front desk.\n\n"
        "Maria\n",
        "plain",
    ),
    (
        "Inbox",
        "alumni.eml",
        "alumni@techcampus.example",
        "koehler@mercurtainment.com",
        (2019, 9, 23, 14),
        "Alumni meetup in Berlin",
        "Dear alumni,\n\n"
        "our autumn meetup happens in Berlin this year, with lab tours and a panel\n"
        "on applied machine learning in industry. Registration closes soon.\n\n"
        "Alumni office\n",
        "plain",
    ),
    (
        "Inbox",
        "pharmacy.eml",
        "noreply@apomed.example",
        "koehler@mercurtainment.com",
        (2019, 10, 21, 12),
        "Prescription ready",
        "Your prescription order is ready for pickup at the station pharmacy.\n"
        "Opening hours are extended during the fair week.\n\nApomed\n",
        "plain",
    ),
    (
        "Inbox",
        "insurance.eml",
        "kundenservice@nordassekuranz.example",
        "koehler@mercurtainment.com",
        (2019, 11, 11, 8),
        "Policy documents attached",
        "Sehr geehrter Herr Koehler,\n\n"
        "die aktualisierten Unterlagen zu Ihrer Hausratversicherung finden Sie im\n"
        "Kundenportal. Eine Antwort auf diese Nachricht ist nicht erforderlich.\n\n"
        "Nordassekuranz Service\n",
        "plain",
    ),
    (
        "Inbox",
        "carshare.eml",
        "billing@rollmobil.example",
        "koehler@mercurtainment.com",
        (2019, 12, 2, 17),
        "Monthly statement available",
        "Your monthly car sharing statement is available. Night tariffs applied to\n"
        "two trips; the detailed breakdown is in the app under billing history.\n\n"
        "Rollmobil\n",
        "plain",
    ),
    (
        "Newsletters",
        "digest-1.eml",
        "Tech Digest <digest@tech-digest.example>",
        "koehler@mercurtainment.com",
        (2019, 1, 7, 5),
        "Weekly digest: graphs everywhere",
        "<html><body><p>This week: <b>property graphs</b> versus triple stores, a\n"
        "field report on schema migrations, and why gazetteers still beat fancy\n"
        "models for place names.</p><p>Read online for the full issue.</p>\n"
        "</body></html>\n",
        "html",
    ),
    (
        "Newsletters",
        "digest-2.eml",
        "Tech Digest <digest@tech-digest.example>",
        "koehler@mercurtainment.com",
        (2019, 4, 1, 5),
        "Weekly digest: tokenizers revisited",
        "<html><body><p>Deep dive into tokenizers: offsets, unicode pitfalls and\n"
        "why apostrophes ruin everyone's benchmarks. Plus a short interview about\n"
        "bootstrapping personal knowledge graphs.</p></body></html>\n",
        "html",
    ),
    (
        "Newsletters",
        "digest-3.eml",
        "Tech Digest <digest@tech-digest.example>",
        "koehler@mercurtainment.com",
        (2019, 7, 1, 5),
        "Weekly digest: ranking fatigue",
        "<html><body><p>Opinion: too many dashboards, not enough curation. A case\n"
        "for human in the loop triage over fully automatic extraction pipelines.\n"
        "</p></body></html>\n",
        "html",
    ),
    (
        "Newsletters",
        "security.eml",
        "advisories@mercurtainment.com",
        "staff@mercurtainment.com",
        (2019, 8, 5, 6),
        "Phishing wave targeting the sector",
        "Colleagues,\n\n"
        "a phishing wave imitates parcel notifications. Check sender domains\n"
        "carefully and report anything suspicious to the security desk.\n\n"
        "Security team\n",
        "plain",
    ),
    (
        "Newsletters",
        "meetup.eml",
        "hello@graphmeetup.example",
        "koehler@mercurtainment.com",
        (2019, 10, 14, 7),
        "Graph meetup lightning talks",
        "Line-up for the next meetup: entity resolution war stories, streaming\n"
        "updates into property graphs, and a live demo of a personal semantic\n"
        "desktop. Doors open early; pizza as always.\n\nOrganizers\n",
        "plain",
    ),
    (
        "Newsletters",
        "bookclub.eml",
        "circle@paperclub.example",
        "koehler@mercurtainment.com",
        (2019, 11, 25, 19),
        "Paper club picks",
        "This cycle we read about terminology extraction metrics, weighted means\n"
        "for multi criteria decisions, and an older classic on information\n"
        "foraging. Notes live in the shared folder.\n\nPaper club\n",
        "plain",
    ),
]

# (uid, summary, description, location, start(y,m,d,h), duration_h)
EVENTS = [
    (
        "mlkg-telco-2019",
        "MLKG Telco",
        AGENDA_SNIPPET,
        "Dial-in bridge 7",
        (2019, 2, 11, 14),
        1,
    ),
    ("mlkg-review", "MLKG quarterly review", "Slides in the shared deck; reviewers join remotely.", "Room 2.31", (2019, 3, 21, 9), 2),
    ("orion-sync", "Orion sync", "Throughput regression, retry storm, scheduler migration.", "Orionsoft office", (2019, 3, 27, 13), 1),
    ("dentist", "Dentist", "", "Praxis am Markt", (2019, 4, 9, 8), 1),
    ("offsite", "Team offsite", "Hiking then strategy; bring the printed roadmap.", "Kaiserslautern, Germany", (2019, 5, 14, 9), 8),
    ("semconf", "SemConf demo slot", "Live demo of the concept mining prototype.", "Berlin", (2019, 6, 17, 11), 1),
    ("mlkg-demo-day", "MLKG demo day", "Full walkthrough for the steering group.", "Room 2.31", (2019, 7, 8, 10), 2),
    ("orion-release", "Orion release window", "Rollout starts after the go decision.", "War room", (2019, 8, 29, 6), 4),
    ("workshop-ams", "Linked data workshop", "Hands-on afternoon on vocabulary design.", "Amsterdam", (2019, 9, 12, 13), 4),
    ("one-on-one", "1:1 with Anna", "", "Cafe corner", (2019, 10, 2, 15), 1),
    ("budget-planning", "Budget planning", "Carryover requests due beforehand.", "Room 1.05", (2019, 11, 6, 10), 2),
    ("year-end", "Year end party", "Plus ones welcome; sign up on the intranet.", "Canteen", (2019, 12, 19, 18), 4),
]

# (folder chain, title, url, description)
BOOKMARKS = [
    (["Projects", "MLKG"], "MLKG project wiki", "https://wiki.mercurtainment.com/mlkg", "Internal wiki home for the MLKG project."),
    (["Projects", "MLKG"], "Mercurtainment Careers", "https://www.mercurtainment.com/careers", None),
    (["Projects", "MLKG"], "Gazetteer curation board", "https://board.dataforge.dev/gazetteer", "Kanban for gazetteer entries and fixes."),
    (["Projects", "MLKG"], "Knowledge graph construction survey", "https://survey.example.org/kg-construction", "Long read comparing extraction pipelines."),
    (["Projects", "MLKG"], "Telco dial-in cheatsheet", "https://intranet.mercurtainment.com/telco", None),
    (["Projects", "MLKG", "Resources"], "Tokenizer playground", "https://tools.dataforge.dev/tokenizer", "Paste text, inspect offsets."),
    (["Projects", "MLKG", "Resources"], "Harmonic mean calculator", "https://mathnotes.example.org/harmonic", None),
    (["Projects", "MLKG", "Resources"], "Turtle syntax primer", "https://rdfnotes.example.org/turtle", "Quick reference with copyable snippets."),
    (["Projects", "Orion"], "Orion runbook", "https://runbooks.orionsoft.io/orion", "Escalation paths and rollback drill."),
    (["Projects", "Orion"], "Orion dashboards", "https://grafana.orionsoft.io/d/orion", None),
    (["Projects", "Orion"], "Scheduler config migration notes", "https://docs.orionsoft.io/scheduler-migration", None),
    (["Projects", "Orion"], "Canary analysis primer", "https://blog.orionsoft.io/canary-analysis", "Why ten percent is usually enough."),
    (["Research"], "Terminology extraction reading list", "https://reading.example.org/terminology", "Curated papers with short summaries."),
    (["Research"], "Personal information management bibliography", "https://biblio.example.org/pim", None),
    (["Research"], "Semantic desktop retrospective", "https://archive.example.org/semantic-desktop", "What worked, what did not."),
    (["Research"], "Entity linking benchmarks", "https://bench.example.org/entity-linking", None),
    (["Tools"], "Regex tester", "https://regexlab.example.org/", "Supports named groups and lookarounds."),
    (["Tools"], "JSON formatter", "https://jsonpretty.example.org/", None),
    (["Tools"], "Mermaid live editor", "https://mermaid.example.org/live", None),
    (["Tools"], "Color contrast checker", "https://a11y.example.org/contrast", "For the triage UI badges."),
    (["News"], "Tech Digest archive", "https://archive.tech-digest.example/issues", None),
    (["News"], "Graph meetup calendar", "https://graphmeetup.example/events", None),
    ([], "Falafel stand reviews", "https://streetfood.example.org/market-hall", "The one Anna mentioned."),
    ([], "Train connections", "https://voyagio.example/connections", None),
]


def write_mails() -> None:
    mail_root = ROOT / "mail"
    for folder, filename, sender, to, (y, m, d, h), subject, body, kind in MAILS:
        date = format_datetime(datetime(y, m, d, h, 0, 0, tzinfo=timezone.utc))
        message_id = f"<{filename.removesuffix('.eml')}@scenario.local>"
        content_type = "text/html" if kind == "html" else "text/plain"
        headers = [
            f"From: {sender}",
            f"To: {to}",
            f"Subject: {subject}",
            f"Date: {date}",
            f"Message-ID: {message_id}",
            "MIME-Version: 1.0",
            f"Content-Type: {content_type}; charset=utf-8",
            "Content-Transfer-Encoding: 8bit",
        ]
        path = mail_root / folder / filename
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(("\r\n".join(headers) + "\r\n\r\n" + body).encode("utf-8"))


def _ics_escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace(",", "\\,").replace(";", "\\;").replace("\n", "\\n")


def _fold(line: str) -> str:
    # RFC 5545 folding at 74 octets (ASCII content here, so chars == octets).
    parts = []
    while len(line) > 74:
        parts.append(line[:74])
        line = " " + line[74:]
    parts.append(line)
    return "\r\n".join(parts)


def write_calendar() -> None:
    lines = ["BEGIN:VCALENDAR", "VERSION:2.0", "PRODID:-//conceptminer//scenario//EN"]
    for uid, summary, description, location, (y, m, d, h), duration in EVENTS:
        start = datetime(y, m, d, h, 0, 0, tzinfo=timezone.utc)
        end_hour = h + duration
        lines.append("BEGIN:VEVENT")
        lines.append(f"UID:{uid}@scenario.local")
        lines.append(_fold(f"SUMMARY:{_ics_escape(summary)}"))
        if description:
            lines.append(_fold(f"DESCRIPTION:{_ics_escape(description)}"))
        if location:
            lines.append(_fold(f"LOCATION:{_ics_escape(location)}"))
        lines.append(f"DTSTART:{start:%Y%m%dT%H%M%S}Z")
        lines.append(f"DTEND:{y:04d}{m:02d}{d:02d}T{end_hour:02d}0000Z")
        lines.append("END:VEVENT")
    lines.append("END:VCALENDAR")
    (ROOT / "calendar.ics").write_bytes(("\r\n".join(lines) + "\r\n").encode("utf-8"))


def write_bookmarks() -> None:
    lines = [
        "<!DOCTYPE NETSCAPE-Bookmark-file-1>",
        '<META HTTP-EQUIV="Content-Type" CONTENT="text/html; charset=UTF-8">',
        "<TITLE>Bookmarks</TITLE>",
        "<H1>Bookmarks</H1>",
        "<DL><p>",
    ]

    def html_escape(value: str) -> str:
        return value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")

    # Group by folder chain, preserving declaration order of first appearance.
    tree: dict = {"folders": {}, "links": []}
    for chain, title, url, description in BOOKMARKS:
        node = tree
        for name in chain:
            node = node["folders"].setdefault(name, {"folders": {}, "links": []})
        node["links"].append((title, url, description))

    def emit(node: dict, indent: str) -> None:
        for title, url, description in node["links"]:
            lines.append(f'{indent}<DT><A HREF="{url}">{html_escape(title)}</A>')
            if description:
                lines.append(f"{indent}<DD>{html_escape(description)}")
        for name, child in node["folders"].items():
            lines.append(f"{indent}<DT><H3>{html_escape(name)}</H3>")
            lines.append(f"{indent}<DL><p>")
            emit(child, indent + "    ")
            lines.append(f"{indent}</DL><p>")

    emit(tree, "    ")
    lines.append("</DL><p>")
    (ROOT / "bookmarks.html").write_bytes(("\n".join(lines) + "\n").encode("utf-8"))


def main() -> None:
    if ROOT.exists():
        shutil.rmtree(ROOT)
    ROOT.mkdir(parents=True)
    write_mails()
    write_calendar()
    write_bookmarks()
    mail_count = sum(1 for _ in (ROOT / "mail").rglob("*.eml"))
    print(f"scenario: {mail_count} mails, {len(EVENTS)} events, {len(BOOKMARKS)} bookmarks -> {ROOT}")


if __name__ == "__main__":
    main()
