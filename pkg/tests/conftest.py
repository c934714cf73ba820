from __future__ import annotations

from pathlib import Path

import pytest

from conceptminer.ingestion import SourceFormat, SourceSpec, crawl
from conceptminer.model import Corpus

SCENARIO_ROOT = Path(__file__).resolve().parents[1] / "src" / "conceptminer" / "data" / "scenario"
FIXTURES = Path(__file__).resolve().parent / "fixtures"


def scenario_specs() -> list[SourceSpec]:
    return [
        SourceSpec(SCENARIO_ROOT / "mail", SourceFormat.EML_DIRECTORY),
        SourceSpec(SCENARIO_ROOT / "calendar.ics", SourceFormat.ICS),
        SourceSpec(SCENARIO_ROOT / "bookmarks.html", SourceFormat.BOOKMARKS_HTML),
    ]


@pytest.fixture(scope="session")
def scenario_corpus() -> Corpus:
    return crawl(scenario_specs())


@pytest.fixture(scope="session")
def scenario_index(scenario_corpus):
    from conceptminer.textprep import build_term_index

    return build_term_index(scenario_corpus)


def pytest_terminal_summary(terminalreporter):
    try:
        from .test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
