"""Local HTTP service for the triage UI and scripts.

Loopback by default: this is a single-user tool over personal data.
Mutations are serialized through the session lock and autosaved; GET
responses are byte-identical for identical session state.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .export import UnsupportedFormat, export_graph
from .extractors import ConceptType
from .metrics import InvalidCombination, preset_by_name, presets, rank_terms, validate_combination
from .model import Corpus
from .textprep import TermIndex
from .triage import (
    CorpusMismatch,
    InvalidStatus,
    Status,
    TriageSession,
    UnknownTerm,
    classify,
    coverage,
    occurrences_of,
    progress,
    save_session,
)

logger = logging.getLogger(__name__)

MAX_PAGE = 500
DEFAULT_PAGE = 50


class ServiceState:
    """Owns the loaded corpus, index and session plus the ranking cache."""

    def __init__(
        self,
        corpus: Corpus,
        index: TermIndex,
        session: TriageSession,
        session_path: Optional[Path] = None,
    ):
        self.corpus = corpus
        self.index = index
        self.session = session
        self.session_path = Path(session_path) if session_path else None
        self._rank_cache: dict[str, list[tuple[str, float]]] = {}

    def ranking(self) -> list[tuple[str, float]]:
        cache_key = self.session.active_combination.cache_key()
        ranked = self._rank_cache.get(cache_key)
        if ranked is None:
            ranked = rank_terms(self.index, self.corpus, self.session.active_combination)
            self._rank_cache[cache_key] = ranked
        return ranked

    def warm(self) -> None:
        """Precompute metric vectors and the active ranking before serving."""
        self.ranking()

    def autosave(self) -> None:
        if self.session_path is not None:
            save_session(self.session, self.session_path)


def _error(status_code: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status_code, content={"code": code, "message": message}
    )


def create_app(state: ServiceState, ui_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="conceptminer", docs_url=None, redoc_url=None)

    @app.exception_handler(UnknownTerm)
    async def _unknown_term(request: Request, exc: UnknownTerm):
        return _error(404, "unknown-term", str(exc))

    @app.exception_handler(InvalidCombination)
    async def _invalid_combination(request: Request, exc: InvalidCombination):
        return _error(422, "invalid-combination", str(exc))

    @app.exception_handler(InvalidStatus)
    async def _invalid_status(request: Request, exc: InvalidStatus):
        return _error(422, "invalid-status", str(exc))

    @app.exception_handler(CorpusMismatch)
    async def _corpus_mismatch(request: Request, exc: CorpusMismatch):
        return _error(409, "corpus-mismatch", str(exc))

    @app.exception_handler(UnsupportedFormat)
    async def _unsupported_format(request: Request, exc: UnsupportedFormat):
        return _error(422, "unsupported-format", str(exc))

    def term_row(key: str, score: float) -> dict:
        record = state.index.get(key)
        row = {
            "key": key,
            "surface": record.display_surface(),
            "score": score,
            "count": record.count,
            "siloSpread": len(record.silos_of(state.corpus)),
            "status": state.session.status_of(key),
        }
        concept_type = state.session.concept_types.get(key)
        if concept_type is not None:
            row["type"] = concept_type.value
        return row

    @app.get("/api/terms")
    def get_terms(
        status: str = "unclassified",
        sort: str = "score",
        offset: int = 0,
        limit: int = DEFAULT_PAGE,
    ):
        if status not in ("all", Status.UNCLASSIFIED, Status.PROMISING, Status.DISCARDED):
            raise InvalidStatus(status)
        limit = max(0, min(limit, MAX_PAGE))
        offset = max(0, offset)
        with state.session.lock:
            ranked = state.ranking()
            matching = [
                (key, score)
                for key, score in ranked
                if status == "all" or state.session.status_of(key) == status
            ]
            if sort == "count":
                matching.sort(key=lambda row: (-state.index.get(row[0]).count, row[0]))
            elif sort == "key":
                matching.sort(key=lambda row: row[0])
            total = len(matching)
            rows = [term_row(key, score) for key, score in matching[offset : offset + limit]]
        return {"total": total, "offset": offset, "terms": rows}

    @app.post("/api/terms/{key}/classify")
    def post_classify(key: str, body: dict):
        status = body.get("status", "")
        type_name = body.get("type")
        as_type = None
        if type_name is not None:
            try:
                as_type = ConceptType(str(type_name).lower())
            except ValueError:
                raise InvalidStatus(f"unknown concept type: {type_name}")
        with state.session.lock:
            classify(state.session, state.index, key, status, as_type)
            state.autosave()
            return {"revision": state.session.revision}

    @app.get("/api/terms/{key}/occurrences")
    def get_occurrences(key: str):
        rows = occurrences_of(state.session, state.corpus, state.index, key)
        return {
            "key": key,
            "occurrences": [
                {
                    "itemId": row.item_id,
                    "item": row.item_summary,
                    "silo": row.silo.value,
                    "field": row.field_kind.value,
                    "start": row.char_start,
                    "end": row.char_end,
                    "surface": row.surface,
                    "context": row.context,
                    "contextStart": row.context_start,
                }
                for row in rows
            ],
        }

    @app.get("/api/coverage")
    def get_coverage():
        with state.session.lock:
            report = coverage(state.session, state.corpus, state.index)
        return {
            **{
                silo.value: {
                    "total": silo_coverage.total,
                    "covered": silo_coverage.covered,
                    "uncovered": silo_coverage.uncovered,
                }
                for silo, silo_coverage in report.silos.items()
            },
            "terms": report.terms,
        }

    @app.get("/api/progress")
    def get_progress():
        with state.session.lock:
            return progress(state.session, state.index)

    @app.get("/api/combination")
    def get_combination():
        combination = state.session.active_combination
        return {"name": combination.name, "weights": dict(sorted(combination.weights.items()))}

    @app.put("/api/combination")
    def put_combination(body: dict):
        name = body.get("name") or "custom"
        weights = body.get("weights")
        if weights is None and body.get("name"):
            preset = preset_by_name(body["name"])
            if preset is None:
                raise InvalidCombination(f"unknown preset: {body['name']}")
            combination = preset
        else:
            if not isinstance(weights, dict):
                raise InvalidCombination("weights must be an object")
            combination = validate_combination(str(name), weights)
        with state.session.lock:
            state.session.active_combination = combination
            state.session.revision += 1
            state.autosave()
            return {
                "name": combination.name,
                "weights": dict(sorted(combination.weights.items())),
                "revision": state.session.revision,
            }

    @app.get("/api/presets")
    def get_presets():
        return [
            {"name": p.name, "weights": dict(sorted(p.weights.items()))} for p in presets()
        ]

    @app.get("/api/candidates")
    def get_candidates():
        return [
            {
                "label": c.label,
                "type": c.concept_type.value,
                "source": c.source.value,
                "count": len(c.occurrences),
                "status": state.session.status_of(c.label.lower()),
            }
            for c in sorted(state.session.candidates, key=lambda c: c.label.lower())
        ]

    @app.get("/api/links")
    def get_links(kind: Optional[str] = None):
        links = state.session.links
        if kind:
            links = [l for l in links if l.kind.value == kind]
        return [
            {
                "kind": l.kind.value,
                "from": l.from_item_id,
                "to": l.to_item_id,
                "detail": l.detail,
                "evidence": [
                    {
                        "itemId": occ.item_id,
                        "field": occ.field_kind.value,
                        "start": occ.char_start,
                        "end": occ.char_end,
                        "surface": occ.surface,
                    }
                    for occ in l.evidence
                ],
            }
            for l in links
        ]

    @app.post("/api/export")
    def post_export(body: dict):
        format = str(body.get("format", "")).lower()
        with state.session.lock:
            payload = export_graph(state.session, state.corpus, state.index, format)
        media = "text/turtle" if format in ("ttl", "turtle") else "application/json"
        return Response(content=payload, media_type=media)

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def serve(
    corpus_file: Path,
    session_file: Optional[Path] = None,
    port: int = 7431,
    host: str = "127.0.0.1",
    gazetteer_file: Optional[Path] = None,
    ui_dir: Optional[Path] = None,
) -> None:
    """Load everything, build or resume the session, run the service."""
    import uvicorn

    state = build_state(corpus_file, session_file, gazetteer_file)
    state.warm()
    app = create_app(state, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")


def build_state(
    corpus_file: Path,
    session_file: Optional[Path] = None,
    gazetteer_file: Optional[Path] = None,
) -> ServiceState:
    from .extractors import Gazetteer, extract_organizations, extract_persons, extract_places
    from .linkers import discover_links
    from .model import load_corpus
    from .textprep import build_term_index
    from .triage import load_session, new_session

    corpus = load_corpus(corpus_file)
    index = build_term_index(corpus)

    session = None
    if session_file is not None and Path(session_file).exists():
        session = load_session(session_file)
        if session.corpus_ref != corpus.content_hash():
            raise CorpusMismatch(
                f"session {session_file} belongs to a different corpus"
            )
        logger.info("resumed session at revision %d", session.revision)
    if session is None:
        gazetteer = Gazetteer.from_file(gazetteer_file) if gazetteer_file else None
        candidates = (
            extract_persons(corpus)
            + extract_places(corpus, gazetteer)
            + extract_organizations(corpus)
        )
        links = discover_links(corpus)
        session = new_session(corpus, index, candidates, links)
        logger.info(
            "new session: %d candidates, %d links", len(candidates), len(links)
        )

    state = ServiceState(corpus, index, session, session_path=session_file)
    if session_file is not None:
        state.autosave()
    return state
