"""HTTP/JSON API over a single active ontology document.

Reads take a snapshot; writes are serialized through one lock and are
persisted (write-temp-then-rename) before the response is sent. Static files
for the web UI, when present, are served at ``/``.
"""

from __future__ import annotations

import threading
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .api import CommitOutcome, commit_rule_text, convert_payload, convert_rule_text
from .ontology_io import (
    OntologyDocument,
    parse_ontology,
    render_functional,
    serialize_ontology,
    write_document,
)
from .rule_parser import ParseError


class DocumentStore:
    """Single-writer cell around the active document and its file."""

    def __init__(self, path: str | Path, document: OntologyDocument):
        self.path = Path(path)
        self._document = document
        self._lock = threading.Lock()

    def snapshot(self) -> OntologyDocument:
        with self._lock:
            return self._document

    def replace(self, document: OntologyDocument) -> None:
        with self._lock:
            self._document = document
            write_document(document, self.path)

    def commit_text(
        self,
        text: str,
        ground: frozenset[str] | None,
        declare_missing: bool,
    ) -> CommitOutcome:
        with self._lock:
            outcome = commit_rule_text(text, self._document, ground, declare_missing)
            if outcome.status == "committed":
                assert outcome.document is not None
                self._document = outcome.document
                write_document(self._document, self.path)
        return outcome

    def flush(self) -> None:
        with self._lock:
            write_document(self._document, self.path)


class ConvertRequest(BaseModel):
    ruleText: str


class CommitRequest(BaseModel):
    ruleText: str
    ground: list[str] | None = None
    declareMissing: bool = True


class OntologyUpload(BaseModel):
    text: str


def create_app(store: DocumentStore, static_dir: str | Path | None = None) -> FastAPI:
    @asynccontextmanager
    async def lifespan(_: FastAPI):
        yield
        store.flush()

    app = FastAPI(title="rules2owl", lifespan=lifespan)

    @app.exception_handler(RequestValidationError)
    async def malformed_request(_, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"message": str(exc)})

    @app.post("/api/convert")
    def convert_endpoint(request: ConvertRequest):
        outcome = convert_rule_text(request.ruleText, store.snapshot())
        return convert_payload(outcome)

    @app.post("/api/commit")
    def commit_endpoint(request: CommitRequest):
        ground = frozenset(request.ground) if request.ground else None
        outcome = store.commit_text(request.ruleText, ground, request.declareMissing)
        if outcome.status == "error":
            return JSONResponse(
                status_code=400,
                content={
                    "message": outcome.message,
                    "position": _position_payload(outcome.position),
                },
            )
        if outcome.status == "untranslatable":
            return JSONResponse(
                status_code=409,
                content={
                    "message": outcome.message,
                    "options": [o.sorted_variables() for o in outcome.options],
                },
            )
        return {"committed": [render_functional(a) for a in outcome.committed]}

    @app.get("/api/signature")
    def signature_endpoint():
        sig = store.snapshot().signature()
        return {
            "classes": sorted(sig.classes),
            "objectProperties": sorted(sig.object_properties),
        }

    @app.get("/api/ontology")
    def get_ontology():
        return PlainTextResponse(serialize_ontology(store.snapshot()))

    @app.post("/api/ontology")
    def put_ontology(request: OntologyUpload):
        try:
            document = parse_ontology(request.text)
        except ParseError as exc:
            return JSONResponse(
                status_code=400,
                content={
                    "message": exc.message,
                    "position": {"line": exc.line, "column": exc.column},
                },
            )
        store.replace(document)
        return {"ok": True}

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")
    else:

        @app.get("/")
        def index():
            return PlainTextResponse(
                "rules2owl service. API endpoints live under /api/ "
                "(convert, commit, signature, ontology).\n"
            )

    return app


def _position_payload(position: tuple[int, int] | None) -> dict | None:
    if position is None:
        return None
    return {"line": position[0], "column": position[1]}
