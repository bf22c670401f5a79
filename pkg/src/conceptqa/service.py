"""HTTP JSON API over the engine.

All endpoints live under ``/v1``; every non-2xx response body is a single
error object ``{code, message, details?}``. Requests bind one network
snapshot each, so reads stay consistent while writers run.
"""

from __future__ import annotations

import json

from fastapi import Body, FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from .engine import Engine
from .errors import (
    ConceptQAError,
    DanglingPointer,
    DuplicateSlotId,
    EmptyId,
    InvariantViolation,
    ParseError,
    SchemaMismatch,
    SelfLoop,
    StaleMatcher,
    SurfaceFormCollision,
    TicketNotOpen,
    UnknownEntity,
    UnknownNetwork,
    UnknownReference,
    UnknownRelationSlot,
    UnknownTicket,
    UnknownTopic,
    VersionConflict,
)

_STATUS_BY_ERROR = {
    UnknownNetwork: 404,
    UnknownTicket: 404,
    VersionConflict: 409,
    TicketNotOpen: 409,
    ParseError: 400,
    InvariantViolation: 400,
    SchemaMismatch: 400,
    SurfaceFormCollision: 400,
    UnknownEntity: 400,
    UnknownRelationSlot: 400,
    UnknownTopic: 400,
    SelfLoop: 400,
    DuplicateSlotId: 400,
    EmptyId: 400,
    DanglingPointer: 400,
    UnknownReference: 400,
    StaleMatcher: 503,
}


def _error_body(code: str, message: str, details: dict | None = None) -> dict:
    body = {"code": code, "message": message}
    if details:
        body["details"] = details
    return body


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="conceptqa", docs_url=None, redoc_url=None, openapi_url=None)

    @app.exception_handler(ConceptQAError)
    async def handle_domain_error(request: Request, exc: ConceptQAError):
        status = 400
        for klass, code in _STATUS_BY_ERROR.items():
            if isinstance(exc, klass):
                status = code
                break
        details = None
        if isinstance(exc, InvariantViolation):
            details = {"path": exc.path}
        return JSONResponse(
            status_code=status, content=_error_body(exc.code, str(exc), details)
        )

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content=_error_body("invalid_request", "request body failed validation",
                                {"errors": json.loads(json.dumps(exc.errors(), default=str))}),
        )

    @app.exception_handler(StarletteHTTPException)
    async def handle_http_error(request: Request, exc: StarletteHTTPException):
        return JSONResponse(
            status_code=exc.status_code,
            content=_error_body("http_error", str(exc.detail)),
        )

    @app.middleware("http")
    async def check_token(request: Request, call_next):
        token = engine.config.auth_token
        if token and request.headers.get("x-auth-token") != token:
            return JSONResponse(
                status_code=401,
                content=_error_body("unauthorized", "missing or wrong auth token"),
            )
        return await call_next(request)

    @app.post("/v1/networks")
    async def import_network(document: dict = Body(...)):
        network = engine.import_document(json.dumps(document), actor="api")
        return {"id": network.id, "version": network.version}

    @app.get("/v1/networks")
    async def list_networks():
        out = []
        for network_id in engine.store.network_ids():
            network = engine.store.get(network_id)
            out.append(
                {
                    "id": network.id,
                    "name": network.name,
                    "version": network.version,
                    "entities": len(network.entities),
                    "edges": len(network.edges),
                }
            )
        return {"networks": out}

    @app.get("/v1/networks/{network_id}")
    async def export_network(network_id: str):
        return Response(
            content=engine.export(network_id), media_type="application/json"
        )

    @app.post("/v1/networks/{network_id}/ask")
    async def ask(network_id: str, body: dict = Body(...)):
        question = body.get("question", "")
        if not isinstance(question, str) or not question.strip():
            return JSONResponse(
                status_code=422,
                content=_error_body("empty_question", "question must be non-empty"),
            )
        result = engine.ask(network_id, question)
        return result.to_document()

    @app.get("/v1/networks/{network_id}/tickets")
    async def list_tickets(network_id: str, status: str = Query(default="open")):
        if status not in ("open", "resolved", "dismissed", "all"):
            return JSONResponse(
                status_code=422,
                content=_error_body("invalid_request", f"unknown status {status!r}"),
            )
        tickets = engine.tickets(network_id, status=status)
        return {
            "tickets": [t.to_document() for t in tickets],
            "version": engine.store.get(network_id).version,
        }

    @app.post("/v1/networks/{network_id}/tickets/{ticket_id}/resolve")
    async def resolve(network_id: str, ticket_id: str, body: dict = Body(...)):
        engine.store.get(network_id)
        action = body.get("action")
        expected_version = body.get("expected_version")
        if not isinstance(action, dict) or not isinstance(expected_version, int):
            return JSONResponse(
                status_code=422,
                content=_error_body(
                    "invalid_request",
                    "body must carry an action object and an integer expected_version",
                ),
            )
        ticket, version = engine.resolve(network_id, ticket_id, action, expected_version)
        return {"ticket": ticket.to_document(), "version": version}

    @app.put("/v1/networks/{network_id}/entities/{entity_id}")
    async def put_entity(network_id: str, entity_id: str, body: dict = Body(...)):
        expected_version = body.get("expected_version")
        entity_doc = {
            "id": entity_id,
            "name": body.get("name"),
            "aliases": body.get("aliases", []),
            "topic": body.get("topic"),
            "attributes": body.get("attributes"),
        }
        if not isinstance(entity_doc["name"], str) or not isinstance(
            entity_doc["topic"], str
        ):
            return JSONResponse(
                status_code=422,
                content=_error_body(
                    "invalid_request", "body must carry name and topic strings"
                ),
            )
        network = engine.put_entity(network_id, entity_doc, expected_version)
        return {"id": entity_id, "version": network.version}

    @app.put("/v1/networks/{network_id}/edges/{a}/{b}/relations/{slot}")
    async def put_edge_relation(
        network_id: str, a: str, b: str, slot: str, body: dict = Body(...)
    ):
        network = engine.put_edge_relation(
            network_id, a, b, slot, body.get("qa"), body.get("expected_version")
        )
        return {"a": a, "b": b, "slot": slot, "version": network.version}

    return app


def create_default_app() -> FastAPI:
    """App factory for ``uvicorn conceptqa.service:create_default_app``."""
    from .config import load_config

    return create_app(Engine(load_config()))
