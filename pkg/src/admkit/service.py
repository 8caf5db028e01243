"""HTTP API over models, semantics queries, and decision sessions.

The service holds an append-only model store (documents loaded from a
directory at startup plus uploads) and an in-memory session store with idle
expiry.  Responses use the document schemas of :mod:`admkit.formats`; error
bodies are ``{"error", "detail", "witnesses"?}``.

Status mapping: malformed bodies are 400, unknown resources 404, conflicts
with current session state 409 (incompatible or not-pending choices,
retracting an unresolved issue), and structurally invalid input 422
(ill-formed models, an alternative that does not solve the named issue).
"""

from __future__ import annotations

import itertools
import re
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Union

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from admkit.errors import ParseError, SessionError
from admkit.formats import (
    bundled_model_path,
    design_document,
    parse_design,
    parse_model,
    serialize_model,
)
from admkit.model import Model, build_model, validate
from admkit.semantics import conforms, meaning_of, well_founded_filter
from admkit.session import DecisionSession

SESSION_TTL_SECONDS = 3600.0

_SESSION_STATUS = {
    "cyclic-model": 422,
    "wrong-issue": 422,
    "not-pending": 409,
    "incompatible-choice": 409,
    "not-resolved": 409,
}


class ApiError(Exception):
    def __init__(
        self,
        status: int,
        error: str,
        detail: str,
        witnesses: tuple[str, ...] = (),
        extra: Optional[dict] = None,
    ):
        super().__init__(detail)
        self.status = status
        self.body = {"error": error, "detail": detail}
        if witnesses:
            self.body["witnesses"] = list(witnesses)
        if extra:
            self.body.update(extra)


@dataclass
class _SessionEntry:
    session: DecisionSession
    model_id: str
    created_at: float
    last_used: float
    lock: threading.Lock = field(default_factory=threading.Lock)


def _slug(name: str) -> str:
    cleaned = re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")
    return cleaned or "model"


def _parse_body(raw: bytes) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ApiError(400, "bad-request", f"body is not UTF-8: {exc}") from exc


def _json_object_body(raw: bytes) -> dict:
    import json

    try:
        value = json.loads(_parse_body(raw))
    except ValueError as exc:
        raise ApiError(400, "bad-request", f"body is not valid JSON: {exc}") from exc
    if not isinstance(value, dict):
        raise ApiError(400, "bad-request", "body must be a JSON object")
    return value


def _body_string(body: dict, key: str) -> str:
    value = body.get(key)
    if not isinstance(value, str):
        raise ApiError(400, "bad-request", f"body must carry a string {key!r} field")
    return value


def create_app(
    model_dir: Optional[Union[str, Path]] = None,
    session_ttl: float = SESSION_TTL_SECONDS,
    clock: Callable[[], float] = time.time,
) -> FastAPI:
    """Build the application.

    With no ``model_dir`` the bundled example model is served under id
    ``rapp``; otherwise every ``*.adm.json`` document in the directory is
    loaded, keyed by file name.  ``session_ttl`` and ``clock`` govern idle
    session expiry and exist so tests can drive time.
    """
    app = FastAPI(title="admkit", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    models: dict[str, Model] = {}
    model_order: list[str] = []
    sessions: dict[str, _SessionEntry] = {}
    store_lock = threading.Lock()

    def register(model_id: str, model: Model) -> None:
        models[model_id] = model
        model_order.append(model_id)

    if model_dir is None:
        register("rapp", build_model(parse_model(bundled_model_path().read_text("utf-8"))))
    else:
        for path in sorted(Path(model_dir).glob("*.adm.json")):
            model_id = path.name[: -len(".adm.json")]
            register(model_id, build_model(parse_model(path.read_text("utf-8"))))

    def model_or_404(model_id: str) -> Model:
        model = models.get(model_id)
        if model is None:
            raise ApiError(404, "not-found", f"no model with id {model_id!r}")
        return model

    def purge_expired(now: float) -> None:
        dead = [sid for sid, e in sessions.items() if now - e.last_used > session_ttl]
        for sid in dead:
            del sessions[sid]

    def session_or_404(session_id: str) -> _SessionEntry:
        now = clock()
        with store_lock:
            purge_expired(now)
            entry = sessions.get(session_id)
            if entry is None:
                raise ApiError(404, "not-found", f"no session with id {session_id!r}")
            entry.last_used = now
            return entry

    def session_resource(session_id: str, entry: _SessionEntry) -> dict:
        session = entry.session
        status = session.status()
        allowed = {
            issue: [
                {"alternative": alternative, "viable": viable}
                for alternative, viable in session.allowed_alternatives(issue)
            ]
            for issue in session.pending
        }
        excluded = {
            issue: [
                {"alternative": alternative, "conflictsWith": prior}
                for alternative, prior in session.excluded_alternatives(issue)
            ]
            for issue in session.pending
        }
        return {
            "id": session_id,
            "modelId": entry.model_id,
            "createdAt": entry.created_at,
            "choices": dict(session.choices),
            "pending": list(session.pending),
            "allowed": allowed,
            "excluded": excluded,
            "status": {
                "complete": status.complete,
                "viable": status.viable,
                "pendingCount": status.pending_count,
            },
        }

    @app.exception_handler(ApiError)
    async def api_error_handler(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(exc.body, status_code=exc.status)

    @app.get("/models")
    async def list_models() -> list[dict]:
        with store_lock:
            return [
                {
                    "id": model_id,
                    "name": models[model_id].name,
                    "issueCount": len(models[model_id].issues),
                    "alternativeCount": len(models[model_id].alternatives),
                }
                for model_id in model_order
            ]

    @app.post("/models", status_code=201)
    async def upload_model(request: Request, response: Response) -> dict:
        raw = await request.body()
        try:
            doc = parse_model(_parse_body(raw))
        except ParseError as exc:
            raise ApiError(400, "bad-request", str(exc)) from exc
        report = validate(doc)
        if not report.well_formed:
            raise ApiError(
                422,
                "invalid-model",
                "model document violates well-formedness rules",
                extra={
                    "violations": [
                        {
                            "rule": v.rule,
                            "message": v.message,
                            "witnesses": list(v.witnesses),
                        }
                        for v in report.violations
                    ]
                },
            )
        model = build_model(doc)
        with store_lock:
            base = _slug(doc.name)
            model_id = base
            for k in itertools.count(2):
                if model_id not in models:
                    break
                model_id = f"{base}-{k}"
            register(model_id, model)
        response.headers["Location"] = f"/models/{model_id}"
        return {"id": model_id}

    @app.get("/models/{model_id}")
    async def get_model(model_id: str) -> Response:
        model = model_or_404(model_id)
        return Response(serialize_model(model), media_type="application/json")

    @app.get("/models/{model_id}/meaning")
    async def get_meaning(model_id: str, request: Request) -> dict:
        model = model_or_404(model_id)
        params = request.query_params
        limit: Optional[int] = None
        if "limit" in params:
            try:
                limit = int(params["limit"])
            except ValueError as exc:
                raise ApiError(400, "bad-request", "limit must be an integer") from exc
            if limit < 0:
                raise ApiError(400, "bad-request", "limit must be non-negative")
        well_founded = params.get("wellFounded", "false").lower()
        if well_founded not in ("true", "false", "1", "0"):
            raise ApiError(400, "bad-request", "wellFounded must be true or false")
        meaning = meaning_of(model, limit=limit)
        if well_founded in ("true", "1"):
            meaning = well_founded_filter(model, meaning)
        return {
            "designs": [design_document(model, d) for d in meaning.designs],
            "truncated": meaning.truncated,
        }

    @app.post("/models/{model_id}/conformity")
    async def check_conformity(model_id: str, request: Request) -> dict:
        model = model_or_404(model_id)
        raw = await request.body()
        try:
            design = parse_design(_parse_body(raw))
        except ParseError as exc:
            raise ApiError(400, "bad-request", str(exc)) from exc
        report = conforms(design, model)
        return {
            "conforms": report.conforms,
            "violations": [
                {
                    "condition": v.condition,
                    "message": v.message,
                    "witnesses": list(v.witnesses),
                }
                for v in report.violations
            ],
        }

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request, response: Response) -> dict:
        body = _json_object_body(await request.body())
        model_id = _body_string(body, "modelId")
        model = model_or_404(model_id)
        try:
            session = DecisionSession(model)
        except SessionError as exc:
            raise ApiError(
                _SESSION_STATUS[exc.code], exc.code, str(exc), exc.witnesses
            ) from exc
        now = clock()
        entry = _SessionEntry(session, model_id, created_at=now, last_used=now)
        session_id = uuid.uuid4().hex
        with store_lock:
            purge_expired(now)
            sessions[session_id] = entry
        response.headers["Location"] = f"/sessions/{session_id}"
        return session_resource(session_id, entry)

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str) -> dict:
        entry = session_or_404(session_id)
        with entry.lock:
            return session_resource(session_id, entry)

    @app.post("/sessions/{session_id}/choices")
    async def choose(session_id: str, request: Request) -> dict:
        body = _json_object_body(await request.body())
        issue = _body_string(body, "issue")
        alternative = _body_string(body, "alternative")
        entry = session_or_404(session_id)
        with entry.lock:
            try:
                entry.session.choose(issue, alternative)
            except SessionError as exc:
                raise ApiError(
                    _SESSION_STATUS[exc.code], exc.code, str(exc), exc.witnesses
                ) from exc
            return session_resource(session_id, entry)

    @app.delete("/sessions/{session_id}/choices/{issue}")
    async def retract(session_id: str, issue: str) -> dict:
        entry = session_or_404(session_id)
        with entry.lock:
            try:
                entry.session.retract(issue)
            except SessionError as exc:
                raise ApiError(
                    _SESSION_STATUS[exc.code], exc.code, str(exc), exc.witnesses
                ) from exc
            return session_resource(session_id, entry)

    return app
