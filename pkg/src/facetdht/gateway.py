"""HTTP JSON boundary exposing browse sessions, miniatures and network stats.

The gateway adds no behavior of its own: every response body is produced by
the same renderers the CLI uses, so a scripted session over HTTP matches the
in-process replay byte for byte (modulo session id). Network access is
serialized by a single lock, per the simulator's exclusive-access contract.
"""

from __future__ import annotations

import json
import threading

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response

from .browse import (
    BrowseSession,
    InvalidChoiceError,
    choose,
    finish,
    locations_dict,
    start_session,
    state_json,
)
from .overlay import NodeId, SimNetwork


def _dumps(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


class SessionStore:
    """Monotonic session ids; lookups of unknown ids fail cleanly."""

    def __init__(self):
        self._sessions: dict[str, BrowseSession] = {}
        self._count = 0

    def new_id(self) -> str:
        self._count += 1
        return f"s{self._count:06d}"

    def add(self, session: BrowseSession) -> None:
        self._sessions[session.session_id] = session

    def get(self, session_id: str) -> BrowseSession | None:
        return self._sessions.get(session_id)


def create_app(net: SimNetwork, origin: NodeId | None = None) -> FastAPI:
    app = FastAPI(title="facetdht gateway")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    lock = threading.Lock()
    store = SessionStore()
    miniatures = net.miniature_index()

    def error(status: int, message: str) -> Response:
        return Response(_dumps({"error": message}), status_code=status,
                        media_type="application/json")

    def state_response(session: BrowseSession) -> Response:
        return Response(state_json(session), media_type="application/json")

    async def read_payload(request: Request) -> dict:
        body = await request.body()
        if not body:
            return {}
        try:
            payload = json.loads(body)
        except json.JSONDecodeError:
            return {}
        return payload if isinstance(payload, dict) else {}

    @app.post("/sessions")
    async def create_session(request: Request):
        payload = await read_payload(request)
        requested = payload.get("space")
        if requested is not None and requested != net.space.name:
            return error(400, f"unknown space preset {requested!r}; serving {net.space.name!r}")
        with lock:
            session = start_session(net, origin, session_id=store.new_id())
            store.add(session)
            body = _dumps(
                {"session_id": session.session_id,
                 "state": json.loads(state_json(session))}
            )
        return Response(body, media_type="application/json")

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        with lock:
            session = store.get(session_id)
            if session is None:
                return error(404, f"unknown session {session_id!r}")
            return state_response(session)

    @app.post("/sessions/{session_id}/choice")
    async def post_choice(session_id: str, request: Request):
        payload = await read_payload(request)
        with lock:
            session = store.get(session_id)
            if session is None:
                return error(404, f"unknown session {session_id!r}")
            try:
                choose(session, int(payload["position"]), int(payload["value"]))
            except (KeyError, TypeError, ValueError) as exc:
                if isinstance(exc, InvalidChoiceError):
                    return error(409, str(exc))
                return error(409, f"malformed choice payload: {payload!r}")
            return state_response(session)

    @app.post("/sessions/{session_id}/finish")
    async def post_finish(session_id: str):
        with lock:
            session = store.get(session_id)
            if session is None:
                return error(404, f"unknown session {session_id!r}")
            finish(session)
            return Response(_dumps(locations_dict(session)), media_type="application/json")

    @app.get("/docs/{doc_id}/miniature")
    async def get_miniature(doc_id: str):
        mini = miniatures.get(doc_id)
        if mini is None:
            return error(404, f"unknown document {doc_id!r}")
        return Response(mini.to_ppm(), media_type="image/x-portable-pixmap")

    @app.get("/network/stats")
    async def network_stats():
        with lock:
            body = _dumps(
                {
                    "nodes": len(net.node_ids),
                    "documents": net.document_count(),
                    "counters": net.counters.as_dict(),
                }
            )
        return Response(body, media_type="application/json")

    @app.get("/space")
    async def get_space():
        return Response(_dumps(net.space.to_json_dict()), media_type="application/json")

    return app
