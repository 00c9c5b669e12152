"""HTTP API exposing circuits, analysis, fabrics and sessions.

The server adds no logic of its own: every response is the JSON form of
a library-call result.  Resources live in an in-memory store keyed by
opaque ids; session actions are serialized per session.

Routes (JSON bodies throughout)::

    GET  /health
    POST /circuits                  {rcir|real|{lines,placements,...}} -> {id, circuit}
    GET  /circuits/{id}
    GET  /circuits/{id}/truth-table
    GET  /circuits/{id}/symmetry
    GET  /circuits/{id}/metrics
    POST /fabrics                   {n, realization} -> {id, doc}
    GET  /fabrics/{id}
    POST /fabrics/{id}/configure    {circuit_id | rtab | index_sets} -> {id, doc}
    GET  /configs/{id}
    POST /sessions                  {config_id} -> {id, snapshot}
    GET  /sessions/{id}
    POST /sessions/{id}/actions     {action: apply|next|prev|reset, input?} -> snapshot

Errors: 404 unknown id, 400 malformed body, 422 domain error with a
machine-readable ``code`` field.
"""

from __future__ import annotations

import json
import threading
import uuid
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import docs
from .circuit import Circuit, new_circuit
from .errors import FormatError, RpgaError
from .fabric import Configuration, build, configure, configure_sets
from .formats import emit_fabric_doc, parse_rcir, parse_real, parse_rtab
from .gates import gate_from_token
from .session import Session
from .simulate import full_table
from .symmetry import analyze
from .tables import metrics, project_circuit


class ResourceStore:
    """id -> resource maps with per-session locks."""

    def __init__(self):
        self.circuits: dict[str, Circuit] = {}
        self.fabrics: dict[str, Any] = {}
        self.configs: dict[str, Configuration] = {}
        self.sessions: dict[str, Session] = {}
        self.session_locks: dict[str, threading.Lock] = {}

    @staticmethod
    def new_id() -> str:
        return uuid.uuid4().hex[:12]


class DomainError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        self.message = message


def _get(store: dict, rid: str, kind: str):
    if rid not in store:
        raise LookupError(f"unknown {kind} id: {rid}")
    return store[rid]


def _circuit_from_body(body: dict) -> Circuit:
    if "rcir" in body:
        return parse_rcir(body["rcir"])
    if "real" in body:
        return parse_real(body["real"])
    if "lines" in body:
        circuit = new_circuit(int(body["lines"]))
        constants = {int(k): int(v) for k, v in (body.get("constants") or {}).items()}
        garbage = [int(i) for i in body.get("garbage") or []]
        circuit = circuit.with_roles(constants, garbage)
        if body.get("names"):
            circuit = circuit.with_names(list(body["names"]))
        if body.get("out_names"):
            circuit = circuit.with_names(
                None, {int(k): str(v) for k, v in body["out_names"].items()})
        if body.get("name"):
            circuit = circuit.renamed(str(body["name"]))
        for p in body.get("placements") or []:
            gate = gate_from_token(str(p["gate"]))
            circuit = circuit.place(int(p["slot"]), gate,
                                    [int(i) for i in p["pins"]])
        return circuit
    raise DomainError("BadBody", "body needs 'rcir', 'real' or 'lines'")


def create_app() -> FastAPI:
    app = FastAPI(title="rpgasim", version="0.1.0")
    store = ResourceStore()

    @app.exception_handler(RpgaError)
    async def rpga_error(_: Request, exc: RpgaError):
        status = 400 if isinstance(exc, FormatError) else 422
        return JSONResponse(status_code=status,
                            content={"code": exc.code, "message": str(exc)})

    @app.exception_handler(DomainError)
    async def domain_error(_: Request, exc: DomainError):
        return JSONResponse(status_code=422,
                            content={"code": exc.code, "message": exc.message})

    @app.exception_handler(LookupError)
    async def lookup_error(_: Request, exc: LookupError):
        return JSONResponse(status_code=404,
                            content={"code": "NotFound", "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def validation_error(_: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"code": "BadBody", "message": str(exc.errors())})

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    @app.post("/circuits")
    async def create_circuit(body: dict):
        circuit = _circuit_from_body(body)
        cid = store.new_id()
        store.circuits[cid] = circuit
        return {"id": cid, "circuit": docs.circuit_doc(circuit)}

    @app.get("/circuits/{cid}")
    async def get_circuit(cid: str):
        return docs.circuit_doc(_get(store.circuits, cid, "circuit"))

    @app.get("/circuits/{cid}/truth-table")
    async def circuit_table(cid: str):
        circuit = _get(store.circuits, cid, "circuit")
        rtt = full_table(circuit)
        return {"reversible": docs.reversible_table_doc(rtt),
                "irreversible": docs.irreversible_table_doc(
                    project_circuit(circuit, rtt))}

    @app.get("/circuits/{cid}/symmetry")
    async def circuit_symmetry(cid: str):
        circuit = _get(store.circuits, cid, "circuit")
        table = project_circuit(circuit, full_table(circuit))
        return docs.symmetry_doc(analyze(table))

    @app.get("/circuits/{cid}/metrics")
    async def circuit_metrics(cid: str):
        return docs.metrics_doc(metrics(_get(store.circuits, cid, "circuit")))

    @app.post("/fabrics")
    async def create_fabric(body: dict):
        n = body.get("n")
        if not isinstance(n, int):
            raise DomainError("BadBody", "field 'n' must be an integer")
        fabric = build(n, body.get("realization", "kerntopf"))
        fid = store.new_id()
        store.fabrics[fid] = fabric
        return {"id": fid, "doc": json.loads(emit_fabric_doc(fabric))}

    @app.get("/fabrics/{fid}")
    async def get_fabric(fid: str):
        return json.loads(emit_fabric_doc(_get(store.fabrics, fid, "fabric")))

    @app.post("/fabrics/{fid}/configure")
    async def configure_fabric(fid: str, body: dict):
        fabric = _get(store.fabrics, fid, "fabric")
        if "circuit_id" in body:
            circuit = _get(store.circuits, body["circuit_id"], "circuit")
            table = project_circuit(circuit, full_table(circuit))
            config = configure(fabric, analyze(table))
        elif "rtab" in body:
            config = configure(fabric, analyze(parse_rtab(body["rtab"])))
        elif "index_sets" in body:
            config = configure_sets(
                fabric, {str(k): [int(i) for i in v]
                         for k, v in body["index_sets"].items()})
        else:
            raise DomainError("BadBody",
                              "body needs 'circuit_id', 'rtab' or 'index_sets'")
        kid = store.new_id()
        store.configs[kid] = config
        return {"id": kid, "doc": json.loads(emit_fabric_doc(config))}

    @app.get("/configs/{kid}")
    async def get_config(kid: str):
        return json.loads(emit_fabric_doc(_get(store.configs, kid, "configuration")))

    @app.post("/sessions")
    async def create_session(body: dict):
        config = _get(store.configs, str(body.get("config_id")), "configuration")
        session = Session(config.fabric)
        session.load_config(config)
        sid = store.new_id()
        store.sessions[sid] = session
        store.session_locks[sid] = threading.Lock()
        return {"id": sid, "snapshot": docs.render_model_doc(session.snapshot())}

    @app.get("/sessions/{sid}")
    async def get_session(sid: str):
        session = _get(store.sessions, sid, "session")
        return docs.render_model_doc(session.snapshot())

    @app.post("/sessions/{sid}/actions")
    async def session_action(sid: str, body: dict):
        session = _get(store.sessions, sid, "session")
        action = body.get("action")
        with store.session_locks[sid]:
            if action == "apply":
                word = str(body.get("input") or "")
                if any(c not in "01" for c in word) or not word:
                    raise DomainError("BadInput", f"input must be bits, got {word!r}")
                model = session.apply_input([int(c) for c in word])
            elif action == "next":
                model = session.next()
            elif action == "prev":
                model = session.prev()
            elif action == "reset":
                model = session.reset()
            else:
                raise DomainError("BadAction",
                                  f"action must be apply/next/prev/reset, got {action!r}")
        return docs.render_model_doc(model)

    return app
