"""HTTP service wrapping the engines: text sessions under edits + queries.

One session = one text + one engine ('isa' for the substitution-only
inverted-suffix-array engine, 'sa' for the full-edit suffix-array engine).
Single-writer per session, enforced with a lock.
"""

from __future__ import annotations

import itertools
import threading
from typing import List, Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .csr import DynamicISA
from .dsa import DynamicSA
from .dynstr import EditOp


class CreateTextRequest(BaseModel):
    text: str
    mode: Literal["isa", "sa"] = "sa"


class TextInfo(BaseModel):
    text_id: str
    mode: str
    n: int
    version: int


class EditModel(BaseModel):
    kind: Literal["sub", "ins", "del"]
    position: int
    symbol: Optional[str] = Field(default=None, max_length=1)


class EditRequest(BaseModel):
    ops: List[EditModel]


class QueryResponse(BaseModel):
    op: str
    positions: List[int]
    answers: List[str]


class _Session:
    def __init__(self, sid, mode, text):
        self.sid = sid
        self.mode = mode
        self.lock = threading.Lock()
        self.version = 0
        if mode == "isa":
            self.engine = DynamicISA(text)
        else:
            self.engine = DynamicSA(text)

    @property
    def n(self):
        return self.engine.n


def create_app() -> FastAPI:
    app = FastAPI(title="dynsa", description="dynamic suffix/inverted-suffix array sessions")
    sessions = {}
    counter = itertools.count(1)
    app.state.sessions = sessions

    def get_session(text_id: str) -> _Session:
        s = sessions.get(text_id)
        if s is None:
            raise HTTPException(status_code=404, detail=f"unknown text {text_id}")
        return s

    @app.get("/health")
    def health():
        return {"status": "ok", "sessions": len(sessions)}

    @app.post("/texts", response_model=TextInfo)
    def create_text(req: CreateTextRequest):
        sid = f"t{next(counter)}"
        try:
            sess = _Session(sid, req.mode, req.text)
        except ValueError as ex:
            raise HTTPException(status_code=422, detail=str(ex))
        sessions[sid] = sess
        return TextInfo(text_id=sid, mode=sess.mode, n=sess.n, version=0)

    @app.get("/texts/{text_id}", response_model=TextInfo)
    def text_info(text_id: str):
        s = get_session(text_id)
        return TextInfo(text_id=s.sid, mode=s.mode, n=s.n, version=s.version)

    @app.delete("/texts/{text_id}")
    def drop_text(text_id: str):
        get_session(text_id)
        del sessions[text_id]
        return {"deleted": text_id}

    @app.post("/texts/{text_id}/edits", response_model=TextInfo)
    def apply_edits(text_id: str, req: EditRequest):
        s = get_session(text_id)
        with s.lock:
            for op in req.ops:
                if s.mode == "isa" and op.kind != "sub":
                    raise HTTPException(
                        status_code=409,
                        detail="the inverted-suffix-array engine only supports substitutions")
                try:
                    if s.mode == "isa":
                        s.engine.substitute(op.position, op.symbol)
                    else:
                        s.engine.apply_edit(EditOp(op.kind, op.position, op.symbol))
                except (IndexError, ValueError) as ex:
                    raise HTTPException(status_code=422, detail=str(ex))
                s.version += 1
            return TextInfo(text_id=s.sid, mode=s.mode, n=s.n, version=s.version)

    @app.get("/texts/{text_id}/query", response_model=QueryResponse)
    def query(text_id: str, op: Literal["isa", "sa", "bwt", "lcp"], positions: str):
        s = get_session(text_id)
        with s.lock:
            n = s.n
            if positions == "all":
                pos = list(range(2, n + 1)) if op == "lcp" else list(range(1, n + 1))
            else:
                try:
                    pos = [int(t) for t in positions.replace(",", " ").split()]
                except ValueError:
                    raise HTTPException(status_code=422, detail="positions must be integers or 'all'")
            try:
                if op == "isa":
                    if s.mode != "isa":
                        raise HTTPException(status_code=409,
                                            detail="session was created in sa mode")
                    answers = [str(s.engine.isa(i)) for i in pos]
                else:
                    if s.mode != "sa":
                        raise HTTPException(status_code=409,
                                            detail="session was created in isa mode")
                    if op == "sa":
                        answers = [str(s.engine.sa(i)) for i in pos]
                    elif op == "bwt":
                        answers = [chr(s.engine.bwt(i)) for i in pos]
                    else:
                        answers = [str(s.engine.lcp_entry(i)) for i in pos]
            except IndexError as ex:
                raise HTTPException(status_code=422, detail=str(ex))
            return QueryResponse(op=op, positions=pos, answers=answers)

    return app


app = create_app()
