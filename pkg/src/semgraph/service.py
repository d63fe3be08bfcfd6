"""JSON-over-HTTP facade for the measure engine and ideation sessions.

Thin by design: every endpoint delegates to the same engine functions the
CLI uses, so responses for pure queries match CLI output for equal inputs.
Errors use a structured body {code, message, details}.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .errors import (IdenticalWordsError, SegmentationError, SemgraphError,
                     SessionError, UnknownWordError)
from .ideation import DEFAULT_MEASURE, SessionStore
from .measures import measure_catalog, parse_measure, similarity_detail
from .reports import RunConfig, analyze_transcripts
from .taxonomy import SemanticNet


class SimilarityRequest(BaseModel):
    x: str
    y: str
    measures: list[str] | None = None


class TranscriptPayload(BaseModel):
    source_id: str
    text: str


class AnalyzeRequest(BaseModel):
    transcripts: list[TranscriptPayload]
    t: int = 3
    mode: str = "dictionary"
    collocations: bool = False
    token_weighted: bool = False
    measures: list[str] = Field(default_factory=lambda: ["all"])
    groupings: list[dict] | None = None


class SessionRequest(BaseModel):
    base: list[str]
    measure: str = DEFAULT_MEASURE
    candidates: list[str] = Field(default_factory=list)


class ProposeRequest(BaseModel):
    k: int | None = None


class DecisionRequest(BaseModel):
    candidate: str
    decision: str   # accepted | rejected


def _status_for(exc: SemgraphError) -> int:
    if isinstance(exc, SessionError):
        return {"unknown_session": 404, "unknown_candidate": 409,
                "double_decision": 409}.get(exc.code, 422)
    if isinstance(exc, (UnknownWordError, IdenticalWordsError,
                        SegmentationError)):
        return 422
    return 400


def create_app(net: SemanticNet, session_log: str | None = None,
               cors_origins: list[str] | None = None) -> FastAPI:
    app = FastAPI(title="semgraph", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions = SessionStore(log_dir=session_log)

    @app.exception_handler(SemgraphError)
    async def semgraph_error(request: Request, exc: SemgraphError):
        code = getattr(exc, "code", type(exc).__name__)
        details = {}
        if isinstance(exc, UnknownWordError):
            code = "unknown_word"
            details = {"word": exc.word, "suggestions": exc.suggestions}
        return JSONResponse(status_code=_status_for(exc),
                            content={"code": code, "message": str(exc),
                                     "details": details})

    @app.exception_handler(ValueError)
    async def value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=422,
                            content={"code": "invalid_input",
                                     "message": str(exc), "details": {}})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__,
                "constants": net.constants.as_dict()}

    @app.get("/measures")
    def measures():
        return {"measures": measure_catalog()}

    @app.post("/similarity")
    def post_similarity(req: SimilarityRequest):
        ids = req.measures or [DEFAULT_MEASURE]
        rows = []
        for text in ids:
            measure = parse_measure(text)
            if not measure.is_similarity:
                raise ValueError(f"{measure} is not a similarity measure")
            value, detail = similarity_detail(net, req.x, req.y, measure)
            rows.append({"measure": str(measure), "value": value, **detail})
        return {"x": req.x, "y": req.y, "measures": rows}

    @app.post("/analyze")
    def post_analyze(req: AnalyzeRequest):
        config = RunConfig(measures=req.measures, t=req.t, mode=req.mode,
                           collocations=req.collocations,
                           token_weighted=req.token_weighted)
        groupings = {g.get("source", g.get("subject")): g
                     for g in (req.groupings or [])}
        result = analyze_transcripts(
            net, [(p.source_id, p.text) for p in req.transcripts], config,
            groupings=groupings)
        return {"report": result.report, "values": result.value_rows,
                "trends": result.trend_rows}

    @app.post("/session")
    def post_session(req: SessionRequest):
        session = sessions.create(net, req.base, req.measure, req.candidates)
        return session.state()

    @app.get("/session/{session_id}")
    def get_session(session_id: str):
        return sessions.get(session_id).state()

    @app.post("/session/{session_id}/propose")
    def post_propose(session_id: str, req: ProposeRequest):
        session = sessions.get(session_id)
        with session.lock:
            proposals = session.propose(req.k)
        return {"session_id": session_id,
                "current_average": session.current_average,
                "proposals": [{"candidate": p.candidate,
                               "projected_average": p.projected_average,
                               "delta": p.delta} for p in proposals]}

    @app.post("/session/{session_id}/decision")
    def post_decision(session_id: str, req: DecisionRequest):
        session = sessions.get(session_id)
        with session.lock:
            record = session.decide(req.candidate, req.decision)
        sessions.log_decision(session, record)
        return session.state()

    return app
