"""JSON service exposing the library one endpoint per call.

No endpoint computes anything the library does not; each handler
parses its payload, calls the matching function, and serializes the
result.  Errors come back as ``{"error": {"code", "message"}}`` with
the exception class name as the code.  Search runs as background jobs
in an in-memory registry: POST /search returns an id, GET polls it,
DELETE cancels it.
"""

from __future__ import annotations

import json
import threading
import uuid
from typing import Any, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ..front import FrontError, classical_invariants
from ..moves import MoveNotApplicable, applicable_moves, apply_move
from ..movie import classical_check, summary_consistency, verify
from ..rulings import (OBSTRUCTED, count_obstruction,
                       polynomial_obstruction, ruling_count,
                       ruling_polynomial)
from ..satellite import clasp_pattern, compose, full_twist, power, \
    satellite, trivial_pattern
from ..search import GENUS_ANY, SearchBudget, search_decomposable
from ..lagdiag import verify_lin_sequence
from .jsonio import (FormatError, lin_sequence_from_json, move_from_json,
                     move_to_json, movie_from_json, movie_to_json)
from .text import LexError, format_front, parse_front, parse_pattern

class NoSuchJob(KeyError):
    pass


_CLIENT_ERRORS = (LexError, FormatError, MoveNotApplicable,
                  FrontError, ValueError, KeyError)


class FrontBody(BaseModel):
    front: str


class RulingsBody(BaseModel):
    front: str
    graded: bool = False
    polynomial: bool = False


class ApplyMoveBody(BaseModel):
    front: str
    move: dict


class ObstructBody(BaseModel):
    lower: str
    upper: str
    chi: int
    qs: list[int] = Field(default=[2, 3, 4, 5, 7, 8, 9])


class SatelliteBody(BaseModel):
    companion: str
    pattern: str
    twists: int = 0


class SearchBody(BaseModel):
    lower: str
    upper: str
    max_steps: Optional[int] = None
    max_strands: Optional[int] = None
    max_events: Optional[int] = None
    timeout: Optional[float] = None
    genus: Any = GENUS_ANY


class _Job:
    def __init__(self):
        self.id = uuid.uuid4().hex
        self.status = "running"
        self.result: Optional[dict] = None
        self.cancelled = threading.Event()
        self.lock = threading.Lock()


class _JobRegistry:
    def __init__(self):
        self._jobs: dict[str, _Job] = {}
        self._lock = threading.Lock()

    def create(self) -> _Job:
        job = _Job()
        with self._lock:
            self._jobs[job.id] = job
        return job

    def get(self, job_id: str) -> Optional[_Job]:
        with self._lock:
            return self._jobs.get(job_id)


def _invariants_payload(d) -> dict:
    inv = classical_invariants(d)
    return {"tb": inv.tb, "rot": list(inv.rot), "writhe": inv.writhe,
            "right_cusps": inv.right_cusps,
            "components": d.component_count}


def _search_payload(result) -> dict:
    out = {"outcome": result.outcome,
           "expanded": result.stats.expanded,
           "dedup_hits": result.stats.dedup_hits}
    if result.reason:
        out["reason"] = result.reason
    if result.movie is not None:
        out["movie"] = movie_to_json(result.movie)
    return out


def create_app() -> FastAPI:
    app = FastAPI(title="legcob service")
    registry = _JobRegistry()

    @app.exception_handler(Exception)
    async def on_error(request: Request, exc: Exception):
        status = 400 if isinstance(exc, _CLIENT_ERRORS) else 500
        return JSONResponse(
            status_code=status,
            content={"error": {"code": type(exc).__name__,
                               "message": str(exc)}})

    @app.post("/parse")
    def parse_endpoint(body: FrontBody):
        d = parse_front(body.front)
        return {"front": format_front(d), "events": len(d.events),
                "components": d.component_count}

    @app.post("/invariants")
    def invariants_endpoint(body: FrontBody):
        return _invariants_payload(parse_front(body.front))

    @app.post("/rulings")
    def rulings_endpoint(body: RulingsBody):
        d = parse_front(body.front)
        out: dict[str, Any] = {
            "count": ruling_count(d, graded=body.graded),
            "graded": body.graded,
        }
        if body.polynomial:
            out["polynomial"] = str(ruling_polynomial(d, graded=body.graded))
        return out

    @app.post("/applicable-moves")
    def applicable_moves_endpoint(body: FrontBody):
        d = parse_front(body.front)
        return {"moves": [move_to_json(m) for m in applicable_moves(d)]}

    @app.post("/apply-move")
    def apply_move_endpoint(body: ApplyMoveBody):
        d = parse_front(body.front)
        nd = apply_move(d, move_from_json(body.move))
        return {"front": format_front(nd)}

    @app.post("/verify-movie")
    def verify_movie_endpoint(body: dict):
        m = movie_from_json(body)
        s = verify(m)
        check = classical_check(m.start, m.claimed_end, s.chi)
        return {"chi": s.chi, "genus": s.genus,
                "zero_handles": s.zero_handles, "saddles": s.saddles,
                "surface_components": s.surface_components,
                "consistency": summary_consistency(m),
                "classical_check": check.verdict}

    @app.post("/obstruct")
    def obstruct_endpoint(body: ObstructBody):
        lower = parse_front(body.lower)
        upper = parse_front(body.upper)
        count_verdict = count_obstruction(lower, upper)
        reports = polynomial_obstruction(lower, upper, body.chi, body.qs)
        obstructed = (count_verdict == OBSTRUCTED
                      or any(r.verdict == OBSTRUCTED for r in reports))
        return {"verdict": OBSTRUCTED if obstructed else "PASS",
                "count_check": count_verdict,
                "per_q": [{"q": r.q, "lhs": str(r.lhs), "rhs": str(r.rhs),
                           "verdict": r.verdict} for r in reports]}

    @app.post("/satellite")
    def satellite_endpoint(body: SatelliteBody):
        d = parse_front(body.companion)
        if body.pattern == "builtin:clasp":
            p = clasp_pattern()
        elif body.pattern == "builtin:trivial":
            p = trivial_pattern()
        else:
            p = parse_pattern(body.pattern)
        if body.twists < 0:
            raise ValueError("twist count must be nonnegative")
        if body.twists:
            p = compose(p, power(full_twist(p.strands), body.twists))
        return {"front": format_front(satellite(d, p))}

    @app.post("/lagdiag/verify")
    def lagdiag_verify_endpoint(body: dict):
        initial, lin_moves = lin_sequence_from_json(body)
        report = verify_lin_sequence(initial, lin_moves)
        return {
            "verdict": report.verdict,
            "initial_e1_ok": report.initial_e1_ok,
            "steps": [{"index": s.index, "variant": s.variant,
                       "error": s.error, "e1_ok": s.e1_ok,
                       "merge_e2": s.merge_e2} for s in report.steps],
        }

    @app.post("/search")
    def search_endpoint(body: SearchBody):
        lower = parse_front(body.lower)
        upper = parse_front(body.upper)
        kwargs: dict[str, Any] = {}
        if body.max_steps is not None:
            kwargs["max_steps"] = body.max_steps
        if body.max_strands is not None:
            kwargs["max_strands"] = body.max_strands
        if body.max_events is not None:
            kwargs["max_events"] = body.max_events
        if body.timeout is not None:
            kwargs["time_limit"] = body.timeout
        budget = SearchBudget(**kwargs)
        genus = body.genus if body.genus == GENUS_ANY else int(body.genus)
        job = registry.create()

        def run():
            try:
                result = search_decomposable(
                    lower, upper, budget, genus=genus,
                    stop=job.cancelled.is_set)
                payload = _search_payload(result)
                status = "done"
            except Exception as exc:
                payload = {"error": {"code": type(exc).__name__,
                                     "message": str(exc)}}
                status = "failed"
            with job.lock:
                if job.status == "running":
                    job.status = status
                    job.result = payload

        threading.Thread(target=run, daemon=True).start()
        return {"job_id": job.id, "status": job.status}

    @app.get("/search/{job_id}")
    def search_poll_endpoint(job_id: str):
        job = registry.get(job_id)
        if job is None:
            raise NoSuchJob(f"no such job: {job_id}")
        with job.lock:
            out = {"job_id": job.id, "status": job.status}
            if job.result is not None:
                out["result"] = job.result
            return out

    @app.delete("/search/{job_id}")
    def search_cancel_endpoint(job_id: str):
        job = registry.get(job_id)
        if job is None:
            raise NoSuchJob(f"no such job: {job_id}")
        job.cancelled.set()
        with job.lock:
            if job.status == "running":
                job.status = "cancelled"
                job.result = None
        return {"job_id": job.id, "status": job.status}

    return app


def serve(host: str = "127.0.0.1", port: int = 8000):
    """Run the service under uvicorn; blocks until interrupted."""
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)
