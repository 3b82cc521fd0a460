"""HTTP/JSON service for running preference studies.

Endpoints (all schemas JSON):

* ``POST /api/study/{sid}/raters``        {"rater_id"} -> registration
* ``GET  /api/study/{sid}/next?rater=R``  next unrated item or done
* ``POST /api/ratings``                   one form submission (all dims)
* ``POST /api/flags``                     flag + skip an item
* ``GET  /api/study/{sid}/results``       aggregates with CIs
* ``GET  /api/study/{sid}/protocol``      question/option/flag texts
* ``GET  /api/media/{ref}``               static media with Range support

A submission is idempotent per (item, rater, dimension): resubmission
replaces the effective value while the event log keeps the audit trail.
"""

from __future__ import annotations

import re
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from ..errors import ValidationError
from .aggregate import aggregate
from .store import FlagRecord, RatingRecord
from .study import Study, UnknownRaterError

_RANGE_RE = re.compile(r"bytes=(\d*)-(\d*)")


class RatingResponse(BaseModel):
    dimension_id: str
    value: int


class RatingSubmission(BaseModel):
    study_id: str
    item_id: str
    rater_id: str
    responses: list[RatingResponse]
    client_key: str | None = None  # idempotency key, echoed back


class FlagSubmission(BaseModel):
    study_id: str
    item_id: str
    rater_id: str
    categories: list[str]
    note: str = ""


class RaterRegistration(BaseModel):
    rater_id: str


def create_app(studies: dict[str, Study], media_root: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="dyadicmotion rating service")
    media_root = Path(media_root) if media_root is not None else None

    def get_study(study_id: str) -> Study:
        study = studies.get(study_id)
        if study is None:
            raise HTTPException(status_code=404, detail=f"unknown study {study_id!r}")
        return study

    @app.exception_handler(UnknownRaterError)
    async def _unknown_rater(_req: Request, exc: UnknownRaterError):
        return JSONResponse(status_code=403, content={"error": str(exc)})

    @app.exception_handler(ValidationError)
    async def _bad_request(_req: Request, exc: ValidationError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.post("/api/study/{study_id}/raters")
    def register(study_id: str, body: RaterRegistration):
        study = get_study(study_id)
        study.register_rater(body.rater_id)
        return {"ok": True, "rater_id": body.rater_id}

    @app.get("/api/study/{study_id}/next")
    def next_item(study_id: str, rater: str):
        study = get_study(study_id)
        item = study.next_item(rater)
        if item is None:
            return {"done": True, "item": None}
        return {
            "done": False,
            "item": item.to_dict(),
            "completed_ratings": study.completed_ratings(item.item_id),
        }

    @app.post("/api/ratings")
    def post_ratings(body: RatingSubmission):
        study = get_study(body.study_id)
        expected = set(study.protocol.dimension_ids())
        seen = {r.dimension_id for r in body.responses}
        missing = expected - seen
        if missing:
            raise HTTPException(
                status_code=422,
                detail=f"incomplete form: missing dimensions {sorted(missing)}",
            )
        for response in body.responses:
            study.record_rating(
                RatingRecord(
                    item_id=body.item_id,
                    rater_id=body.rater_id,
                    dimension_id=response.dimension_id,
                    value=response.value,
                )
            )
        return {"ok": True, "recorded": len(body.responses), "client_key": body.client_key}

    @app.post("/api/flags")
    def post_flag(body: FlagSubmission):
        study = get_study(body.study_id)
        study.record_flag(
            FlagRecord(
                item_id=body.item_id,
                rater_id=body.rater_id,
                categories=body.categories,
                note=body.note,
            )
        )
        return {"ok": True}

    @app.get("/api/study/{study_id}/results")
    def results(study_id: str):
        study = get_study(study_id)
        return aggregate(study).as_dict()

    @app.get("/api/study/{study_id}/protocol")
    def protocol(study_id: str):
        return get_study(study_id).protocol.to_dict()

    @app.get("/api/media/{ref:path}")
    def media(ref: str, request: Request):
        if media_root is None:
            raise HTTPException(status_code=404, detail="no media root configured")
        target = (media_root / ref).resolve()
        if not str(target).startswith(str(media_root.resolve())) or not target.is_file():
            raise HTTPException(status_code=404, detail=f"media {ref!r} not found")
        data = target.read_bytes()
        range_header = request.headers.get("range")
        if not range_header:
            return Response(content=data, media_type="application/octet-stream")
        match = _RANGE_RE.fullmatch(range_header.strip())
        if not match:
            raise HTTPException(status_code=416, detail="malformed Range header")
        start_s, end_s = match.groups()
        start = int(start_s) if start_s else 0
        end = int(end_s) if end_s else len(data) - 1
        if start_s == "" and end_s:  # suffix form: last N bytes
            start = max(0, len(data) - int(end_s))
            end = len(data) - 1
        if start >= len(data) or start > end:
            raise HTTPException(status_code=416, detail="range out of bounds")
        end = min(end, len(data) - 1)
        chunk = data[start : end + 1]
        return Response(
            content=chunk,
            status_code=206,
            media_type="application/octet-stream",
            headers={
                "Content-Range": f"bytes {start}-{end}/{len(data)}",
                "Accept-Ranges": "bytes",
            },
        )

    return app
