from __future__ import annotations

import io
from typing import Any, Dict, Literal, Optional

from fastapi import APIRouter
from pydantic import BaseModel

from foonkit.errors import FoonkitError, to_http_exception
from foonkit.settings import get_settings

from .report import build_report, report_to_dict
from .survey import build_samples, load_ratings, load_respondents

router = APIRouter(prefix="/api", tags=["stats"])
settings = get_settings()


class StatsRequest(BaseModel):
    ratings: str
    respondents: str
    alpha: Optional[float] = None
    cohen_d: Optional[float] = None
    test: Optional[Literal["welch", "student"]] = None
    effective_n: Optional[Literal["count", "kish"]] = None


@router.post("/stats")
async def stats(payload: StatsRequest) -> Dict[str, Any]:
    try:
        samples = build_samples(
            load_ratings(io.StringIO(payload.ratings)),
            load_respondents(io.StringIO(payload.respondents)),
        )
        report = build_report(
            samples,
            alpha=payload.alpha if payload.alpha is not None else settings.alpha,
            cohen_d=payload.cohen_d if payload.cohen_d is not None else settings.cohen_d,
            method=payload.test or settings.t_test,
            effective_n=payload.effective_n or settings.effective_n,
        )
    except FoonkitError as exc:
        raise to_http_exception(exc) from exc
    return report_to_dict(report)
