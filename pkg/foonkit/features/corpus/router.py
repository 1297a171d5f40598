from __future__ import annotations

import json
from typing import Any, Dict, List

from fastapi import APIRouter
from pydantic import BaseModel, Field

from foonkit.errors import FoonkitError, to_http_exception
from foonkit.features.recipegen.service import recipe_from_dict
from foonkit.settings import get_settings

from .service import match_equivalent, parse_corpus

router = APIRouter(prefix="/api", tags=["corpus"])
settings = get_settings()


class MatchRequest(BaseModel):
    recipe: Dict[str, Any]
    corpus: List[Any]
    k: int = Field(default_factory=lambda: settings.match_top_k, ge=1)


class MatchItem(BaseModel):
    id: str
    title: str
    score: float


@router.post("/match", response_model=List[MatchItem])
async def match(payload: MatchRequest) -> List[MatchItem]:
    try:
        generated = recipe_from_dict(payload.recipe)
        corpus = parse_corpus(json.dumps(payload.corpus).encode("utf-8"), source="request")
        matches = match_equivalent(generated, corpus, payload.k)
    except FoonkitError as exc:
        raise to_http_exception(exc) from exc
    return [MatchItem(**m.to_dict()) for m in matches]
