from __future__ import annotations

from typing import List

from fastapi import APIRouter
from pydantic import BaseModel

from foonkit.errors import FoonkitError, to_http_exception
from foonkit.features.parser.service import graph_from_text, serialize_graph
from foonkit.logging import get_logger

from .kitchen import format_descriptor, kitchen_from_text, parse_descriptor
from .service import reachable_goals, retrieve

router = APIRouter(prefix="/api", tags=["retrieval"])
logger = get_logger()


class RetrieveRequest(BaseModel):
    foon: str
    goal: str
    kitchen: str


class RetrieveResponse(BaseModel):
    tree: str
    units: int


class ReachableRequest(BaseModel):
    foon: str
    kitchen: str


@router.post("/retrieve", response_model=RetrieveResponse)
async def retrieve_tree(payload: RetrieveRequest) -> RetrieveResponse:
    try:
        goal = parse_descriptor(payload.goal)
    except ValueError as exc:
        raise to_http_exception(FoonkitError(f"bad goal descriptor: {exc}")) from exc
    try:
        foon = graph_from_text(payload.foon, "foon")
        kitchen = kitchen_from_text(payload.kitchen, "kitchen")
        tree = retrieve(foon, goal, kitchen)
    except FoonkitError as exc:
        logger.info("[API] retrieve failed: %s", exc)
        raise to_http_exception(exc) from exc
    return RetrieveResponse(tree=serialize_graph(tree.graph), units=len(tree.units))


@router.post("/reachable", response_model=List[str])
async def reachable(payload: ReachableRequest) -> List[str]:
    try:
        foon = graph_from_text(payload.foon, "foon")
        kitchen = kitchen_from_text(payload.kitchen, "kitchen")
    except FoonkitError as exc:
        raise to_http_exception(exc) from exc
    return sorted(format_descriptor(node) for node in reachable_goals(foon, kitchen))
