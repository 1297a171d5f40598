from __future__ import annotations

from typing import Dict, List, Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field

from foonkit.errors import FoonkitError, to_http_exception
from foonkit.features.parser.service import graph_from_text

from .models import PortionTable
from .service import generate_recipe, tree_from_graph

router = APIRouter(prefix="/api", tags=["recipes"])


class RecipeRequest(BaseModel):
    tree: str
    title: Optional[str] = None
    portions: Dict[str, str] = Field(default_factory=dict)


class RecipeResponse(BaseModel):
    title: str
    steps: List[str]
    ingredients: List[str]


@router.post("/recipes", response_model=RecipeResponse)
async def recipes(payload: RecipeRequest) -> RecipeResponse:
    try:
        graph = graph_from_text(payload.tree, "tree")
        if not graph.units:
            return RecipeResponse(title=payload.title or "recipe", steps=[], ingredients=[])
        tree = tree_from_graph(graph)
        recipe = generate_recipe(tree, PortionTable(payload.portions), payload.title)
    except FoonkitError as exc:
        raise to_http_exception(exc) from exc
    return RecipeResponse(**recipe.to_dict())
