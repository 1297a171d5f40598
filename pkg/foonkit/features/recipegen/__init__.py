from .models import Extra, ExtraKind, PortionTable, Recipe, Sentence, SentenceObject
from .portions import load_portions, parse_portions
from .service import (
    generate_recipe,
    load_recipe_json,
    merge_consecutive,
    recipe_from_dict,
    render_json,
    render_text,
    should_skip,
    tree_from_graph,
    unit_to_sentence,
)

__all__ = [
    "Extra",
    "ExtraKind",
    "PortionTable",
    "Recipe",
    "Sentence",
    "SentenceObject",
    "load_portions",
    "parse_portions",
    "generate_recipe",
    "load_recipe_json",
    "merge_consecutive",
    "recipe_from_dict",
    "render_json",
    "render_text",
    "should_skip",
    "tree_from_graph",
    "unit_to_sentence",
]
