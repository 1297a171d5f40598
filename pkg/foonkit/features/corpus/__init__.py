from .normalize import normalize_ingredient, singularize, tokenize_ingredients
from .service import (
    FieldPaths,
    Match,
    TextRecipe,
    ingredient_overlap,
    load_corpus,
    match_equivalent,
    parse_corpus,
)

__all__ = [
    "normalize_ingredient",
    "singularize",
    "tokenize_ingredients",
    "FieldPaths",
    "Match",
    "TextRecipe",
    "ingredient_overlap",
    "load_corpus",
    "match_equivalent",
    "parse_corpus",
]
