"""Reference recipe corpora and ingredient-overlap pairing."""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional, Sequence, Set, Tuple

from foonkit.errors import CorpusFormatError, EmptyCorpus, FoonkitError
from foonkit.features.recipegen.models import Recipe
from foonkit.logging import get_logger
from foonkit.settings import NormalizationScheme, get_scheme

from .normalize import normalize_ingredient, tokenize_ingredients

logger = get_logger()

TITLE_BONUS = 0.1


@dataclass(frozen=True, slots=True)
class TextRecipe:
    id: str
    title: str
    ingredients: Tuple[str, ...]
    instructions: Tuple[str, ...]


@dataclass(frozen=True, slots=True)
class FieldPaths:
    """Where each field lives in a corpus entry; ``a[].b`` walks a list of objects."""

    id: str = "id"
    title: str = "title"
    ingredients: str = "ingredients[].text"
    instructions: str = "instructions[].text"


@dataclass(frozen=True, slots=True)
class Match:
    recipe: TextRecipe
    score: float

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.recipe.id, "title": self.recipe.title, "score": round(self.score, 6)}


def _resolve(entry: Any, path: str) -> Any:
    value = entry
    for part in path.split("."):
        if value is None:
            return None
        if part.endswith("[]"):
            key = part[:-2]
            items = value.get(key) if isinstance(value, dict) else None
            if not isinstance(items, list):
                return None
            value = items
            continue
        if isinstance(value, list):
            value = [item.get(part) if isinstance(item, dict) else item for item in value]
        elif isinstance(value, dict):
            value = value.get(part)
        else:
            return None
    return value


def _text_list(value: Any) -> Tuple[str, ...]:
    if not isinstance(value, list):
        return ()
    return tuple(str(item).strip() for item in value if isinstance(item, (str, int, float)) and str(item).strip())


def _entry_to_recipe(entry: Any, fields: FieldPaths) -> Tuple[Optional[TextRecipe], str]:
    if not isinstance(entry, dict):
        return None, "entry is not an object"
    raw_id = _resolve(entry, fields.id)
    if raw_id is None or not str(raw_id).strip():
        return None, f"missing {fields.id!r}"
    title = _resolve(entry, fields.title)
    ingredients = _text_list(_resolve(entry, fields.ingredients))
    instructions = _text_list(_resolve(entry, fields.instructions))
    if not ingredients:
        return None, f"no {fields.ingredients!r}"
    if not instructions:
        return None, f"no {fields.instructions!r}"
    return TextRecipe(str(raw_id).strip(), str(title or "").strip(), ingredients, instructions), ""


def parse_corpus(data: bytes, fields: FieldPaths = FieldPaths(), *, source: str = "<corpus>") -> List[TextRecipe]:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusFormatError(f"{source}: not UTF-8 at byte {exc.start}", offset=exc.start) from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise CorpusFormatError(f"{source}: malformed JSON at byte {offset}: {exc.msg}", offset=offset) from exc
    if not isinstance(raw, list):
        raise CorpusFormatError(f"{source}: expected a JSON array of recipes", offset=0)

    recipes: List[TextRecipe] = []
    seen: Set[str] = set()
    for position, entry in enumerate(raw):
        recipe, reason = _entry_to_recipe(entry, fields)
        if recipe is None:
            logger.warning("[CORPUS] %s entry %s skipped: %s", source, position, reason)
            continue
        if recipe.id in seen:
            logger.warning("[CORPUS] %s entry %s skipped: duplicate id %r", source, position, recipe.id)
            continue
        seen.add(recipe.id)
        recipes.append(recipe)
    logger.info("[CORPUS] %s loaded=%s skipped=%s", source, len(recipes), len(raw) - len(recipes))
    return recipes


def load_corpus(path: Path, fields: FieldPaths = FieldPaths()) -> List[TextRecipe]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise FoonkitError(f"cannot read corpus {path}: {exc}") from exc
    return parse_corpus(data, fields, source=str(path))


def ingredient_overlap(a: Set[str], b: Set[str]) -> float:
    """Jaccard index; two empty sets score 0."""
    union = a | b
    if not union:
        return 0.0
    return len(a & b) / len(union)


def _score(
    generated_tokens: Set[str],
    title_tokens: Set[str],
    candidate: TextRecipe,
    scheme: NormalizationScheme,
) -> float:
    score = ingredient_overlap(generated_tokens, tokenize_ingredients(candidate.ingredients, scheme))
    if title_tokens & set(normalize_ingredient(candidate.title, scheme)):
        score = min(1.0, score + TITLE_BONUS)
    return score


def match_equivalent(
    generated: Recipe,
    corpus: Sequence[TextRecipe],
    k: int,
    *,
    workers: int = 1,
    scheme: Optional[NormalizationScheme] = None,
) -> List[Match]:
    """Top-k corpus recipes by ingredient overlap; ties keep corpus order."""
    if k < 1:
        raise FoonkitError(f"k must be at least 1, got {k}")
    if not corpus:
        raise EmptyCorpus("corpus has no valid recipes to match against")
    scheme = scheme or get_scheme().normalization
    generated_tokens = tokenize_ingredients(generated.ingredients, scheme)
    title_tokens = set(normalize_ingredient(generated.title, scheme))

    def score(candidate: TextRecipe) -> float:
        return _score(generated_tokens, title_tokens, candidate, scheme)

    if workers > 1 and len(corpus) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scores = list(pool.map(score, corpus))
    else:
        scores = [score(candidate) for candidate in corpus]

    ranked = sorted(range(len(corpus)), key=lambda index: (-scores[index], index))
    return [Match(corpus[index], scores[index]) for index in ranked[:k]]


__all__ = [
    "TextRecipe",
    "FieldPaths",
    "Match",
    "parse_corpus",
    "load_corpus",
    "ingredient_overlap",
    "match_equivalent",
]
