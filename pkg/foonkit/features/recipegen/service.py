"""Template-based recipe text from task trees."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set

from foonkit.errors import FoonkitError
from foonkit.features.core.models import FOONGraph, FunctionalUnit, ObjectNode, TaskTree
from foonkit.features.core.service import topological_order
from foonkit.logging import get_logger
from foonkit.settings import GenerationScheme, get_scheme

from .models import Extra, ExtraKind, PortionTable, Recipe, Sentence, SentenceObject

logger = get_logger()


def _containers(unit: FunctionalUnit) -> Set[str]:
    return {
        node.relation.target
        for node in (*unit.inputs, *unit.outputs)
        if node.relation is not None
    }


def _utensils(unit: FunctionalUnit, containers: Set[str]) -> List[ObjectNode]:
    """Inputs that come out of the unit unchanged and carry nothing."""
    outputs = set(unit.outputs)
    return [
        node
        for node in unit.inputs
        if node in outputs
        and not node.ingredients
        and node.relation is None
        and node.name not in containers
    ]


def _first_target(nodes: Iterable[ObjectNode], names: Set[str]) -> Optional[str]:
    for node in nodes:
        if node.name in names and node.relation is not None:
            return node.relation.target
    return None


def _route(unit: FunctionalUnit, objects: Sequence[ObjectNode]) -> Optional[Extra]:
    names = {node.name for node in objects}
    source = _first_target(objects, names)
    target = _first_target(unit.outputs, names)
    if target == source:
        target = None
    if source is None and target is None:
        return None
    return Extra(ExtraKind.ROUTE, source=source, target=target)


def unit_to_sentence(
    unit: FunctionalUnit,
    portions: Mapping[str, str],
    seen: Set[str],
    scheme: Optional[GenerationScheme] = None,
) -> Optional[Sentence]:
    """Render one unit, or return None for a housekeeping unit.

    ``seen`` collects every name mentioned so far; portions are attached only
    at an object's first mention.
    """
    scheme = scheme or get_scheme().generation
    if should_skip(unit, scheme):
        return None
    containers = _containers(unit)
    utensils = _utensils(unit, containers)
    skipped = {node.name for node in utensils} | containers

    objects = [node for node in unit.inputs if node.name not in skipped]
    if not objects:
        objects = [node for node in unit.inputs if node.name not in containers] or list(unit.inputs)
    by_name: Dict[str, ObjectNode] = {}
    for node in objects:
        by_name.setdefault(node.name, node)
    objects = list(by_name.values())

    rendered: List[SentenceObject] = []
    for node in objects:
        portion = portions.get(node.name) if node.name not in seen else None
        rendered.append(SentenceObject(node.name, node.states, portion))
        seen.add(node.name)

    extra: Optional[Extra] = None
    verb = unit.motion.label
    if verb in scheme.source_target_verbs:
        extra = _route(unit, objects)
    elif verb in scheme.utensil_verbs and utensils:
        extra = Extra(ExtraKind.UTENSIL, utensils=tuple(node.name for node in utensils))
    if extra is not None:
        seen.update(name for name in (extra.source, extra.target, *extra.utensils) if name)
    seen.update(containers)
    return Sentence(verb, (tuple(rendered),), extra)


def should_skip(unit: FunctionalUnit, scheme: Optional[GenerationScheme] = None) -> bool:
    """True when the unit only toggles housekeeping states (washing, emptying)."""
    scheme = scheme or get_scheme().generation
    housekeeping = set(scheme.housekeeping_states)
    if any(node.ingredients for node in unit.inputs):
        return False
    before = [node for node in unit.inputs if node not in unit.outputs]
    after = [node for node in unit.outputs if node not in unit.inputs]
    if not before or len(before) != len(after):
        return False
    unpaired = list(before)
    for node in after:
        match = next(
            (
                old
                for old in unpaired
                if old.name == node.name
                and old.relation == node.relation
                and set(old.ingredients) == set(node.ingredients)
            ),
            None,
        )
        if match is None:
            return False
        unpaired.remove(match)
        changed = set(match.states) ^ set(node.states)
        if not changed or not changed <= housekeeping:
            return False
    return True


def merge_consecutive(sentences: Sequence[Sentence]) -> List[Sentence]:
    """Fuse runs that share motion and extra clause; repeated objects are dropped."""
    merged: List[Sentence] = []
    for sentence in sentences:
        if merged and merged[-1].motion == sentence.motion and merged[-1].extra == sentence.extra:
            last = merged[-1]
            present = {obj.name for obj in last.objects}
            fresh = tuple(obj for obj in sentence.objects if obj.name not in present)
            if fresh:
                merged[-1] = Sentence(last.motion, (*last.clauses, fresh), last.extra)
            continue
        merged.append(sentence)
    return merged


def generate_recipe(
    tree: TaskTree,
    portions: Optional[Mapping[str, str]] = None,
    title: Optional[str] = None,
    *,
    scheme: Optional[GenerationScheme] = None,
    merge: bool = True,
) -> Recipe:
    scheme = scheme or get_scheme().generation
    portions = portions if portions is not None else PortionTable()
    seen: Set[str] = set()
    sentences: List[Sentence] = []
    skipped = 0
    for unit in topological_order(tree):
        sentence = unit_to_sentence(unit, portions, seen, scheme)
        if sentence is None:
            skipped += 1
            continue
        sentences.append(sentence)
    if tree.units and not sentences:
        logger.warning("[RECIPE] every unit of %s was skipped as housekeeping", tree.goal.label())
    if merge:
        sentences = merge_consecutive(sentences)
    ingredients = list(dict.fromkeys(obj.name for sentence in sentences for obj in sentence.objects))
    recipe = Recipe(
        title=title or tree.goal.name,
        steps=tuple(sentence.render() for sentence in sentences),
        ingredients=tuple(ingredients),
    )
    logger.info("[RECIPE] %s steps=%s skipped=%s", recipe.title, len(recipe.steps), skipped)
    return recipe


def tree_from_graph(graph: FOONGraph, goal: Optional[ObjectNode] = None) -> TaskTree:
    """Read a stored task tree back: its kitchen is every input no other unit
    produces and, unless given, the goal is the first output of the last unit."""
    producers: Dict[ObjectNode, Set[int]] = {}
    for index, unit in enumerate(graph.units):
        for node in unit.outputs:
            producers.setdefault(node.descriptor, set()).add(index)
    kitchen = {
        node.descriptor
        for index, unit in enumerate(graph.units)
        for node in unit.inputs
        if not producers.get(node.descriptor, set()) - {index}
    }
    if goal is None:
        if not graph.units or not graph.units[-1].outputs:
            raise FoonkitError("task tree has no units with outputs; cannot infer its goal")
        goal = graph.units[-1].outputs[0]
    return TaskTree(graph, goal, frozenset(kitchen))


def render_text(recipe: Recipe) -> str:
    lines = [recipe.title]
    lines.extend(f"{number}. {step}" for number, step in enumerate(recipe.steps, start=1))
    return "\n".join(lines) + "\n"


def render_json(recipe: Recipe) -> str:
    return json.dumps(recipe.to_dict(), indent=2, ensure_ascii=False) + "\n"


def recipe_from_dict(raw: Dict[str, object]) -> Recipe:
    steps = raw.get("steps")
    if not isinstance(raw.get("title"), str) or not isinstance(steps, list):
        raise FoonkitError("recipe JSON needs a string 'title' and a list 'steps'")
    # matching scores only ingredients; without them every score would be 0
    ingredients = raw.get("ingredients")
    if not isinstance(ingredients, list):
        raise FoonkitError("recipe JSON needs a list 'ingredients' (write it with `generate --json`)")
    return Recipe(str(raw["title"]), tuple(str(s) for s in steps), tuple(str(i) for i in ingredients))


def load_recipe_json(path: Path) -> Recipe:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise FoonkitError(f"cannot read recipe {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise FoonkitError(f"recipe {path} must be a JSON object")
    return recipe_from_dict(raw)


__all__ = [
    "unit_to_sentence",
    "should_skip",
    "merge_consecutive",
    "generate_recipe",
    "tree_from_graph",
    "render_text",
    "render_json",
    "recipe_from_dict",
    "load_recipe_json",
]
