"""Shared builders for graph tests."""
from __future__ import annotations

import random
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from foonkit.features.core.models import (
    FOONGraph,
    FunctionalUnit,
    MotionNode,
    ObjectNode,
    Relation,
    RelationKind,
)

DATA_DIR = Path(__file__).resolve().parents[2] / "data"

SCRAMBLED_EGGS_STEPS = [
    "mix 4 egg white and yolk",
    "pour beaten egg white and yolk, 2 tsp milk to bowl",
    "mix beaten egg white and yolk, milk",
    "pour egg mixture from bowl to cooking pan",
    "mix egg mixture",
    "cook and stir egg mixture",
    "place cooked scrambled eggs from pan to plate",
]


def obj(
    name: str,
    *states: str,
    ingredients: Sequence[str] = (),
    rel: Optional[str] = None,
) -> ObjectNode:
    relation = None
    if rel is not None:
        kind, _, target = rel.partition(":")
        relation = Relation(RelationKind(kind), target)
    return ObjectNode(name, tuple(states), tuple(ingredients), relation)


def unit(inputs: Iterable[ObjectNode], motion: str, outputs: Iterable[ObjectNode] = ()) -> FunctionalUnit:
    return FunctionalUnit(tuple(inputs), MotionNode(motion), tuple(outputs))


def lemon_units() -> List[FunctionalUnit]:
    """Place a whole lemon on a board, then slice it; the board lists the lemon as its content."""
    board = obj("cutting board", ingredients=["lemon"])
    place = unit(
        [obj("lemon", "whole"), obj("cutting board")],
        "place",
        [obj("lemon", "whole", rel="on:cutting board"), board],
    )
    slice_ = unit(
        [obj("lemon", "whole", rel="on:cutting board"), board, obj("knife")],
        "slice",
        [obj("lemon", "sliced", rel="on:cutting board"), board, obj("knife")],
    )
    return [place, slice_]


def wash_unit(name: str = "bowl") -> FunctionalUnit:
    return unit([obj(name, "dirty")], "wash", [obj(name, "clean")])


def random_graph(rng: random.Random, *, objects: int = 6, units: int = 7) -> FOONGraph:
    """Small graphs over single-state objects ``o0..oN``; units never repeat."""
    pool = [obj(f"o{i}") for i in range(objects)]
    verbs = ["mix", "cut", "pour", "heat"]
    built: List[FunctionalUnit] = []
    seen: Set[FunctionalUnit] = set()
    while len(built) < units:
        inputs = rng.sample(pool, rng.randint(1, 2))
        outputs = rng.sample(pool, rng.randint(1, 2))
        candidate = unit(inputs, rng.choice(verbs), outputs)
        if candidate in seen:
            continue
        seen.add(candidate)
        built.append(candidate)
    return FOONGraph(tuple(built))


def executable_subset(units: Sequence[FunctionalUnit], kitchen: Set[ObjectNode]) -> Set[ObjectNode]:
    """Everything a subset of units can make when applied greedily until nothing changes."""
    available = set(kitchen)
    changed = True
    pending = list(units)
    while changed:
        changed = False
        for candidate in list(pending):
            if all(node in available for node in candidate.inputs):
                available.update(candidate.outputs)
                pending.remove(candidate)
                changed = True
    return available


NodeDescriptor = Tuple[str, FrozenSet[str], FrozenSet[str]]

_NAMES = ["egg", "milk", "bowl", "pan", "lemon", "knife", "flour", "salt"]
_STATES = ["raw", "whole", "sliced", "beaten", "mixed", "hot", "clean"]
_VERBS = ["mix", "pour", "slice", "cook and stir", "place", "heat"]
_KINDS = ["in", "on", "under", "none"]


def rich_node(rng: random.Random) -> ObjectNode:
    rel = None
    if rng.random() < 0.3:
        rel = f"{rng.choice(_KINDS)}:{rng.choice(_NAMES)}"
    return obj(
        rng.choice(_NAMES),
        *rng.sample(_STATES, rng.randint(0, 2)),
        ingredients=rng.sample(_NAMES, rng.randint(0, 2)),
        rel=rel,
    )


def _distinct(nodes: Iterable[ObjectNode]) -> Tuple[ObjectNode, ...]:
    return tuple(dict.fromkeys(nodes))


def rich_unit(rng: random.Random) -> FunctionalUnit:
    """A unit with states, ingredients, relations and sometimes timestamps."""
    start = end = None
    if rng.random() < 0.5:
        first = rng.randint(0, 50)
        start, end = str(first), str(first + rng.randint(0, 20))
    return FunctionalUnit(
        _distinct(rich_node(rng) for _ in range(rng.randint(1, 3))),
        MotionNode(rng.choice(_VERBS), start, end),
        _distinct(rich_node(rng) for _ in range(rng.randint(0, 3))),
    )


def rich_graph(rng: random.Random, units: int) -> FOONGraph:
    built: Dict[FunctionalUnit, None] = {}
    while len(built) < units:
        built.setdefault(rich_unit(rng))
    return FOONGraph(tuple(built))


def reshaped(rng: random.Random, original: FunctionalUnit) -> FunctionalUnit:
    """An equal unit built from fresh objects: sides shuffled, states reversed, timestamps changed."""

    def copy(node: ObjectNode) -> ObjectNode:
        return ObjectNode(node.name.upper(), node.states[::-1], node.ingredients[::-1], node.relation)

    inputs = [copy(node) for node in original.inputs]
    outputs = [copy(node) for node in original.outputs]
    rng.shuffle(inputs)
    rng.shuffle(outputs)
    return FunctionalUnit(tuple(inputs), MotionNode(original.motion.label, "99", None), tuple(outputs))


def descriptor_key(node: ObjectNode) -> NodeDescriptor:
    return (node.name, frozenset(node.states), frozenset(node.ingredients))


def makes(units: Iterable[FunctionalUnit], kitchen: Set[NodeDescriptor]) -> Set[NodeDescriptor]:
    """Descriptors a set of units yields from ``kitchen`` when run greedily until nothing changes."""
    available = set(kitchen)
    pending = list(units)
    changed = True
    while changed:
        changed = False
        for candidate in list(pending):
            if all(descriptor_key(node) in available for node in candidate.inputs):
                available.update(descriptor_key(node) for node in candidate.outputs)
                pending.remove(candidate)
                changed = True
    return available
