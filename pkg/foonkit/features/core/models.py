"""In-memory FOON types: object and motion nodes, functional units, graphs and task trees."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple


def normalize_label(value: str) -> str:
    """Lowercase and collapse inner whitespace; the canonical form of every label."""
    return " ".join(str(value).split()).lower()


class RelationKind(str, Enum):
    IN = "in"
    ON = "on"
    UNDER = "under"
    NONE = "none"


@dataclass(frozen=True, slots=True)
class Relation:
    kind: RelationKind
    target: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", RelationKind(self.kind))
        object.__setattr__(self, "target", normalize_label(self.target))

    def render(self) -> str:
        return f"{self.kind.value}:{self.target}"


NodeKey = Tuple[str, FrozenSet[str], FrozenSet[str], Optional[Relation]]


@dataclass(frozen=True, eq=False, slots=True)
class ObjectNode:
    """An object in a given state.

    Identity covers the name, the state set, the ingredient set and the
    relation; state and ingredient order is kept for output but ignored by
    equality.
    """

    name: str
    states: Tuple[str, ...] = ()
    ingredients: Tuple[str, ...] = ()
    relation: Optional[Relation] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", normalize_label(self.name))
        object.__setattr__(self, "states", tuple(normalize_label(s) for s in self.states))
        object.__setattr__(self, "ingredients", tuple(normalize_label(i) for i in self.ingredients))

    @property
    def key(self) -> NodeKey:
        return (self.name, frozenset(self.states), frozenset(self.ingredients), self.relation)

    @property
    def descriptor(self) -> "ObjectNode":
        """The node stripped of its relation, as kitchens list items."""
        if self.relation is None:
            return self
        return ObjectNode(self.name, self.states, self.ingredients)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ObjectNode):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def label(self) -> str:
        parts = [self.name]
        if self.states:
            parts.append("(" + ", ".join(self.states) + ")")
        if self.ingredients:
            parts.append("{" + ", ".join(self.ingredients) + "}")
        if self.relation is not None:
            parts.append(f"[{self.relation.render()}]")
        return " ".join(parts)


@dataclass(frozen=True, slots=True)
class MotionNode:
    label: str
    start_time: Optional[str] = None
    end_time: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "label", normalize_label(self.label))
        for attr in ("start_time", "end_time"):
            value = getattr(self, attr)
            if value is not None:
                value = str(value).strip()
                object.__setattr__(self, attr, value or None)


UnitKey = Tuple[str, FrozenSet[Tuple[NodeKey, int]], FrozenSet[Tuple[NodeKey, int]]]


@dataclass(frozen=True, eq=False, slots=True)
class FunctionalUnit:
    """Input objects, one motion, output objects. Timestamps do not take part in identity."""

    inputs: Tuple[ObjectNode, ...]
    motion: MotionNode
    outputs: Tuple[ObjectNode, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))

    @property
    def key(self) -> UnitKey:
        return (
            self.motion.label,
            frozenset(Counter(node.key for node in self.inputs).items()),
            frozenset(Counter(node.key for node in self.outputs).items()),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctionalUnit):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def label(self) -> str:
        inputs = ", ".join(node.label() for node in self.inputs)
        outputs = ", ".join(node.label() for node in self.outputs)
        return f"{inputs} --{self.motion.label}--> {outputs}"


@dataclass(frozen=True, slots=True)
class NodeLinks:
    producers: Tuple[int, ...] = ()
    consumers: Tuple[int, ...] = ()


@dataclass(frozen=True)
class FOONGraph:
    """Ordered functional units. Subgraphs, universal FOONs and task trees share this type."""

    units: Tuple[FunctionalUnit, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "units", tuple(self.units))

    def __len__(self) -> int:
        return len(self.units)

    def __iter__(self) -> Iterator[FunctionalUnit]:
        return iter(self.units)

    @cached_property
    def node_index(self) -> Dict[ObjectNode, NodeLinks]:
        """Producers and consumers per descriptor; relations do not split entries."""
        producers: Dict[ObjectNode, List[int]] = {}
        consumers: Dict[ObjectNode, List[int]] = {}
        for index, unit in enumerate(self.units):
            for side, nodes in ((consumers, unit.inputs), (producers, unit.outputs)):
                for node in nodes:
                    bucket = side.setdefault(node.descriptor, [])
                    if not bucket or bucket[-1] != index:
                        bucket.append(index)
        descriptors = list(dict.fromkeys([*consumers, *producers]))
        return {
            node: NodeLinks(tuple(producers.get(node, ())), tuple(consumers.get(node, ())))
            for node in descriptors
        }

    def producers_of(self, node: ObjectNode) -> Tuple[int, ...]:
        links = self.node_index.get(node.descriptor)
        return links.producers if links else ()

    def consumers_of(self, node: ObjectNode) -> Tuple[int, ...]:
        links = self.node_index.get(node.descriptor)
        return links.consumers if links else ()

    def object_nodes(self) -> List[ObjectNode]:
        """Distinct nodes, relations included, in order of first appearance."""
        return list(dict.fromkeys(node for unit in self.units for node in (*unit.inputs, *unit.outputs)))

    @classmethod
    def of(cls, units: Iterable[FunctionalUnit]) -> "FOONGraph":
        return cls(tuple(units))


@dataclass(frozen=True)
class TaskTree:
    """Units executable from ``kitchen`` toward ``goal``.

    Kitchen items are kept as descriptors. An input is available once an
    item with the same name, states and ingredients is, wherever it sits.
    """

    graph: FOONGraph
    goal: ObjectNode
    kitchen: FrozenSet[ObjectNode] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kitchen", frozenset(node.descriptor for node in self.kitchen))

    @property
    def units(self) -> Tuple[FunctionalUnit, ...]:
        return self.graph.units

    def replay(self, order: Optional[Iterable[FunctionalUnit]] = None) -> List[ObjectNode]:
        """Inputs that were not available when their unit ran; empty means the order is sound."""
        available = set(self.kitchen)
        missing: List[ObjectNode] = []
        for unit in order if order is not None else self.units:
            missing.extend(node for node in unit.inputs if node.descriptor not in available)
            available.update(node.descriptor for node in unit.outputs)
        return missing


__all__ = [
    "normalize_label",
    "RelationKind",
    "Relation",
    "ObjectNode",
    "MotionNode",
    "FunctionalUnit",
    "NodeLinks",
    "FOONGraph",
    "TaskTree",
]
