"""Kitchen inventories and object descriptors.

One descriptor per line::

    <name>[<TAB><state>{,<state>}][<TAB>{<ing>,...}][<TAB><kind>:<target>]

Matching uses the name, state set and ingredient set. The relation column is
accepted so goals can ask for a placement; kitchen items never keep one.
On the command line ``|`` may be used instead of TAB.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple

from foonkit.errors import GraphFormatError
from foonkit.features.core.models import ObjectNode, Relation, RelationKind, normalize_label
from foonkit.features.parser.service import ParseDiagnostic, Severity, has_errors
from foonkit.logging import get_logger

logger = get_logger()

_RELATION_KINDS = {kind.value for kind in RelationKind}


@dataclass(frozen=True, slots=True)
class Kitchen:
    """What is on hand, as relation-free descriptors."""

    items: FrozenSet[ObjectNode] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", frozenset(node.descriptor for node in self.items))

    def __contains__(self, node: object) -> bool:
        return isinstance(node, ObjectNode) and node.descriptor in self.items

    def __iter__(self) -> Iterator[ObjectNode]:
        return iter(sorted(self.items, key=format_descriptor))

    def __len__(self) -> int:
        return len(self.items)

    @classmethod
    def of(cls, items: Iterable[ObjectNode]) -> "Kitchen":
        return cls(frozenset(items))


def _split_fields(text: str) -> List[str]:
    separator = "\t" if "\t" in text else "|"
    return text.split(separator)


def parse_descriptor(text: str) -> ObjectNode:
    """Parse one descriptor; raises ValueError with a readable message on bad input."""
    fields = _split_fields(text.strip("\r\n"))
    name = normalize_label(fields[0])
    if not name:
        raise ValueError("descriptor has no object name")
    states: List[str] = []
    if len(fields) > 1:
        states = [s for s in (normalize_label(part) for part in fields[1].split(",")) if s]
    ingredients: List[str] = []
    relation: Optional[Relation] = None
    for extra in fields[2:]:
        value = extra.strip()
        if not value:
            continue
        if value.startswith("{") and value.endswith("}"):
            ingredients = [i for i in (normalize_label(part) for part in value[1:-1].split(",")) if i]
            continue
        kind, sep, target = value.partition(":")
        kind = kind.strip().lower()
        if sep and kind in _RELATION_KINDS and normalize_label(target):
            relation = Relation(RelationKind(kind), target)
            continue
        raise ValueError(f"unrecognised descriptor field {value[:40]!r}")
    if len(set(states)) != len(states):
        raise ValueError(f"descriptor {name!r} repeats a state")
    if len(set(ingredients)) != len(ingredients):
        raise ValueError(f"descriptor {name!r} repeats an ingredient")
    return ObjectNode(name, tuple(states), tuple(ingredients), relation)


def format_descriptor(node: ObjectNode) -> str:
    fields = [node.name, ",".join(node.states)]
    if node.ingredients:
        fields.append("{" + ",".join(node.ingredients) + "}")
    if node.relation is not None:
        fields.append(node.relation.render())
    return "\t".join(fields).rstrip("\t")


def parse_kitchen(text: str) -> Tuple[Kitchen, List[ParseDiagnostic]]:
    items: List[ObjectNode] = []
    diagnostics: List[ParseDiagnostic] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            node = parse_descriptor(line)
        except ValueError as exc:
            diagnostics.append(ParseDiagnostic(line_number, Severity.ERROR, str(exc)))
            continue
        if node.relation is not None:
            diagnostics.append(
                ParseDiagnostic(line_number, Severity.WARNING, f"relation {node.relation.render()!r} dropped from kitchen item")
            )
            node = node.descriptor
        if node in items:
            diagnostics.append(
                ParseDiagnostic(line_number, Severity.WARNING, f"duplicate kitchen item {node.label()!r} ignored")
            )
            continue
        items.append(node)
    return Kitchen.of(items), diagnostics


def kitchen_from_text(text: str, source: str = "<kitchen>") -> Kitchen:
    kitchen, diagnostics = parse_kitchen(text)
    for diagnostic in diagnostics:
        if diagnostic.severity is Severity.WARNING:
            logger.warning("[KITCHEN] %s: %s", source, diagnostic)
    if has_errors(diagnostics):
        errors = [d for d in diagnostics if d.severity is Severity.ERROR]
        raise GraphFormatError(f"{source}: {len(errors)} kitchen error(s)", diagnostics=errors)
    return kitchen


def load_kitchen(path: Path) -> Kitchen:
    return kitchen_from_text(Path(path).read_text(encoding="utf-8"), str(path))


__all__ = [
    "Kitchen",
    "parse_descriptor",
    "format_descriptor",
    "parse_kitchen",
    "kitchen_from_text",
    "load_kitchen",
]
