"""Line-oriented ``.foon`` format.

A unit block is a run of input object lines, one motion line, output object
lines and a terminating ``//`` line::

    O<TAB>lemon
    S<TAB>whole
    O<TAB>cutting board
    M<TAB>place<TAB>3<TAB>7
    O<TAB>lemon<TAB>on:cutting board
    S<TAB>whole
    //

State lines follow their object line and may carry the ingredient list as a
third field (``S<TAB>mixed<TAB>{egg,milk}``; the state may be empty when only
ingredients are given). ``#`` starts a comment line; blank lines are ignored.
Tags are case-insensitive on input and lowercase on output.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import List, Optional, Set, Tuple

from foonkit.errors import GraphFormatError
from foonkit.features.core.models import (
    FOONGraph,
    FunctionalUnit,
    MotionNode,
    ObjectNode,
    Relation,
    RelationKind,
    normalize_label,
)
from foonkit.features.core.service import validate
from foonkit.logging import get_logger

logger = get_logger()

TERMINATOR = "//"
_RELATION_KINDS = {kind.value for kind in RelationKind}


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True, slots=True)
class ParseDiagnostic:
    line_number: int
    severity: Severity
    message: str

    def __str__(self) -> str:
        return f"line {self.line_number}: {self.severity.value}: {self.message}"


@dataclass(slots=True)
class _ObjectDraft:
    line_number: int
    name: str
    relation: Optional[Relation]
    states: List[str] = field(default_factory=list)
    ingredients: List[str] = field(default_factory=list)

    def build(self) -> ObjectNode:
        return ObjectNode(self.name, tuple(self.states), tuple(self.ingredients), self.relation)


@dataclass(slots=True)
class _Block:
    start_line: int
    inputs: List[_ObjectDraft] = field(default_factory=list)
    outputs: List[_ObjectDraft] = field(default_factory=list)
    motion: Optional[MotionNode] = None
    current: Optional[_ObjectDraft] = None
    failed: bool = False


class _GraphParser:
    def __init__(self) -> None:
        self.diagnostics: List[ParseDiagnostic] = []
        self.units: List[FunctionalUnit] = []
        self._seen_units: Set[FunctionalUnit] = set()
        self._block: Optional[_Block] = None

    def error(self, line_number: int, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(line_number, Severity.ERROR, message))
        if self._block is not None:
            self._block.failed = True

    def warning(self, line_number: int, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(line_number, Severity.WARNING, message))

    def _open_block(self, line_number: int) -> _Block:
        if self._block is None:
            self._block = _Block(start_line=line_number)
        return self._block

    def feed(self, line_number: int, line: str) -> None:
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            return
        if stripped == TERMINATOR:
            self._close_block(line_number)
            return

        fields = line.split("\t")
        tag = fields[0].strip().lower()
        if tag == "o":
            self._object_line(line_number, fields)
        elif tag == "s":
            self._state_line(line_number, fields)
        elif tag == "m":
            self._motion_line(line_number, fields)
        else:
            self.error(line_number, f"unknown line tag {fields[0].strip()[:20]!r}")

    def _object_line(self, line_number: int, fields: List[str]) -> None:
        block = self._open_block(line_number)
        block.current = None
        name = normalize_label(fields[1]) if len(fields) > 1 else ""
        if not name:
            self.error(line_number, "object line has no name")
            return
        relation: Optional[Relation] = None
        if len(fields) > 2 and fields[2].strip():
            relation = self._relation(line_number, fields[2])
            if relation is None:
                return
        if len(fields) > 3:
            self.warning(line_number, "extra fields after the relation are ignored")
        draft = _ObjectDraft(line_number, name, relation)
        (block.outputs if block.motion is not None else block.inputs).append(draft)
        block.current = draft

    def _relation(self, line_number: int, raw: str) -> Optional[Relation]:
        kind, sep, target = raw.strip().partition(":")
        kind = kind.strip().lower()
        target = normalize_label(target)
        if not sep or kind not in _RELATION_KINDS:
            self.error(line_number, f"relation must be in:/on:/under:/none:<target>, got {raw.strip()[:40]!r}")
            return None
        if not target:
            self.error(line_number, "relation has no target object")
            return None
        return Relation(RelationKind(kind), target)

    def _state_line(self, line_number: int, fields: List[str]) -> None:
        block = self._block
        if block is None or block.current is None:
            self.error(line_number, "state line without a preceding object line")
            return
        draft = block.current
        state = normalize_label(fields[1]) if len(fields) > 1 else ""
        ingredients: List[str] = []
        if len(fields) > 2 and fields[2].strip():
            parsed = self._ingredient_list(line_number, fields[2])
            if parsed is None:
                return
            ingredients = parsed
        if len(fields) > 3:
            self.warning(line_number, "extra fields after the ingredient list are ignored")

        if state:
            if state in draft.states:
                self.warning(line_number, f"duplicate state {state!r} on {draft.name!r} dropped")
            else:
                draft.states.append(state)
        elif not ingredients:
            self.warning(line_number, "empty state line ignored")
        for ingredient in ingredients:
            if ingredient in draft.ingredients:
                self.warning(line_number, f"duplicate ingredient {ingredient!r} on {draft.name!r} dropped")
            else:
                draft.ingredients.append(ingredient)

    def _ingredient_list(self, line_number: int, raw: str) -> Optional[List[str]]:
        text = raw.strip()
        if not (text.startswith("{") and text.endswith("}")) or len(text) < 2:
            self.error(line_number, "ingredient list must be written as {a,b,...}")
            return None
        inner = text[1:-1]
        if "{" in inner or "}" in inner:
            self.error(line_number, "ingredient list must not be nested")
            return None
        return [item for item in (normalize_label(part) for part in inner.split(",")) if item]

    def _motion_line(self, line_number: int, fields: List[str]) -> None:
        block = self._open_block(line_number)
        block.current = None
        if not block.inputs:
            self.error(line_number, "motion line before any object line")
            return
        if block.motion is not None:
            self.error(line_number, "unit has more than one motion line")
            return
        label = normalize_label(fields[1]) if len(fields) > 1 else ""
        if not label:
            self.error(line_number, "motion line has no label")
            return
        start: Optional[str] = None
        end: Optional[str] = None
        if len(fields) == 4:
            start, end = fields[2], fields[3]
        elif len(fields) != 2:
            self.error(line_number, "motion line takes either no timestamps or a start and an end")
            return
        block.motion = MotionNode(label, start, end)

    def _close_block(self, line_number: int) -> None:
        block = self._block
        self._block = None
        if block is None:
            self.warning(line_number, "empty unit block ignored")
            return
        if block.failed:
            return
        if block.motion is None:
            self.diagnostics.append(ParseDiagnostic(line_number, Severity.ERROR, "unit has no motion line"))
            return
        unit = FunctionalUnit(
            self._unique_nodes(block.inputs, "input"),
            block.motion,
            self._unique_nodes(block.outputs, "output"),
        )
        for violation in validate(FOONGraph((unit,))):
            self.diagnostics.append(ParseDiagnostic(block.start_line, Severity.ERROR, violation.message))
            return
        if unit in self._seen_units:
            self.warning(block.start_line, f"duplicate unit ({unit.motion.label}) dropped")
            return
        self._seen_units.add(unit)
        self.units.append(unit)

    def _unique_nodes(self, drafts: List[_ObjectDraft], side: str) -> Tuple[ObjectNode, ...]:
        nodes: List[ObjectNode] = []
        for draft in drafts:
            node = draft.build()
            if node in nodes:
                self.warning(draft.line_number, f"duplicate {side} object {node.name!r} dropped")
                continue
            nodes.append(node)
        return tuple(nodes)

    def finish(self) -> Tuple[FOONGraph, List[ParseDiagnostic]]:
        if self._block is not None:
            start = self._block.start_line
            self._block = None
            self.diagnostics.append(ParseDiagnostic(start, Severity.ERROR, "unterminated unit block (missing //)"))
        return FOONGraph(tuple(self.units)), self.diagnostics


def parse_graph(text: str) -> Tuple[FOONGraph, List[ParseDiagnostic]]:
    parser = _GraphParser()
    for line_number, line in enumerate(text.splitlines(), start=1):
        parser.feed(line_number, line)
    graph, diagnostics = parser.finish()
    logger.debug(
        "[PARSE] units=%s errors=%s warnings=%s",
        len(graph),
        sum(1 for d in diagnostics if d.severity is Severity.ERROR),
        sum(1 for d in diagnostics if d.severity is Severity.WARNING),
    )
    return graph, diagnostics


def parse_graph_bytes(data: bytes) -> Tuple[FOONGraph, List[ParseDiagnostic]]:
    try:
        text = data.decode("utf-8")
        decode_warning = None
    except UnicodeDecodeError as exc:
        text = data.decode("utf-8", errors="replace")
        decode_warning = ParseDiagnostic(
            max(1, text.count("\n", 0, exc.start) + 1),
            Severity.WARNING,
            f"invalid UTF-8 at byte {exc.start}; replaced",
        )
    graph, diagnostics = parse_graph(text)
    if decode_warning is not None:
        diagnostics.insert(0, decode_warning)
    return graph, diagnostics


def has_errors(diagnostics: List[ParseDiagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)


def _object_lines(node: ObjectNode) -> List[str]:
    head = f"o\t{node.name}"
    if node.relation is not None:
        head += f"\t{node.relation.render()}"
    lines = [head]
    ingredients = "{" + ",".join(node.ingredients) + "}" if node.ingredients else ""
    if node.states:
        for position, state in enumerate(node.states):
            if position == 0 and ingredients:
                lines.append(f"s\t{state}\t{ingredients}")
            else:
                lines.append(f"s\t{state}")
    elif ingredients:
        lines.append(f"s\t\t{ingredients}")
    return lines


def serialize_graph(graph: FOONGraph) -> str:
    lines: List[str] = []
    for unit in graph.units:
        for node in unit.inputs:
            lines.extend(_object_lines(node))
        motion = unit.motion
        if motion.start_time is None and motion.end_time is None:
            lines.append(f"m\t{motion.label}")
        else:
            lines.append(f"m\t{motion.label}\t{motion.start_time or ''}\t{motion.end_time or ''}")
        for node in unit.outputs:
            lines.extend(_object_lines(node))
        lines.append(TERMINATOR)
    return "".join(f"{line}\n" for line in lines)


def read_graph(path: Path) -> Tuple[FOONGraph, List[ParseDiagnostic]]:
    return parse_graph_bytes(Path(path).read_bytes())


def _checked(graph: FOONGraph, diagnostics: List[ParseDiagnostic], source: str) -> FOONGraph:
    for diagnostic in diagnostics:
        if diagnostic.severity is Severity.WARNING:
            logger.warning("[PARSE] %s: %s", source, diagnostic)
    if has_errors(diagnostics):
        errors = [d for d in diagnostics if d.severity is Severity.ERROR]
        raise GraphFormatError(f"{source}: {len(errors)} parse error(s)", diagnostics=errors)
    return graph


def graph_from_text(text: str, source: str = "<text>") -> FOONGraph:
    """Like parse_graph, but raises GraphFormatError when any error diagnostic is produced."""
    return _checked(*parse_graph(text), source)


def load_graph(path: Path) -> FOONGraph:
    """Read a graph file, raising GraphFormatError when it has error diagnostics."""
    return _checked(*read_graph(path), str(path))


def write_graph(path: Path, graph: FOONGraph) -> None:
    Path(path).write_text(serialize_graph(graph), encoding="utf-8")


__all__ = [
    "Severity",
    "ParseDiagnostic",
    "parse_graph",
    "parse_graph_bytes",
    "has_errors",
    "serialize_graph",
    "read_graph",
    "graph_from_text",
    "load_graph",
    "write_graph",
]
