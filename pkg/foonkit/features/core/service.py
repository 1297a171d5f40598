from __future__ import annotations

import heapq
import re
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set

from foonkit.errors import CycleError
from foonkit.logging import get_logger

from .models import FOONGraph, FunctionalUnit, ObjectNode, TaskTree

logger = get_logger()

# Characters that would break the line format if they appeared inside a label.
_RESERVED_INGREDIENT_CHARS = re.compile(r"[,{}]")
_NUMERIC = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$")
_CONTROL = re.compile(r"[\x00-\x1f\x7f]")


@dataclass(frozen=True, slots=True)
class Violation:
    unit_index: Optional[int]
    invariant: str
    message: str

    def __str__(self) -> str:
        where = f"unit {self.unit_index}" if self.unit_index is not None else "graph"
        return f"{where}: {self.invariant}: {self.message}"


def node_equals(a: ObjectNode, b: ObjectNode) -> bool:
    return a.key == b.key


def unit_equals(a: FunctionalUnit, b: FunctionalUnit) -> bool:
    return a.key == b.key


def merge(graphs: Sequence[FOONGraph]) -> FOONGraph:
    """Union of all units, first occurrence kept."""
    seen: Set[FunctionalUnit] = set()
    units: List[FunctionalUnit] = []
    total = 0
    for graph in graphs:
        for unit in graph.units:
            total += 1
            if unit in seen:
                continue
            seen.add(unit)
            units.append(unit)
    logger.debug("[MERGE] graphs=%s units_in=%s units_out=%s", len(graphs), total, len(units))
    return FOONGraph(tuple(units))


def _check_label(value: str, what: str) -> Optional[str]:
    if not value:
        return f"{what} is empty"
    if value != " ".join(value.split()).lower():
        return f"{what} {value!r} is not trimmed lowercase"
    return None


def _node_violations(index: int, side: str, node: ObjectNode) -> Iterable[Violation]:
    problem = _check_label(node.name, f"{side} object name")
    if problem:
        yield Violation(index, "object-name", problem)
    if len(set(node.states)) != len(node.states):
        yield Violation(index, "object-states", f"{side} object {node.name!r} repeats a state")
    for state in node.states:
        if not state:
            yield Violation(index, "object-states", f"{side} object {node.name!r} has an empty state")
    if len(set(node.ingredients)) != len(node.ingredients):
        yield Violation(index, "object-ingredients", f"{side} object {node.name!r} repeats an ingredient")
    for ingredient in node.ingredients:
        if not ingredient or _RESERVED_INGREDIENT_CHARS.search(ingredient):
            yield Violation(
                index,
                "object-ingredients",
                f"{side} object {node.name!r} has an invalid ingredient {ingredient!r}",
            )
    if node.relation is not None and not node.relation.target:
        yield Violation(index, "object-relation", f"{side} object {node.name!r} has a relation without target")


def _timestamps_ordered(start: Optional[str], end: Optional[str]) -> bool:
    if start is None or end is None:
        return True
    if not (_NUMERIC.match(start) and _NUMERIC.match(end)):
        return True
    return float(start) <= float(end)


def validate(graph: FOONGraph) -> List[Violation]:
    violations: List[Violation] = []
    seen: Dict[FunctionalUnit, int] = {}
    for index, unit in enumerate(graph.units):
        if not unit.inputs:
            violations.append(Violation(index, "unit-inputs", "unit has no input objects"))
        problem = _check_label(unit.motion.label, "motion label")
        if problem:
            violations.append(Violation(index, "motion-label", problem))
        for what, stamp in (("start", unit.motion.start_time), ("end", unit.motion.end_time)):
            if stamp is not None and _CONTROL.search(stamp):
                violations.append(Violation(index, "motion-time", f"{what} time {stamp!r} contains a control character"))
        if not _timestamps_ordered(unit.motion.start_time, unit.motion.end_time):
            violations.append(
                Violation(
                    index,
                    "motion-time",
                    f"start {unit.motion.start_time} is after end {unit.motion.end_time}",
                )
            )
        for side, nodes in (("input", unit.inputs), ("output", unit.outputs)):
            for node in nodes:
                violations.extend(_node_violations(index, side, node))
            counts = Counter(nodes)
            for node, count in counts.items():
                if count > 1:
                    violations.append(
                        Violation(index, "unit-duplicate-node", f"{side} object {node.label()!r} listed {count} times")
                    )
        first = seen.setdefault(unit, index)
        if first != index:
            violations.append(Violation(index, "graph-duplicate-unit", f"unit repeats unit {first}"))
    return violations


def topological_order(tree: TaskTree) -> List[FunctionalUnit]:
    """Execution order that is stable with respect to the tree's unit order.

    Among the units whose inputs are all available, the one listed first is
    emitted next. Inputs are matched on their descriptor.
    """
    units = tree.units
    available: Set[ObjectNode] = set(tree.kitchen)
    waiting: Dict[ObjectNode, List[int]] = {}
    missing: List[int] = []
    ready: List[int] = []
    for index, unit in enumerate(units):
        needs = {node.descriptor for node in unit.inputs} - available
        missing.append(len(needs))
        for node in needs:
            waiting.setdefault(node, []).append(index)
        if not needs:
            ready.append(index)
    heapq.heapify(ready)

    order: List[FunctionalUnit] = []
    while ready:
        index = heapq.heappop(ready)
        unit = units[index]
        order.append(unit)
        for produced in (node.descriptor for node in unit.outputs):
            if produced in available:
                continue
            available.add(produced)
            for waiter in waiting.pop(produced, ()):
                missing[waiter] -= 1
                if missing[waiter] == 0:
                    heapq.heappush(ready, waiter)

    if len(order) != len(units):
        pending = [index for index, count in enumerate(missing) if count > 0]
        raise CycleError(
            f"no executable order: {len(pending)} unit(s) wait on inputs that are never produced",
            pending=pending,
        )
    return order


__all__ = [
    "Violation",
    "node_equals",
    "unit_equals",
    "merge",
    "validate",
    "topological_order",
]
