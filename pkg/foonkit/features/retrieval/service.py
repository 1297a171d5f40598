"""Task-tree retrieval over a (universal) FOON.

Objects are matched on their descriptor: name, state set and ingredient set.
A relation says where an object sits and does not make it another object, so
a kitchen's ``lemon (whole)`` satisfies an input ``lemon (whole) [on:cutting
board]``. Only a relation written on the goal itself narrows the search to
units that output the goal in that placement.
"""
from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Deque, Dict, List, Optional, Sequence, Set, Tuple

from foonkit.errors import FoonkitError, GoalNotInGraph, UnreachableGoal
from foonkit.features.core.models import FOONGraph, ObjectNode, TaskTree
from foonkit.logging import get_logger

from .kitchen import Kitchen

logger = get_logger()

Plan = Tuple[int, ...]


def _closure(foon: FOONGraph, kitchen: Kitchen) -> Set[ObjectNode]:
    available: Set[ObjectNode] = set(kitchen.items)
    remaining: List[int] = []
    queue: Deque[int] = deque()
    for index, unit in enumerate(foon.units):
        needs = {node.descriptor for node in unit.inputs} - available
        remaining.append(len(needs))
        if not needs:
            queue.append(index)
    while queue:
        index = queue.popleft()
        for produced in (node.descriptor for node in foon.units[index].outputs):
            if produced in available:
                continue
            available.add(produced)
            for consumer in foon.consumers_of(produced):
                remaining[consumer] -= 1
                if remaining[consumer] == 0:
                    queue.append(consumer)
    return available


def reachable_goals(foon: FOONGraph, kitchen: Kitchen) -> Set[ObjectNode]:
    """Descriptors the kitchen can be turned into, excluding what it already holds."""
    return _closure(foon, kitchen) - set(kitchen.items)


def _goal_producers(foon: FOONGraph, goal: ObjectNode) -> Tuple[int, ...]:
    candidates = foon.producers_of(goal)
    if goal.relation is None:
        return candidates
    return tuple(index for index in candidates if goal in foon.units[index].outputs)


class _TreeSearch:
    """Depth-wise over candidate units, breadth-wise over each candidate's inputs.

    Nodes on the current path are in progress and are never re-expanded.
    Solved nodes are memoised; a failure is memoised only when it did not
    depend on an in-progress cut-off.
    """

    def __init__(self, foon: FOONGraph, kitchen: Kitchen, derivable: Set[ObjectNode]) -> None:
        self._foon = foon
        self._kitchen = kitchen
        self._derivable = derivable
        self._solved: Dict[ObjectNode, Plan] = {}
        self._failed: Set[ObjectNode] = set()
        self._in_progress: Set[ObjectNode] = set()
        self.expansions = 0

    def solve(self, goal: ObjectNode) -> Optional[Plan]:
        # a placed goal keys on its full identity, apart from its own descriptor
        plan, _ = self._solve(goal, _goal_producers(self._foon, goal))
        return plan

    def _solve(self, key: ObjectNode, candidates: Sequence[int]) -> Tuple[Optional[Plan], bool]:
        if key in self._solved:
            return self._solved[key], False
        if key in self._failed:
            return None, False
        if key in self._in_progress:
            return None, True

        self.expansions += 1
        self._in_progress.add(key)
        blocked = False
        try:
            for index in candidates:
                pending = list(
                    dict.fromkeys(
                        node.descriptor for node in self._foon.units[index].inputs if node not in self._kitchen
                    )
                )
                if any(n not in self._derivable or n in self._failed for n in pending):
                    continue
                if any(n in self._in_progress for n in pending):
                    blocked = True
                    continue
                plan: List[int] = []
                for needed in pending:
                    sub_plan, sub_blocked = self._solve(needed, self._foon.producers_of(needed))
                    blocked = blocked or sub_blocked
                    if sub_plan is None:
                        break
                    plan.extend(sub_plan)
                else:
                    plan.append(index)
                    solved = tuple(dict.fromkeys(plan))
                    self._solved[key] = solved
                    return solved, False
            if not blocked:
                self._failed.add(key)
            return None, blocked
        finally:
            self._in_progress.discard(key)


def retrieve(foon: FOONGraph, goal: ObjectNode, kitchen: Kitchen) -> TaskTree:
    if goal.relation is None and goal in kitchen:
        logger.debug("[RETRIEVE] goal=%s already in kitchen", goal.label())
        return TaskTree(FOONGraph(()), goal, kitchen.items)
    if not _goal_producers(foon, goal):
        raise GoalNotInGraph(f"no functional unit produces {goal.label()!r}")

    derivable = _closure(foon, kitchen)
    if goal.descriptor not in derivable:
        raise UnreachableGoal(f"{goal.label()!r} cannot be made from this kitchen")

    search = _TreeSearch(foon, kitchen, derivable)
    plan = search.solve(goal)
    if plan is None:
        raise UnreachableGoal(f"no executable task tree for {goal.label()!r}")
    logger.info("[RETRIEVE] goal=%s units=%s expansions=%s", goal.label(), len(plan), search.expansions)
    return TaskTree(FOONGraph(tuple(foon.units[index] for index in plan)), goal, kitchen.items)


@dataclass(frozen=True, slots=True)
class RetrievalResult:
    goal: ObjectNode
    tree: Optional[TaskTree] = None
    error: Optional[FoonkitError] = None

    @property
    def ok(self) -> bool:
        return self.tree is not None


def _retrieve_one(foon: FOONGraph, goal: ObjectNode, kitchen: Kitchen) -> RetrievalResult:
    try:
        return RetrievalResult(goal, tree=retrieve(foon, goal, kitchen))
    except UnreachableGoal as exc:
        return RetrievalResult(goal, error=exc)


def retrieve_many(
    foon: FOONGraph,
    goals: Sequence[ObjectNode],
    kitchen: Kitchen,
    *,
    workers: int = 1,
) -> List[RetrievalResult]:
    """Retrieve several goals; results come back in goal order."""
    if workers <= 1 or len(goals) <= 1:
        return [_retrieve_one(foon, goal, kitchen) for goal in goals]
    foon.node_index  # build the shared index before fanning out
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda goal: _retrieve_one(foon, goal, kitchen), goals))


__all__ = [
    "reachable_goals",
    "retrieve",
    "retrieve_many",
    "RetrievalResult",
]
