from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from foonkit.features.core.models import normalize_label


@dataclass(frozen=True, slots=True)
class SentenceObject:
    name: str
    states: Tuple[str, ...] = ()
    portion: Optional[str] = None

    def render(self) -> str:
        return " ".join(part for part in (self.portion, *self.states, self.name) if part)


class ExtraKind(str, Enum):
    ROUTE = "route"
    UTENSIL = "utensil"


@dataclass(frozen=True, slots=True)
class Extra:
    kind: ExtraKind
    source: Optional[str] = None
    target: Optional[str] = None
    utensils: Tuple[str, ...] = ()

    def render(self) -> str:
        if self.kind is ExtraKind.UTENSIL:
            return f"with {join_with_and(list(self.utensils))}" if self.utensils else ""
        parts = []
        if self.source:
            parts.append(f"from {self.source}")
        if self.target:
            parts.append(f"to {self.target}")
        return " ".join(parts)


def join_with_and(items: List[str]) -> str:
    if len(items) <= 1:
        return "".join(items)
    return ", ".join(items[:-1]) + " and " + items[-1]


@dataclass(frozen=True, slots=True)
class Sentence:
    """One instruction: a motion, grouped objects and an optional extra clause.

    ``clauses`` holds one object group per source unit; a sentence built from
    a single unit has one clause, fused sentences have several.
    """

    motion: str
    clauses: Tuple[Tuple[SentenceObject, ...], ...]
    extra: Optional[Extra] = None

    @property
    def objects(self) -> Tuple[SentenceObject, ...]:
        return tuple(obj for clause in self.clauses for obj in clause)

    def render(self) -> str:
        groups = [", ".join(obj.render() for obj in clause) for clause in self.clauses if clause]
        text = f"{self.motion} {join_with_and(groups)}"
        tail = self.extra.render() if self.extra is not None else ""
        return f"{text} {tail}" if tail else text


@dataclass(frozen=True)
class PortionTable(Mapping[str, str]):
    entries: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {
            normalize_label(name): " ".join(str(portion).split())
            for name, portion in self.entries.items()
            if normalize_label(name) and str(portion).strip()
        }
        object.__setattr__(self, "entries", cleaned)

    def __getitem__(self, name: str) -> str:
        return self.entries[normalize_label(name)]

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True, slots=True)
class Recipe:
    title: str
    steps: Tuple[str, ...] = ()
    ingredients: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, object]:
        return {"title": self.title, "steps": list(self.steps), "ingredients": list(self.ingredients)}


__all__ = [
    "SentenceObject",
    "ExtraKind",
    "Extra",
    "Sentence",
    "PortionTable",
    "Recipe",
    "join_with_and",
]
