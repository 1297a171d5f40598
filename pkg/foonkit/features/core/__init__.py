from .models import (
    FOONGraph,
    FunctionalUnit,
    MotionNode,
    NodeLinks,
    ObjectNode,
    Relation,
    RelationKind,
    TaskTree,
    normalize_label,
)
from .service import Violation, merge, node_equals, topological_order, unit_equals, validate

__all__ = [
    "FOONGraph",
    "FunctionalUnit",
    "MotionNode",
    "NodeLinks",
    "ObjectNode",
    "Relation",
    "RelationKind",
    "TaskTree",
    "normalize_label",
    "Violation",
    "merge",
    "node_equals",
    "topological_order",
    "unit_equals",
    "validate",
]
