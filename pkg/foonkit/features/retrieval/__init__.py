from .kitchen import (
    Kitchen,
    format_descriptor,
    kitchen_from_text,
    load_kitchen,
    parse_descriptor,
    parse_kitchen,
)
from .service import RetrievalResult, reachable_goals, retrieve, retrieve_many

__all__ = [
    "Kitchen",
    "format_descriptor",
    "kitchen_from_text",
    "load_kitchen",
    "parse_descriptor",
    "parse_kitchen",
    "RetrievalResult",
    "reachable_goals",
    "retrieve",
    "retrieve_many",
]
