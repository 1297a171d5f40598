from .service import (
    ParseDiagnostic,
    Severity,
    graph_from_text,
    has_errors,
    load_graph,
    parse_graph,
    parse_graph_bytes,
    read_graph,
    serialize_graph,
    write_graph,
)

__all__ = [
    "ParseDiagnostic",
    "Severity",
    "graph_from_text",
    "has_errors",
    "load_graph",
    "parse_graph",
    "parse_graph_bytes",
    "read_graph",
    "serialize_graph",
    "write_graph",
]
