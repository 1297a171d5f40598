from __future__ import annotations

from pathlib import Path

import networkx as nx

from .models import FOONGraph


def to_networkx(graph: FOONGraph) -> nx.DiGraph:
    """Bipartite view: object nodes (bipartite=0) and one motion node per unit (bipartite=1)."""
    digraph = nx.DiGraph()
    object_ids = {}
    for number, node in enumerate(graph.object_nodes()):
        node_id = f"o{number}"
        object_ids[node] = node_id
        digraph.add_node(node_id, bipartite=0, kind="object", label=node.label(), shape="ellipse")
    for index, unit in enumerate(graph.units):
        motion_id = f"m{index}"
        digraph.add_node(motion_id, bipartite=1, kind="motion", label=unit.motion.label, shape="box")
        for node in unit.inputs:
            digraph.add_edge(object_ids[node], motion_id)
        for node in unit.outputs:
            digraph.add_edge(motion_id, object_ids[node])
    return digraph


def write_dot(graph: FOONGraph, path: Path) -> None:
    nx.nx_pydot.write_dot(to_networkx(graph), str(path))
