"""Artifact tree construction: the vertical slice reachable from a root.

Traversal follows downstream link types only, breadth-first, visiting
children in ascending id order so identical inputs always produce identical
trees.  The first parent to reach a node wins; links that reach an
already-visited node are kept as cross edges, which also guarantees
termination when instance data contains cycles the schema forbids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .dot import dot_edge, dot_node
from .errors import UnknownRoot
from .store import Snapshot, TraceabilityInformationModel

# (parent id, child id, link type)
Edge = tuple[str, str, str]


@dataclass
class ArtifactTree:
    """A rooted slice of one snapshot.

    Attributes:
        root_id: the slice root.
        version_label: snapshot the slice was built from.
        nodes: every artifact id in the slice.
        node_types: artifact type per node id.
        tree_edges: spanning edges in BFS discovery order.
        cross_edges: links to already-visited nodes, discovery order.
    """

    root_id: str
    version_label: str
    nodes: set[str]
    node_types: dict[str, str]
    tree_edges: list[Edge] = field(default_factory=list)
    cross_edges: list[Edge] = field(default_factory=list)

    def parent_map(self) -> dict[str, str]:
        """Child id -> parent id over tree edges; the root has no entry."""
        return {child: parent for parent, child, _ in self.tree_edges}


@dataclass
class TreeStats:
    node_count: int
    depth: int
    counts_by_type: dict[str, int]


def build_tree(
    snapshot: Snapshot, root_id: str, tim: TraceabilityInformationModel
) -> ArtifactTree:
    """Build the downstream slice of ``snapshot`` rooted at ``root_id``.

    Raises:
        UnknownRoot: ``root_id`` is not an artifact in the snapshot.
    """
    if root_id not in snapshot.artifacts:
        raise UnknownRoot(f"root '{root_id}' not found in snapshot '{snapshot.version_label}'")

    downstream = tim.downstream_link_names()
    children: dict[str, list[tuple[str, str]]] = {}
    for link in snapshot.links:
        if link.link_type in downstream:
            children.setdefault(link.source_id, []).append((link.target_id, link.link_type))
    for outgoing in children.values():
        outgoing.sort()

    tree = ArtifactTree(
        root_id=root_id,
        version_label=snapshot.version_label,
        nodes={root_id},
        node_types={root_id: snapshot.artifacts[root_id].artifact_type},
    )
    queue: deque[str] = deque([root_id])
    while queue:
        node = queue.popleft()
        for child, link_type in children.get(node, []):
            if child in tree.nodes:
                tree.cross_edges.append((node, child, link_type))
            else:
                tree.nodes.add(child)
                tree.node_types[child] = snapshot.artifacts[child].artifact_type
                tree.tree_edges.append((node, child, link_type))
                queue.append(child)
    return tree


def tree_stats(tree: ArtifactTree) -> TreeStats:
    """Node count, maximum depth (single node = 0), and per-type counts."""
    depth_of = {tree.root_id: 0}
    for parent, child, _ in tree.tree_edges:
        depth_of[child] = depth_of[parent] + 1
    counts: dict[str, int] = {}
    for node in tree.nodes:
        node_type = tree.node_types[node]
        counts[node_type] = counts.get(node_type, 0) + 1
    return TreeStats(
        node_count=len(tree.nodes),
        depth=max(depth_of.values()),
        counts_by_type=dict(sorted(counts.items())),
    )


def tree_payload(tree: ArtifactTree) -> dict:
    """Canonical structured export of a tree (nodes + edges)."""
    return {
        "schema_version": "1",
        "root": tree.root_id,
        "version": tree.version_label,
        "nodes": {
            node: {"artifact_type": tree.node_types[node]} for node in sorted(tree.nodes)
        },
        "tree_edges": [
            {"parent": p, "child": c, "link_type": t} for p, c, t in tree.tree_edges
        ],
        "cross_edges": [
            {"parent": p, "child": c, "link_type": t} for p, c, t in tree.cross_edges
        ],
    }


def tree_to_dot(tree: ArtifactTree) -> str:
    """Render a tree as DOT; cross edges are dashed."""
    lines = [f'digraph "{tree.root_id}" {{', "  rankdir=TB;"]
    for node in sorted(tree.nodes):
        lines.append(
            "  " + dot_node(node, label=f"{node}\\n{tree.node_types[node]}", shape="box")
        )
    for parent, child, link_type in tree.tree_edges:
        lines.append("  " + dot_edge(parent, child, label=link_type))
    for parent, child, link_type in tree.cross_edges:
        lines.append("  " + dot_edge(parent, child, label=link_type, style="dashed"))
    lines.append("}")
    return "\n".join(lines) + "\n"
