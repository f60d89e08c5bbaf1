"""Two-version comparison of artifact trees.

Compares a baseline tree against a current one and classifies every node as
Added, Removed, Modified, Unchanged, or Moved.  Removed subtrees keep their
baseline edges so one structure shows both versions: each removed node hangs
off its baseline parent, which is either also removed or still present, so
the whole removed subtree stays attached at its nearest surviving ancestor.

Moved (same content, different tree parent) goes beyond the classic
added/removed/modified palette; exports render it in the modified class but
the data keeps the distinction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .dot import dot_edge, dot_node
from .errors import RootMismatch
from .store import Snapshot
from .tree import ArtifactTree, Edge


class ChangeStatus(str, Enum):
    ADDED = "Added"
    REMOVED = "Removed"
    MODIFIED = "Modified"
    UNCHANGED = "Unchanged"
    MOVED = "Moved"


CHANGED_STATUSES = frozenset(
    {ChangeStatus.ADDED, ChangeStatus.REMOVED, ChangeStatus.MODIFIED, ChangeStatus.MOVED}
)

# Export color classes; Moved renders in the modified class.
STATUS_CLASS = {
    ChangeStatus.ADDED: "green",
    ChangeStatus.REMOVED: "red",
    ChangeStatus.MODIFIED: "blue",
    ChangeStatus.MOVED: "blue",
    ChangeStatus.UNCHANGED: "gray",
}


@dataclass
class DeltaNode:
    status: ChangeStatus
    baseline_hash: str | None = None
    current_hash: str | None = None


@dataclass
class DeltaTree:
    """Union of a baseline and a current tree with per-node change status.

    Attributes:
        root_id: shared root of both trees.
        baseline_label / current_label: compared snapshot versions.
        nodes: delta classification per artifact id.
        node_types: artifact type per id (current wins over baseline).
        tree_edges: current edges plus baseline edges of removed nodes.
        replacement_candidates: (removed id, added id) pairs, ascending.
    """

    root_id: str
    baseline_label: str
    current_label: str
    nodes: dict[str, DeltaNode]
    node_types: dict[str, str]
    tree_edges: list[Edge] = field(default_factory=list)
    replacement_candidates: list[tuple[str, str]] = field(default_factory=list)

    def parent_map(self) -> dict[str, str]:
        return {child: parent for parent, child, _ in self.tree_edges}


def compute_delta(
    baseline_tree: ArtifactTree,
    baseline_snapshot: Snapshot,
    current_tree: ArtifactTree,
    current_snapshot: Snapshot,
) -> DeltaTree:
    """Classify every node of the two trees.

    Only in current: Added.  Only in baseline: Removed.  In both: Modified
    when content hashes differ, otherwise Moved when the tree parent
    changed, otherwise Unchanged.

    Raises:
        RootMismatch: the trees were built from different roots.
    """
    if baseline_tree.root_id != current_tree.root_id:
        raise RootMismatch(
            f"baseline root '{baseline_tree.root_id}' != current root '{current_tree.root_id}'"
        )

    base_parent = baseline_tree.parent_map()
    cur_parent = current_tree.parent_map()
    nodes: dict[str, DeltaNode] = {}
    for node_id in baseline_tree.nodes | current_tree.nodes:
        in_base = node_id in baseline_tree.nodes
        in_cur = node_id in current_tree.nodes
        base_hash = baseline_snapshot.artifacts[node_id].content_hash if in_base else None
        cur_hash = current_snapshot.artifacts[node_id].content_hash if in_cur else None
        if not in_base:
            status = ChangeStatus.ADDED
        elif not in_cur:
            status = ChangeStatus.REMOVED
        elif base_hash != cur_hash:
            status = ChangeStatus.MODIFIED
        elif base_parent.get(node_id) != cur_parent.get(node_id):
            status = ChangeStatus.MOVED
        else:
            status = ChangeStatus.UNCHANGED
        nodes[node_id] = DeltaNode(status, base_hash, cur_hash)

    edges = list(current_tree.tree_edges)
    for parent, child, link_type in baseline_tree.tree_edges:
        if nodes[child].status is ChangeStatus.REMOVED:
            edges.append((parent, child, link_type))

    node_types = dict(baseline_tree.node_types)
    node_types.update(current_tree.node_types)

    return DeltaTree(
        root_id=current_tree.root_id,
        baseline_label=baseline_tree.version_label,
        current_label=current_tree.version_label,
        nodes=nodes,
        node_types=node_types,
        tree_edges=edges,
    )


def detect_replacements(
    delta: DeltaTree, baseline_tree: ArtifactTree, current_tree: ArtifactTree
) -> list[tuple[str, str]]:
    """Pair removed nodes with added siblings of the same artifact type.

    A removed node pairs with at most one added node; matching is greedy in
    ascending id order on both sides.  The pairs are stored on the delta and
    returned; statuses are never altered, the pairs only flag likely
    replacements for rationale capture.
    """
    parent = delta.parent_map()
    removed = sorted(
        n for n, d in delta.nodes.items() if d.status is ChangeStatus.REMOVED
    )
    added = sorted(n for n, d in delta.nodes.items() if d.status is ChangeStatus.ADDED)

    unmatched = list(added)
    pairs: list[tuple[str, str]] = []
    for removed_id in removed:
        for added_id in unmatched:
            same_parent = parent.get(removed_id) == parent.get(added_id)
            same_type = (
                baseline_tree.node_types[removed_id] == current_tree.node_types[added_id]
            )
            if same_parent and same_type:
                pairs.append((removed_id, added_id))
                unmatched.remove(added_id)
                break

    delta.replacement_candidates = pairs
    return pairs


def changed_artifact_ids(delta: DeltaTree) -> set[str]:
    """Ids whose status is Added, Removed, Modified, or Moved."""
    return {n for n, d in delta.nodes.items() if d.status in CHANGED_STATUSES}


def delta_payload(delta: DeltaTree) -> dict:
    """Canonical structured export of a delta tree."""
    return {
        "schema_version": "1",
        "root": delta.root_id,
        "baseline": delta.baseline_label,
        "current": delta.current_label,
        "nodes": {
            node: {
                "status": entry.status.value,
                "artifact_type": delta.node_types[node],
                "baseline_hash": entry.baseline_hash,
                "current_hash": entry.current_hash,
            }
            for node, entry in sorted(delta.nodes.items())
        },
        "edges": [
            {"parent": p, "child": c, "link_type": t} for p, c, t in delta.tree_edges
        ],
        "replacements": [
            {"removed": removed, "added": added}
            for removed, added in delta.replacement_candidates
        ],
    }


def delta_to_dot(delta: DeltaTree) -> str:
    """Render a delta tree as DOT with status fill colors.

    Added nodes are green, removed red, modified (and moved) blue, unchanged
    gray; replacement pairs get a dashed connector.
    """
    lines = [f'digraph "{delta.root_id}" {{', "  rankdir=TB;"]
    for node in sorted(delta.nodes):
        entry = delta.nodes[node]
        lines.append(
            "  "
            + dot_node(
                node,
                label=f"{node}\\n{entry.status.value}",
                shape="box",
                style="filled",
                fillcolor=STATUS_CLASS[entry.status],
            )
        )
    for parent, child, link_type in delta.tree_edges:
        lines.append("  " + dot_edge(parent, child, label=link_type))
    for removed, added in delta.replacement_candidates:
        lines.append(
            "  " + dot_edge(removed, added, label="replaced-by", style="dashed", dir="both")
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
