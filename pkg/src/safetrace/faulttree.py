"""Boolean-gated fault tree model: parsing, validation, cut-set analysis.

A fault tree is a strict tree: one top event, AND/OR gates with at least two
children, intermediate events wrapping exactly one child, and childless
basic events.  Documents are validated exhaustively; every violation names
the offending node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import IO, Iterable

import yaml

from .dot import dot_edge, dot_node
from .errors import ParseError, StructureError
from .store import _load_yaml, _require_str


class FaultKind(str, Enum):
    TOP_EVENT = "TopEvent"
    INTERMEDIATE_EVENT = "IntermediateEvent"
    BASIC_EVENT = "BasicEvent"
    GATE = "Gate"


class GateOp(str, Enum):
    AND = "AND"
    OR = "OR"


@dataclass(frozen=True)
class FaultNode:
    id: str
    kind: FaultKind
    description: str = ""
    gate_op: GateOp | None = None


@dataclass
class FaultTree:
    """A fault tree; edges are normalized to sorted order on construction."""

    id: str
    top_event_id: str
    nodes: dict[str, FaultNode]
    edges: list[tuple[str, str]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.edges = sorted(self.edges)

    def children(self, node_id: str) -> list[str]:
        return [child for parent, child in self.edges if parent == node_id]

    def parent_map(self) -> dict[str, str]:
        return {child: parent for parent, child in self.edges}

    def basic_event_ids(self) -> set[str]:
        return {n.id for n in self.nodes.values() if n.kind is FaultKind.BASIC_EVENT}


def validate_fault_tree(ft: FaultTree) -> list[str]:
    """Return every structural violation, each naming the offending node."""
    violations: list[str] = []
    for parent, child in ft.edges:
        for endpoint in (parent, child):
            if endpoint not in ft.nodes:
                violations.append(f"edge references unknown node '{endpoint}'")
    if len(set(ft.edges)) != len(ft.edges):
        dupes = sorted({e for e in ft.edges if ft.edges.count(e) > 1})
        violations.extend(f"duplicate edge '{p}' -> '{c}'" for p, c in dupes)
    if violations:
        return violations

    if ft.top_event_id not in ft.nodes:
        return [f"top event '{ft.top_event_id}' is not a node"]

    parents: dict[str, list[str]] = {n: [] for n in ft.nodes}
    children: dict[str, list[str]] = {n: [] for n in ft.nodes}
    for parent, child in ft.edges:
        parents[child].append(parent)
        children[parent].append(child)

    top = ft.nodes[ft.top_event_id]
    if top.kind is not FaultKind.TOP_EVENT:
        violations.append(f"top event '{top.id}' has kind '{top.kind.value}', expected 'TopEvent'")
    for node in ft.nodes.values():
        if node.kind is FaultKind.TOP_EVENT and node.id != ft.top_event_id:
            violations.append(f"node '{node.id}' has kind 'TopEvent' but is not the top event")

    for node_id, incoming in parents.items():
        if node_id == ft.top_event_id:
            if incoming:
                violations.append(f"top event '{node_id}' has a parent '{incoming[0]}'")
        elif len(incoming) == 0:
            violations.append(f"node '{node_id}' has no parent")
        elif len(incoming) > 1:
            violations.append(f"node '{node_id}' has {len(incoming)} parents")

    # Parent counts alone admit disconnected cycles; require reachability.
    reachable = {ft.top_event_id}
    frontier = [ft.top_event_id]
    while frontier:
        for child in children[frontier.pop()]:
            if child not in reachable:
                reachable.add(child)
                frontier.append(child)
    for node_id in sorted(set(ft.nodes) - reachable):
        violations.append(f"node '{node_id}' is unreachable from the top event")

    for node in ft.nodes.values():
        arity = len(children[node.id])
        if node.kind is FaultKind.GATE:
            if node.gate_op is None:
                violations.append(f"gate '{node.id}' is missing its gate operator")
            if arity < 2:
                violations.append(f"gate '{node.id}' has {arity} children, needs at least 2")
        else:
            if node.gate_op is not None:
                violations.append(f"node '{node.id}' carries a gate operator but is not a gate")
            if node.kind is FaultKind.BASIC_EVENT and arity != 0:
                violations.append(f"basic event '{node.id}' has children")
            if node.kind is FaultKind.INTERMEDIATE_EVENT and arity != 1:
                violations.append(
                    f"intermediate event '{node.id}' has {arity} children, needs exactly 1"
                )
            if node.kind is FaultKind.TOP_EVENT and arity > 1:
                violations.append(f"top event '{node.id}' has {arity} children, needs at most 1")
    return violations


def parse_fault_tree(source: str | IO[str]) -> FaultTree:
    """Parse and validate a fault tree document.

    Raises:
        ParseError: malformed document.
        StructureError: any structural violation (reported exhaustively).
    """
    doc = _load_yaml(source, "fault tree")
    body = doc.get("fault_tree")
    if not isinstance(body, dict):
        raise ParseError("fault tree: missing 'fault_tree' section")
    ft_id = _require_str(body, "id", "fault tree")
    top_event = _require_str(body, "top_event", f"fault tree '{ft_id}'")

    nodes: dict[str, FaultNode] = {}
    duplicate_ids: list[str] = []
    for entry in body.get("nodes", []) or []:
        if not isinstance(entry, dict):
            raise ParseError(f"fault tree '{ft_id}': each node must be a mapping")
        node_id = _require_str(entry, "id", "fault node")
        kind_name = _require_str(entry, "kind", f"fault node '{node_id}'")
        try:
            kind = FaultKind(kind_name)
        except ValueError:
            raise ParseError(f"fault node '{node_id}': unknown kind '{kind_name}'") from None
        gate_op: GateOp | None = None
        if "gate_op" in entry:
            op_name = _require_str(entry, "gate_op", f"fault node '{node_id}'")
            try:
                gate_op = GateOp(op_name)
            except ValueError:
                raise ParseError(
                    f"fault node '{node_id}': unknown gate operator '{op_name}'"
                ) from None
        if node_id in nodes:
            duplicate_ids.append(node_id)
            continue
        nodes[node_id] = FaultNode(node_id, kind, entry.get("description", ""), gate_op)

    edges: list[tuple[str, str]] = []
    for entry in body.get("edges", []) or []:
        if not isinstance(entry, dict):
            raise ParseError(f"fault tree '{ft_id}': each edge must be a mapping")
        edges.append((_require_str(entry, "parent", "edge"), _require_str(entry, "child", "edge")))

    ft = FaultTree(ft_id, top_event, nodes, edges)
    violations = [f"duplicate node id '{n}'" for n in duplicate_ids]
    violations.extend(validate_fault_tree(ft))
    if violations:
        raise StructureError(violations)
    return ft


def serialize_fault_tree(ft: FaultTree) -> str:
    """Serialize to the document format; parse(serialize(x)) == x."""
    doc = {
        "fault_tree": {
            "id": ft.id,
            "top_event": ft.top_event_id,
            "nodes": [
                _node_doc(node) for _, node in sorted(ft.nodes.items())
            ],
            "edges": [{"parent": p, "child": c} for p, c in sorted(ft.edges)],
        }
    }
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=False, allow_unicode=True)


def _node_doc(node: FaultNode) -> dict:
    entry: dict = {"id": node.id, "kind": node.kind.value}
    if node.gate_op is not None:
        entry["gate_op"] = node.gate_op.value
    if node.description:
        entry["description"] = node.description
    return entry


def minimal_cut_sets(ft: FaultTree) -> set[frozenset[str]]:
    """Minimal sets of basic events whose joint occurrence causes the top event.

    Top-down expansion under AND/OR semantics followed by absorption, so no
    returned set is a superset of another.  A childless top event can never
    occur and yields the empty family.
    """
    children = {n: ft.children(n) for n in ft.nodes}

    def expand(node_id: str) -> set[frozenset[str]]:
        node = ft.nodes[node_id]
        if node.kind is FaultKind.BASIC_EVENT:
            return {frozenset({node_id})}
        kids = children[node_id]
        if node.kind in (FaultKind.TOP_EVENT, FaultKind.INTERMEDIATE_EVENT):
            return expand(kids[0]) if kids else set()
        if node.gate_op is GateOp.OR:
            merged: set[frozenset[str]] = set()
            for kid in kids:
                merged |= expand(kid)
            return merged
        # AND: cross product of the children's families.
        families = [expand(kid) for kid in kids]
        if any(not fam for fam in families):
            return set()
        return {frozenset().union(*combo) for combo in product(*families)}

    return _minimize(expand(ft.top_event_id))


def _minimize(sets: Iterable[frozenset[str]]) -> set[frozenset[str]]:
    """Drop every set that contains another (absorption)."""
    ordered = sorted(sets, key=len)
    kept: list[frozenset[str]] = []
    for candidate in ordered:
        if not any(existing <= candidate for existing in kept):
            kept.append(candidate)
    return set(kept)


def fault_tree_to_dot(ft: FaultTree, warned: Iterable[str] = ()) -> str:
    """Render as DOT with conventional shapes; warned nodes fill yellow."""
    warned_set = set(warned)
    shapes = {
        FaultKind.TOP_EVENT: "box",
        FaultKind.INTERMEDIATE_EVENT: "box",
        FaultKind.BASIC_EVENT: "circle",
        FaultKind.GATE: "invtriangle",
    }
    lines = [f'digraph "{ft.id}" {{', "  rankdir=TB;"]
    for node_id in sorted(ft.nodes):
        node = ft.nodes[node_id]
        label = node.id if node.kind is not FaultKind.GATE else f"{node.id}\\n{node.gate_op.value}"
        attrs = {"label": label, "shape": shapes[node.kind]}
        if node_id in warned_set:
            attrs.update(style="filled", fillcolor="yellow", **{"class": "warned"})
        lines.append("  " + dot_node(node_id, **attrs))
    for parent, child in ft.edges:
        lines.append("  " + dot_edge(parent, child))
    lines.append("}")
    return "\n".join(lines) + "\n"
