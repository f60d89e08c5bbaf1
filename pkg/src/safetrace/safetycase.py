"""GSN safety case model: goals, strategies, solutions, and context nodes.

The supported-by graph must be acyclic with a single root goal; solutions
are its leaves.  Context, assumption, and justification nodes attach through
in-context-of edges only.  Validation reports every violation and names the
offending node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Iterable

import yaml

from .dot import dot_edge, dot_node
from .errors import ParseError, StructureError
from .store import _load_yaml, _require_str


class SacKind(str, Enum):
    GOAL = "Goal"
    STRATEGY = "Strategy"
    SOLUTION = "Solution"
    CONTEXT = "Context"
    ASSUMPTION = "Assumption"
    JUSTIFICATION = "Justification"


ARGUMENT_KINDS = frozenset({SacKind.GOAL, SacKind.STRATEGY, SacKind.SOLUTION})
CONTEXTUAL_KINDS = frozenset({SacKind.CONTEXT, SacKind.ASSUMPTION, SacKind.JUSTIFICATION})

# Permitted (source kind -> target kinds) per edge family.
SUPPORTED_BY_RULES = {
    SacKind.GOAL: frozenset({SacKind.STRATEGY, SacKind.GOAL, SacKind.SOLUTION}),
    SacKind.STRATEGY: frozenset({SacKind.GOAL, SacKind.SOLUTION}),
}
IN_CONTEXT_OF_SOURCES = frozenset({SacKind.GOAL, SacKind.STRATEGY})


@dataclass(frozen=True)
class SacNode:
    id: str
    kind: SacKind
    statement: str = ""


@dataclass
class SafetyCase:
    """A GSN argument; edge lists are normalized to sorted order."""

    id: str
    root_goal_id: str
    nodes: dict[str, SacNode]
    supported_by: list[tuple[str, str]] = field(default_factory=list)
    in_context_of: list[tuple[str, str]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.supported_by = sorted(self.supported_by)
        self.in_context_of = sorted(self.in_context_of)

    def supporters_of(self, node_id: str) -> list[str]:
        return [target for source, target in self.supported_by if source == node_id]

    def supported_parents(self, node_id: str) -> list[str]:
        """Nodes this node supports (supported-by sources pointing at it)."""
        return [source for source, target in self.supported_by if target == node_id]


def validate_safety_case(sc: SafetyCase) -> list[str]:
    """Return every structural violation, each naming the offending node."""
    violations: list[str] = []
    all_edges = sc.supported_by + sc.in_context_of
    for source, target in all_edges:
        for endpoint in (source, target):
            if endpoint not in sc.nodes:
                violations.append(f"edge references unknown node '{endpoint}'")
    for name, edges in (("supported-by", sc.supported_by), ("in-context-of", sc.in_context_of)):
        if len(set(edges)) != len(edges):
            dupes = sorted({e for e in edges if edges.count(e) > 1})
            violations.extend(f"duplicate {name} edge '{s}' -> '{t}'" for s, t in dupes)
    if violations:
        return violations

    if sc.root_goal_id not in sc.nodes:
        return [f"root goal '{sc.root_goal_id}' is not a node"]
    root = sc.nodes[sc.root_goal_id]
    if root.kind is not SacKind.GOAL:
        violations.append(f"root goal '{root.id}' has kind '{root.kind.value}', expected 'Goal'")

    for source, target in sc.supported_by:
        src_kind = sc.nodes[source].kind
        tgt_kind = sc.nodes[target].kind
        allowed = SUPPORTED_BY_RULES.get(src_kind)
        if allowed is None:
            violations.append(
                f"supported-by source '{source}' has kind '{src_kind.value}'"
            )
        elif tgt_kind not in allowed:
            violations.append(
                f"supported-by edge '{source}' -> '{target}' targets kind '{tgt_kind.value}'"
            )
    for source, target in sc.in_context_of:
        if sc.nodes[source].kind not in IN_CONTEXT_OF_SOURCES:
            violations.append(
                f"in-context-of source '{source}' has kind '{sc.nodes[source].kind.value}'"
            )
        if sc.nodes[target].kind not in CONTEXTUAL_KINDS:
            violations.append(
                f"in-context-of edge '{source}' -> '{target}' targets kind "
                f"'{sc.nodes[target].kind.value}'"
            )

    incoming: dict[str, int] = {n: 0 for n in sc.nodes}
    for _, target in sc.supported_by:
        incoming[target] += 1
    for node in sc.nodes.values():
        if node.kind not in ARGUMENT_KINDS:
            continue
        if node.id == sc.root_goal_id:
            if incoming[node.id]:
                violations.append(f"root goal '{node.id}' is the target of a supported-by edge")
        elif incoming[node.id] == 0:
            violations.append(f"node '{node.id}' is not supported-by-reachable from any parent")

    cycle = _find_cycle(sc)
    if cycle is not None:
        violations.append("supported-by cycle: " + " -> ".join(cycle))
    return violations


def _find_cycle(sc: SafetyCase) -> list[str] | None:
    adjacency: dict[str, list[str]] = {}
    for source, target in sc.supported_by:
        adjacency.setdefault(source, []).append(target)

    WHITE, GRAY, BLACK = 0, 1, 2
    color = {n: WHITE for n in sc.nodes}
    stack: list[str] = []

    def visit(node: str) -> list[str] | None:
        color[node] = GRAY
        stack.append(node)
        for nxt in adjacency.get(node, []):
            if color[nxt] == GRAY:
                return stack[stack.index(nxt):] + [nxt]
            if color[nxt] == WHITE:
                found = visit(nxt)
                if found is not None:
                    return found
        stack.pop()
        color[node] = BLACK
        return None

    for node in sc.nodes:
        if color[node] == WHITE:
            found = visit(node)
            if found is not None:
                return found
    return None


def parse_safety_case(source: str | IO[str]) -> SafetyCase:
    """Parse and validate a safety case document.

    Raises:
        ParseError: malformed document.
        StructureError: any structural violation (reported exhaustively).
    """
    doc = _load_yaml(source, "safety case")
    body = doc.get("safety_case")
    if not isinstance(body, dict):
        raise ParseError("safety case: missing 'safety_case' section")
    sc_id = _require_str(body, "id", "safety case")
    root_goal = _require_str(body, "root_goal", f"safety case '{sc_id}'")

    nodes: dict[str, SacNode] = {}
    duplicate_ids: list[str] = []
    for entry in body.get("nodes", []) or []:
        if not isinstance(entry, dict):
            raise ParseError(f"safety case '{sc_id}': each node must be a mapping")
        node_id = _require_str(entry, "id", "safety case node")
        kind_name = _require_str(entry, "kind", f"safety case node '{node_id}'")
        try:
            kind = SacKind(kind_name)
        except ValueError:
            raise ParseError(f"safety case node '{node_id}': unknown kind '{kind_name}'") from None
        if node_id in nodes:
            duplicate_ids.append(node_id)
            continue
        nodes[node_id] = SacNode(node_id, kind, entry.get("statement", ""))

    def read_edges(key: str) -> list[tuple[str, str]]:
        edges = []
        for entry in body.get(key, []) or []:
            if not isinstance(entry, dict):
                raise ParseError(f"safety case '{sc_id}': each edge must be a mapping")
            edges.append(
                (_require_str(entry, "source", "edge"), _require_str(entry, "target", "edge"))
            )
        return edges

    sc = SafetyCase(sc_id, root_goal, nodes, read_edges("supported_by"), read_edges("in_context_of"))
    violations = [f"duplicate node id '{n}'" for n in duplicate_ids]
    violations.extend(validate_safety_case(sc))
    if violations:
        raise StructureError(violations)
    return sc


def serialize_safety_case(sc: SafetyCase) -> str:
    """Serialize to the document format; parse(serialize(x)) == x."""
    doc = {
        "safety_case": {
            "id": sc.id,
            "root_goal": sc.root_goal_id,
            "nodes": [
                {
                    "id": node.id,
                    "kind": node.kind.value,
                    **({"statement": node.statement} if node.statement else {}),
                }
                for _, node in sorted(sc.nodes.items())
            ],
            "supported_by": [{"source": s, "target": t} for s, t in sc.supported_by],
            "in_context_of": [{"source": s, "target": t} for s, t in sc.in_context_of],
        }
    }
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=False, allow_unicode=True)


def safety_case_to_dot(sc: SafetyCase, warned: Iterable[str] = ()) -> str:
    """Render as DOT with GSN shapes; warned nodes fill yellow."""
    warned_set = set(warned)
    shapes = {
        SacKind.GOAL: "box",
        SacKind.STRATEGY: "parallelogram",
        SacKind.SOLUTION: "circle",
        SacKind.CONTEXT: "box",
        SacKind.ASSUMPTION: "ellipse",
        SacKind.JUSTIFICATION: "ellipse",
    }
    lines = [f'digraph "{sc.id}" {{', "  rankdir=TB;"]
    for node_id in sorted(sc.nodes):
        node = sc.nodes[node_id]
        attrs = {"label": f"{node.id}\\n{node.kind.value}", "shape": shapes[node.kind]}
        if node.kind is SacKind.CONTEXT:
            attrs["style"] = "rounded"
        if node_id in warned_set:
            attrs["style"] = "filled"
            attrs["fillcolor"] = "yellow"
            attrs["class"] = "warned"
        lines.append("  " + dot_node(node_id, **attrs))
    for source, target in sc.supported_by:
        lines.append("  " + dot_edge(source, target))
    for source, target in sc.in_context_of:
        lines.append("  " + dot_edge(source, target, style="dashed"))
    lines.append("}")
    return "\n".join(lines) + "\n"
