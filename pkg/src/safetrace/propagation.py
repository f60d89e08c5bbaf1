"""Horizontal links and change-warning propagation across safety assets.

A change to an artifact bubbles up its tree slice, crosses horizontal links
into fault trees, climbs to each affected top event, hops to the solution
nodes citing that fault tree as evidence, and climbs the safety case to its
root goal.  Every warned node records one shortest provenance path back to a
changed artifact (ties broken by ascending id).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Iterable, Protocol, Sequence

from .delta import DeltaTree
from .errors import DanglingLink, ParseError
from .faulttree import FaultTree
from .safetycase import SacKind, SafetyCase
from .store import _load_yaml, _require_str
from .tree import Edge


class LinkKind(str, Enum):
    EVIDENCE_OF_FT = "EvidenceOfFT"
    FAULT_MITIGATED_BY = "FaultMitigatedBy"
    FAULT_VERIFIED_BY = "FaultVerifiedBy"


FAULT_TO_ARTIFACT_KINDS = frozenset({LinkKind.FAULT_MITIGATED_BY, LinkKind.FAULT_VERIFIED_BY})


@dataclass(frozen=True)
class HorizontalLink:
    """Cross-lane join between a safety node and what grounds it.

    EvidenceOfFT joins a solution node to a fault tree's top event; the
    mitigated-by and verified-by kinds join a fault node to the artifact
    that addresses it.
    """

    source_id: str
    target_id: str
    link_kind: LinkKind


class TreeEdges(Protocol):
    """Anything carrying artifact tree structure (a tree or a delta).

    ``nodes`` must iterate artifact ids (a set or an id-keyed mapping).
    """

    tree_edges: list[Edge]
    nodes: Iterable[str]


@dataclass
class WarningSet:
    """Safety nodes flagged by change propagation.

    Attributes:
        warned_fault_nodes / warned_sac_nodes: flagged node ids.
        provenance: warned id -> shortest paths (currently one per node)
            from the warned node back to a triggering changed artifact.
    """

    warned_fault_nodes: set[str] = field(default_factory=set)
    warned_sac_nodes: set[str] = field(default_factory=set)
    provenance: dict[str, list[list[str]]] = field(default_factory=dict)

    def warned_count(self) -> int:
        return len(self.warned_fault_nodes) + len(self.warned_sac_nodes)


def parse_horizontal_links(source: str | IO[str]) -> list[HorizontalLink]:
    """Parse a horizontal-links document (``horizontal_links`` list)."""
    doc = _load_yaml(source, "horizontal links")
    raw = doc.get("horizontal_links", []) or []
    if not isinstance(raw, list):
        raise ParseError("horizontal links: 'horizontal_links' must be a list")
    links: list[HorizontalLink] = []
    for entry in raw:
        if not isinstance(entry, dict):
            raise ParseError("horizontal links: each link must be a mapping")
        source_id = _require_str(entry, "source", "horizontal link")
        target_id = _require_str(entry, "target", "horizontal link")
        kind_name = _require_str(entry, "kind", f"horizontal link '{source_id}'")
        try:
            kind = LinkKind(kind_name)
        except ValueError:
            raise ParseError(
                f"horizontal link '{source_id}': unknown kind '{kind_name}'"
            ) from None
        links.append(HorizontalLink(source_id, target_id, kind))
    return links


def propagate(
    changed: set[str],
    trees: Sequence[TreeEdges],
    fault_trees: Sequence[FaultTree],
    safety_cases: Sequence[SafetyCase],
    hlinks: Sequence[HorizontalLink],
    known_artifact_ids: set[str] | None = None,
) -> WarningSet:
    """Flag every safety node transitively affected by the changed artifacts.

    ``trees`` supplies the artifact parent structure used for bubbling; pass
    delta trees so removed artifacts still reach their surviving ancestors.
    ``known_artifact_ids`` widens the universe horizontal link targets may
    resolve against (defaults to the ids appearing in ``trees``).

    Raises:
        DanglingLink: a horizontal link endpoint does not resolve.
    """
    artifact_ids: set[str] = set()
    influence: dict[str, set[str]] = {}

    def add_edge(source: str, target: str) -> None:
        influence.setdefault(source, set()).add(target)

    for tree in trees:
        artifact_ids.update(tree.nodes)
        for parent, child, _ in tree.tree_edges:
            add_edge(child, parent)  # change bubbles up the slice

    universe = artifact_ids | (known_artifact_ids or set())

    fault_node_ids: set[str] = set()
    top_event_ids: set[str] = set()
    for ft in fault_trees:
        fault_node_ids.update(ft.nodes)
        top_event_ids.add(ft.top_event_id)
        for parent, child in ft.edges:
            add_edge(child, parent)  # warnings climb to the top event

    sac_node_ids: set[str] = set()
    solution_ids: set[str] = set()
    for sc in safety_cases:
        sac_node_ids.update(sc.nodes)
        solution_ids.update(n.id for n in sc.nodes.values() if n.kind is SacKind.SOLUTION)
        for source, target in sc.supported_by:
            add_edge(target, source)  # warnings climb the argument

    for hl in hlinks:
        if hl.link_kind in FAULT_TO_ARTIFACT_KINDS:
            if hl.source_id not in fault_node_ids:
                raise DanglingLink(f"horizontal link source '{hl.source_id}' is not a fault node")
            if hl.target_id not in universe:
                raise DanglingLink(
                    f"horizontal link target '{hl.target_id}' is not a known artifact"
                )
            add_edge(hl.target_id, hl.source_id)
        else:  # EvidenceOfFT
            if hl.source_id not in solution_ids:
                raise DanglingLink(
                    f"horizontal link source '{hl.source_id}' is not a solution node"
                )
            if hl.target_id not in top_event_ids:
                raise DanglingLink(
                    f"horizontal link target '{hl.target_id}' is not a fault tree top event"
                )
            add_edge(hl.target_id, hl.source_id)

    predecessor: dict[str, str | None] = {c: None for c in sorted(changed)}
    queue: deque[str] = deque(sorted(changed))
    while queue:
        node = queue.popleft()
        for nxt in sorted(influence.get(node, ())):
            if nxt not in predecessor:
                predecessor[nxt] = node
                queue.append(nxt)

    ws = WarningSet()
    for node in predecessor:
        if node in fault_node_ids:
            ws.warned_fault_nodes.add(node)
        elif node in sac_node_ids:
            ws.warned_sac_nodes.add(node)
        else:
            continue
        path = [node]
        while predecessor[path[-1]] is not None:
            path.append(predecessor[path[-1]])  # type: ignore[arg-type]
        ws.provenance[node] = [path]
    return ws


def warning_report(ws: WarningSet, delta: DeltaTree) -> str:
    """One line per warned safety node, ordered by id.

    Each line carries the node's lane, its provenance path, and the delta
    status of the triggering changed artifact.  An empty warning set reports
    "0 warnings".
    """
    if not ws.warned_fault_nodes and not ws.warned_sac_nodes:
        return "0 warnings\n"
    lines = []
    for node in sorted(ws.warned_fault_nodes | ws.warned_sac_nodes):
        lane = "fault" if node in ws.warned_fault_nodes else "sac"
        path = ws.provenance[node][0]
        trigger = path[-1]
        entry = delta.nodes.get(trigger)
        status = entry.status.value if entry is not None else "Unknown"
        lines.append(f"{node} warned lane={lane} path={'->'.join(path)} trigger={trigger}:{status}")
    return "\n".join(lines) + "\n"


def warnings_payload(ws: WarningSet, delta: DeltaTree) -> dict:
    """Canonical structured export of a warning set."""
    return {
        "schema_version": "1",
        "root": delta.root_id,
        "baseline": delta.baseline_label,
        "current": delta.current_label,
        "changed": sorted(
            n for n, d in delta.nodes.items() if d.status.value != "Unchanged"
        ),
        "warned_fault_nodes": sorted(ws.warned_fault_nodes),
        "warned_sac_nodes": sorted(ws.warned_sac_nodes),
        "provenance": {node: paths for node, paths in sorted(ws.provenance.items())},
    }


def warning_overlay_dot(
    ws: WarningSet,
    fault_trees: Iterable[FaultTree],
    safety_cases: Iterable[SafetyCase],
) -> str:
    """DOT rendering of all safety assets with warned nodes highlighted."""
    from .faulttree import fault_tree_to_dot
    from .safetycase import safety_case_to_dot

    warned = ws.warned_fault_nodes | ws.warned_sac_nodes
    parts = [safety_case_to_dot(sc, warned) for sc in safety_cases]
    parts += [fault_tree_to_dot(ft, warned) for ft in fault_trees]
    return "\n".join(parts)
