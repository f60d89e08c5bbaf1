"""Randomized generators and independent oracles shared across the suite.

The oracles deliberately re-derive results from first principles (set
membership, truth tables, flat reachability) so they stay independent of
the engine code paths they check.
"""

from __future__ import annotations

import random
from collections import deque
from datetime import datetime, timezone

from safetrace.faulttree import FaultKind, FaultNode, FaultTree, GateOp
from safetrace.propagation import HorizontalLink, LinkKind
from safetrace.safetycase import SacKind, SacNode, SafetyCase
from safetrace.store import (
    DOWNSTREAM,
    Artifact,
    LinkType,
    Snapshot,
    TraceabilityInformationModel,
    TraceLink,
)
from safetrace.tree import ArtifactTree, build_tree

# Permissive single-type model for generated corpora; built directly so the
# generators are free to wire arbitrary link shapes.
FLAT_TIM = TraceabilityInformationModel(
    ["Item"], [LinkType("contains", "Item", "Item", DOWNSTREAM)]
)

_WORDS = [
    "monitor", "fetch", "plan", "hold", "climb", "descend", "report",
    "validate", "retry", "cache", "publish", "observe",
]


def _snapshot(label: str, artifacts: list[Artifact], links: list[TraceLink]) -> Snapshot:
    return Snapshot(label, {a.id: a for a in artifacts}, links, datetime.now(timezone.utc))


def random_tree_snapshot(
    rng: random.Random, label: str, max_nodes: int = 50
) -> tuple[Snapshot, str]:
    """A random rooted tree corpus; returns (snapshot, root id)."""
    count = rng.randint(1, max_nodes)
    ids = [f"N{i:03d}" for i in range(count)]
    artifacts = [
        Artifact(node_id, "Item", summary=rng.choice(_WORDS), body=rng.choice(_WORDS))
        for node_id in ids
    ]
    links = [
        TraceLink(rng.choice(ids[:i]), ids[i], "contains") for i in range(1, count)
    ]
    return _snapshot(label, artifacts, links), ids[0]


def mutate_snapshot(
    rng: random.Random, baseline: Snapshot, root_id: str, label: str
) -> Snapshot:
    """Randomly evolve a corpus: deletes, adds, edits, moves, cross links."""
    artifacts = {
        a.id: Artifact(a.id, a.artifact_type, a.summary, a.body, dict(a.attributes))
        for a in baseline.artifacts.values()
    }
    links = list(baseline.links)

    # Delete a few non-root artifacts along with their incident links.
    deletable = [a for a in artifacts if a != root_id]
    for victim in rng.sample(deletable, k=min(len(deletable), rng.randint(0, 5))):
        del artifacts[victim]
        links = [l for l in links if victim not in (l.source_id, l.target_id)]

    # Edit content on survivors.
    for node_id in rng.sample(list(artifacts), k=min(len(artifacts), rng.randint(0, 5))):
        art = artifacts[node_id]
        artifacts[node_id] = Artifact(
            art.id, art.artifact_type, art.summary, art.body + " " + rng.choice(_WORDS)
        )

    # Re-parent a few links (move the child, keep its content).
    for _ in range(rng.randint(0, 3)):
        movable = [l for l in links if l.target_id != root_id]
        if not movable or len(artifacts) < 3:
            break
        link = rng.choice(movable)
        new_parent = rng.choice(sorted(artifacts))
        if new_parent in (link.source_id, link.target_id):
            continue
        replacement = TraceLink(new_parent, link.target_id, "contains")
        if replacement not in links:
            links[links.index(link)] = replacement

    # Add fresh nodes under surviving parents.
    for i in range(rng.randint(0, 5)):
        new_id = f"A{rng.randint(0, 999):03d}-{i}"
        if new_id in artifacts:
            continue
        parent = rng.choice(sorted(artifacts))
        artifacts[new_id] = Artifact(new_id, "Item", summary=rng.choice(_WORDS))
        links.append(TraceLink(parent, new_id, "contains"))

    # Occasionally add an extra cross link.
    if len(artifacts) >= 2 and rng.random() < 0.3:
        a, b = rng.sample(sorted(artifacts), 2)
        extra = TraceLink(a, b, "contains")
        if extra not in links:
            links.append(extra)

    return _snapshot(label, list(artifacts.values()), links)


def random_tree_pair(
    rng: random.Random, max_nodes: int = 50
) -> tuple[ArtifactTree, Snapshot, ArtifactTree, Snapshot]:
    baseline_snap, root_id = random_tree_snapshot(rng, "base", max_nodes)
    current_snap = mutate_snapshot(rng, baseline_snap, root_id, "cur")
    baseline_tree = build_tree(baseline_snap, root_id, FLAT_TIM)
    current_tree = build_tree(current_snap, root_id, FLAT_TIM)
    return baseline_tree, baseline_snap, current_tree, current_snap


def oracle_statuses(
    baseline_tree: ArtifactTree,
    baseline_snap: Snapshot,
    current_tree: ArtifactTree,
    current_snap: Snapshot,
) -> dict[str, str]:
    """Classify nodes by raw id-set membership plus hash/parent comparison."""
    base_parent = {c: p for p, c, _ in baseline_tree.tree_edges}
    cur_parent = {c: p for p, c, _ in current_tree.tree_edges}
    statuses: dict[str, str] = {}
    for node_id in baseline_tree.nodes | current_tree.nodes:
        if node_id not in baseline_tree.nodes:
            statuses[node_id] = "Added"
        elif node_id not in current_tree.nodes:
            statuses[node_id] = "Removed"
        elif (
            baseline_snap.artifacts[node_id].content_hash
            != current_snap.artifacts[node_id].content_hash
        ):
            statuses[node_id] = "Modified"
        elif base_parent.get(node_id) != cur_parent.get(node_id):
            statuses[node_id] = "Moved"
        else:
            statuses[node_id] = "Unchanged"
    return statuses


def oracle_reachable(
    changed: set[str],
    trees,
    fault_trees,
    safety_cases,
    hlinks,
) -> set[str]:
    """Plain BFS over the combined reversed-influence graph."""
    adjacency: dict[str, set[str]] = {}

    def edge(a: str, b: str) -> None:
        adjacency.setdefault(a, set()).add(b)

    for tree in trees:
        for parent, child, _ in tree.tree_edges:
            edge(child, parent)
    for ft in fault_trees:
        for parent, child in ft.edges:
            edge(child, parent)
    for sc in safety_cases:
        for source, target in sc.supported_by:
            edge(target, source)
    for hl in hlinks:
        edge(hl.target_id, hl.source_id)

    seen = set(changed)
    queue = deque(changed)
    while queue:
        node = queue.popleft()
        for nxt in adjacency.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def evaluate_fault_tree(ft: FaultTree, true_basics: set[str]) -> bool:
    """Truth-table evaluation of the top event under AND/OR semantics."""
    children = {n: ft.children(n) for n in ft.nodes}

    def value(node_id: str) -> bool:
        node = ft.nodes[node_id]
        if node.kind is FaultKind.BASIC_EVENT:
            return node_id in true_basics
        kids = children[node_id]
        if node.kind in (FaultKind.TOP_EVENT, FaultKind.INTERMEDIATE_EVENT):
            return value(kids[0]) if kids else False
        if node.gate_op is GateOp.AND:
            return all(value(k) for k in kids)
        return any(value(k) for k in kids)

    return value(ft.top_event_id)


def oracle_minimal_cut_sets(ft: FaultTree) -> set[frozenset[str]]:
    """Exhaustive subset enumeration, smallest first, keeping minimal hits."""
    basics = sorted(ft.basic_event_ids())
    minimal: list[frozenset[str]] = []
    for mask in sorted(range(1 << len(basics)), key=lambda m: bin(m).count("1")):
        subset = frozenset(b for i, b in enumerate(basics) if mask >> i & 1)
        if any(kept <= subset for kept in minimal):
            continue
        if evaluate_fault_tree(ft, set(subset)):
            minimal.append(subset)
    return set(minimal)


def random_fault_tree(rng: random.Random, name: str, max_basics: int = 12) -> FaultTree:
    """A random valid fault tree with at most ``max_basics`` basic events.

    Every open branch holds a reservation for exactly one basic event;
    gates trade one reservation for ``fanout`` new ones, so the limit is a
    hard bound.
    """
    counter = [0]

    def fresh(prefix: str) -> str:
        counter[0] += 1
        return f"{name}-{prefix}{counter[0]:03d}"

    nodes: dict[str, FaultNode] = {}
    edges: list[tuple[str, str]] = []
    spare = [rng.randint(1, max_basics) - 1]  # reservations beyond the root branch

    def grow(depth: int) -> str:
        """Create a subtree entry node and return its id."""
        can_gate = spare[0] >= 1 and depth < 4
        roll = rng.random()
        if not can_gate or roll < 0.35:
            node_id = fresh("B")
            nodes[node_id] = FaultNode(node_id, FaultKind.BASIC_EVENT, rng.choice(_WORDS))
            return node_id
        if roll < 0.5:
            node_id = fresh("I")
            nodes[node_id] = FaultNode(node_id, FaultKind.INTERMEDIATE_EVENT, rng.choice(_WORDS))
            edges.append((node_id, grow(depth + 1)))
            return node_id
        node_id = fresh("G")
        op = rng.choice([GateOp.AND, GateOp.OR])
        nodes[node_id] = FaultNode(node_id, FaultKind.GATE, rng.choice(_WORDS), op)
        fanout = rng.randint(2, min(3, spare[0] + 1))
        spare[0] -= fanout - 1
        for _ in range(fanout):
            edges.append((node_id, grow(depth + 1)))
        return node_id

    top_id = f"{name}-TOP"
    nodes[top_id] = FaultNode(top_id, FaultKind.TOP_EVENT, "top")
    edges.append((top_id, grow(0)))
    return FaultTree(name, top_id, nodes, edges)


def random_safety_case(rng: random.Random, name: str) -> SafetyCase:
    """A random valid safety case grown top-down from one root goal."""
    counter = [0]

    def fresh(prefix: str) -> str:
        counter[0] += 1
        return f"{name}-{prefix}{counter[0]:03d}"

    root_id = f"{name}-G0"
    nodes: dict[str, SacNode] = {root_id: SacNode(root_id, SacKind.GOAL, "root goal")}
    supported_by: list[tuple[str, str]] = []
    in_context_of: list[tuple[str, str]] = []
    frontier = [root_id]

    for _ in range(rng.randint(1, 12)):
        parent = rng.choice(frontier)
        parent_kind = nodes[parent].kind
        if parent_kind is SacKind.GOAL:
            kind = rng.choice([SacKind.STRATEGY, SacKind.GOAL, SacKind.SOLUTION])
        else:  # Strategy
            kind = rng.choice([SacKind.GOAL, SacKind.SOLUTION])
        prefix = {"Goal": "G", "Strategy": "S", "Solution": "SOL"}[kind.value]
        child = fresh(prefix)
        nodes[child] = SacNode(child, kind, rng.choice(_WORDS))
        supported_by.append((parent, child))
        if kind is not SacKind.SOLUTION:
            frontier.append(child)
        if rng.random() < 0.3:
            ctx_kind = rng.choice([SacKind.CONTEXT, SacKind.ASSUMPTION, SacKind.JUSTIFICATION])
            ctx = fresh("C")
            nodes[ctx] = SacNode(ctx, ctx_kind, rng.choice(_WORDS))
            anchor = rng.choice([n for n in frontier if nodes[n].kind in
                                 (SacKind.GOAL, SacKind.STRATEGY)])
            in_context_of.append((anchor, ctx))
    return SafetyCase(name, root_id, nodes, supported_by, in_context_of)


def random_propagation_instance(rng: random.Random):
    """One combined graph: artifact trees, safety assets, links, changed set."""
    trees = []
    artifact_ids: list[str] = []
    for t in range(rng.randint(1, 2)):
        snap, root_id = random_tree_snapshot(rng, f"t{t}", max_nodes=15)
        # Prefix ids per tree so the trees stay disjoint.
        artifacts = [
            # rebuilt with prefixed ids
            a for a in snap.artifacts.values()
        ]
        prefix = f"T{t}-"
        renamed = {a.id: prefix + a.id for a in artifacts}
        snap = _snapshot(
            snap.version_label,
            [Artifact(renamed[a.id], "Item", a.summary, a.body) for a in artifacts],
            [TraceLink(renamed[l.source_id], renamed[l.target_id], "contains")
             for l in snap.links],
        )
        tree = build_tree(snap, prefix + root_id, FLAT_TIM)
        trees.append(tree)
        artifact_ids.extend(sorted(tree.nodes))

    fault_trees = [random_fault_tree(rng, f"FT{i}", max_basics=6)
                   for i in range(rng.randint(1, 2))]
    safety_cases = [random_safety_case(rng, "SAC0")]

    hlinks: list[HorizontalLink] = []
    fault_nodes = sorted({n for ft in fault_trees for n in ft.nodes})
    for _ in range(rng.randint(0, 5)):
        hlinks.append(
            HorizontalLink(
                rng.choice(fault_nodes),
                rng.choice(artifact_ids),
                rng.choice([LinkKind.FAULT_MITIGATED_BY, LinkKind.FAULT_VERIFIED_BY]),
            )
        )
    solutions = sorted(
        n.id for sc in safety_cases for n in sc.nodes.values() if n.kind is SacKind.SOLUTION
    )
    if solutions:
        for ft in fault_trees:
            if rng.random() < 0.8:
                hlinks.append(
                    HorizontalLink(rng.choice(solutions), ft.top_event_id, LinkKind.EVIDENCE_OF_FT)
                )

    changed = set(rng.sample(artifact_ids, k=rng.randint(0, min(4, len(artifact_ids)))))
    return changed, trees, fault_trees, safety_cases, hlinks
