from __future__ import annotations

import random
from collections import deque
from datetime import datetime, timezone

import pytest

from helpers import FLAT_TIM, random_tree_snapshot
from safetrace.errors import UnknownRoot
from safetrace.store import Artifact, Snapshot, TraceLink, ingest_snapshot, load_tim
from safetrace.tree import build_tree, tree_payload, tree_stats, tree_to_dot

CHAIN_TIM = load_tim("""
artifact_types: [Requirement, DesignDefinition, Code]
link_types:
  - {name: refined-by, source: Requirement, target: DesignDefinition, direction: downstream}
  - {name: implemented-by, source: DesignDefinition, target: Code, direction: downstream}
""")

CHAIN_DOC = """
version: v2
artifacts:
  - {id: UAV-1387, type: Requirement}
  - {id: UAV-1413, type: DesignDefinition}
  - {id: OnDemandAirspace.java, type: Code}
links:
  - {source: UAV-1387, target: UAV-1413, type: refined-by}
  - {source: UAV-1413, target: OnDemandAirspace.java, type: implemented-by}
"""


def chain_snapshot() -> Snapshot:
    return ingest_snapshot(CHAIN_DOC, CHAIN_TIM)


def diamond_snapshot() -> Snapshot:
    artifacts = [Artifact(i, "Item") for i in ("R", "A", "B", "X")]
    links = [
        TraceLink("R", "A", "contains"),
        TraceLink("R", "B", "contains"),
        TraceLink("A", "X", "contains"),
        TraceLink("B", "X", "contains"),
    ]
    return Snapshot("v1", {a.id: a for a in artifacts}, links, datetime.now(timezone.utc))


class TestBuildTree:
    def test_three_node_chain(self):
        tree = build_tree(chain_snapshot(), "UAV-1387", CHAIN_TIM)
        assert tree.nodes == {"UAV-1387", "UAV-1413", "OnDemandAirspace.java"}
        assert tree.tree_edges == [
            ("UAV-1387", "UAV-1413", "refined-by"),
            ("UAV-1413", "OnDemandAirspace.java", "implemented-by"),
        ]
        assert tree.cross_edges == []

    def test_root_without_outgoing_links(self):
        tree = build_tree(chain_snapshot(), "OnDemandAirspace.java", CHAIN_TIM)
        assert tree.nodes == {"OnDemandAirspace.java"}
        assert tree.tree_edges == [] and tree.cross_edges == []

    def test_diamond_first_parent_wins_and_back_edge_is_cross(self):
        # Hand enumeration: BFS visits A before B (ascending id), so X's
        # tree parent is A and B's link to X becomes a cross edge.
        tree = build_tree(diamond_snapshot(), "R", FLAT_TIM)
        assert tree.nodes == {"R", "A", "B", "X"}
        assert tree.parent_map()["X"] == "A"
        assert tree.cross_edges == [("B", "X", "contains")]

    def test_unknown_root(self):
        with pytest.raises(UnknownRoot, match="UAV-9999"):
            build_tree(chain_snapshot(), "UAV-9999", CHAIN_TIM)

    def test_children_visited_in_ascending_id_order(self):
        artifacts = [Artifact(i, "Item") for i in ("R", "C", "A", "B")]
        links = [TraceLink("R", c, "contains") for c in ("C", "A", "B")]
        snapshot = Snapshot("v", {a.id: a for a in artifacts}, links,
                            datetime.now(timezone.utc))
        tree = build_tree(snapshot, "R", FLAT_TIM)
        assert [c for _, c, _ in tree.tree_edges] == ["A", "B", "C"]

    def test_horizontal_links_never_traversed(self):
        tim = load_tim("""
artifact_types: [Requirement, DesignDefinition]
link_types:
  - {name: refined-by, source: Requirement, target: DesignDefinition, direction: downstream}
  - {name: peer, source: Requirement, target: Requirement, direction: horizontal}
""")
        doc = """
version: v1
artifacts:
  - {id: R1, type: Requirement}
  - {id: R2, type: Requirement}
  - {id: D1, type: DesignDefinition}
links:
  - {source: R1, target: D1, type: refined-by}
  - {source: R1, target: R2, type: peer}
"""
        tree = build_tree(ingest_snapshot(doc, tim), "R1", tim)
        assert tree.nodes == {"R1", "D1"}

    def test_terminates_on_cyclic_instance_data(self):
        # Corrupted data can only arise by bypassing ingestion; the builder
        # must still terminate and surface the back edge as a cross edge.
        artifacts = [Artifact(i, "Item") for i in ("A", "B")]
        links = [TraceLink("A", "B", "contains"), TraceLink("B", "A", "contains")]
        snapshot = Snapshot("v", {a.id: a for a in artifacts}, links,
                            datetime.now(timezone.utc))
        tree = build_tree(snapshot, "A", FLAT_TIM)
        assert tree.nodes == {"A", "B"}
        assert tree.cross_edges == [("B", "A", "contains")]

    def test_determinism_including_edge_order(self):
        rng = random.Random(7)
        for _ in range(25):
            snapshot, root_id = random_tree_snapshot(rng, "v", max_nodes=30)
            first = build_tree(snapshot, root_id, FLAT_TIM)
            second = build_tree(snapshot, root_id, FLAT_TIM)
            assert first == second

    def test_reachability_matches_independent_bfs_oracle(self):
        rng = random.Random(11)
        for _ in range(100):
            snapshot, root_id = random_tree_snapshot(rng, "v", max_nodes=40)
            tree = build_tree(snapshot, root_id, FLAT_TIM)
            # Independent plain reachability over downstream links.
            adjacency: dict[str, list[str]] = {}
            for link in snapshot.links:
                adjacency.setdefault(link.source_id, []).append(link.target_id)
            seen = {root_id}
            queue = deque([root_id])
            while queue:
                node = queue.popleft()
                for nxt in adjacency.get(node, ()):
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
            assert tree.nodes == seen

    def test_every_edge_is_a_snapshot_link(self):
        rng = random.Random(13)
        snapshot, root_id = random_tree_snapshot(rng, "v", max_nodes=30)
        tree = build_tree(snapshot, root_id, FLAT_TIM)
        link_set = {(l.source_id, l.target_id, l.link_type) for l in snapshot.links}
        for edge in tree.tree_edges + tree.cross_edges:
            assert edge in link_set


class TestTreeStats:
    def test_three_node_chain(self):
        stats = tree_stats(build_tree(chain_snapshot(), "UAV-1387", CHAIN_TIM))
        assert (stats.node_count, stats.depth) == (3, 2)
        assert stats.counts_by_type == {"Code": 1, "DesignDefinition": 1, "Requirement": 1}

    def test_single_node(self):
        stats = tree_stats(build_tree(chain_snapshot(), "OnDemandAirspace.java", CHAIN_TIM))
        assert (stats.node_count, stats.depth) == (1, 0)
        assert stats.counts_by_type == {"Code": 1}

    def test_diamond(self):
        stats = tree_stats(build_tree(diamond_snapshot(), "R", FLAT_TIM))
        assert (stats.node_count, stats.depth) == (4, 2)
        assert stats.counts_by_type == {"Item": 4}


class TestExports:
    def test_payload_lists_nodes_and_edges(self):
        payload = tree_payload(build_tree(chain_snapshot(), "UAV-1387", CHAIN_TIM))
        assert payload["root"] == "UAV-1387"
        assert set(payload["nodes"]) == {"UAV-1387", "UAV-1413", "OnDemandAirspace.java"}
        assert len(payload["tree_edges"]) == 2

    def test_dot_marks_cross_edges_dashed(self):
        dot = tree_to_dot(build_tree(diamond_snapshot(), "R", FLAT_TIM))
        assert dot.startswith("digraph")
        assert '"B" -> "X"' in dot and "dashed" in dot
