"""Project workspace: one directory holding every primary input.

Layout::

    <root>/
      tim.yaml          traceability model
      snapshots/*.yaml  one corpus version per file (label = 'version' field)
      assets/*.yaml     fault tree / safety case documents
      links.yaml        horizontal links joining safety nodes to artifacts
      log/*.jsonl       append-only rationale / decision / notice records

Trees, deltas, and warning sets are derived caches; deleting them loses
nothing because they are recomputed from the files above.
"""

from __future__ import annotations

from pathlib import Path

import yaml

from .delta import DeltaTree, changed_artifact_ids, compute_delta, detect_replacements
from .errors import NotFound, ParseError, SafetraceError, StructureError, ValidationError
from .faulttree import FaultTree, parse_fault_tree
from .propagation import (
    FAULT_TO_ARTIFACT_KINDS,
    HorizontalLink,
    WarningSet,
    parse_horizontal_links,
    propagate,
)
from .review import ReviewLog
from .safetycase import SacKind, SafetyCase, parse_safety_case
from .store import Snapshot, TraceabilityInformationModel, ingest_snapshot, load_tim
from .tree import ArtifactTree, build_tree


def _is_fault_tree_doc(text: str) -> bool:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError:
        return False
    return isinstance(doc, dict) and "fault_tree" in doc


class ProjectWorkspace:
    """Loaded project state plus derived caches and the review log."""

    def __init__(
        self,
        root: Path,
        tim: TraceabilityInformationModel,
        snapshots: dict[str, Snapshot],
        fault_trees: dict[str, FaultTree],
        safety_cases: dict[str, SafetyCase],
        hlinks: list[HorizontalLink],
    ):
        self.root = root
        self.tim = tim
        self.snapshots = snapshots
        self.fault_trees = fault_trees
        self.safety_cases = safety_cases
        self.hlinks = hlinks
        self.review = ReviewLog(root / "log")
        self._tree_cache: dict[tuple[str, str], ArtifactTree] = {}
        self._delta_cache: dict[tuple[str, str, str], DeltaTree] = {}
        self._warning_cache: dict[tuple[str, str, str], WarningSet] = {}

    @classmethod
    def load(cls, root: Path | str) -> "ProjectWorkspace":
        """Load a workspace directory, failing fast on the first bad file."""
        root = Path(root)
        tim_path = root / "tim.yaml"
        if not tim_path.exists():
            raise ParseError(f"workspace '{root}': missing tim.yaml")
        tim = load_tim(tim_path.read_text(encoding="utf-8"))

        snapshots: dict[str, Snapshot] = {}
        for path in sorted((root / "snapshots").glob("*.yaml")):
            snapshot = ingest_snapshot(path.read_text(encoding="utf-8"), tim)
            if snapshot.version_label in snapshots:
                raise ValidationError(
                    [f"duplicate snapshot version '{snapshot.version_label}' in {path.name}"]
                )
            snapshots[snapshot.version_label] = snapshot

        fault_trees: dict[str, FaultTree] = {}
        safety_cases: dict[str, SafetyCase] = {}
        for path in sorted((root / "assets").glob("*.yaml")):
            text = path.read_text(encoding="utf-8")
            if _is_fault_tree_doc(text):
                ft = parse_fault_tree(text)
                fault_trees[ft.id] = ft
            else:
                sc = parse_safety_case(text)
                safety_cases[sc.id] = sc

        links_path = root / "links.yaml"
        hlinks: list[HorizontalLink] = []
        if links_path.exists():
            hlinks = parse_horizontal_links(links_path.read_text(encoding="utf-8"))

        return cls(root, tim, snapshots, fault_trees, safety_cases, hlinks)

    # -- lookups -----------------------------------------------------------

    def snapshot(self, label: str) -> Snapshot:
        try:
            return self.snapshots[label]
        except KeyError:
            raise NotFound(f"unknown snapshot version '{label}'") from None

    def fault_tree(self, ft_id: str) -> FaultTree:
        try:
            return self.fault_trees[ft_id]
        except KeyError:
            raise NotFound(f"unknown fault tree '{ft_id}'") from None

    def all_artifact_ids(self) -> set[str]:
        ids: set[str] = set()
        for snapshot in self.snapshots.values():
            ids |= snapshot.artifact_ids()
        return ids

    # -- derived views (cached, reproducible) ------------------------------

    def tree(self, version: str, root_id: str) -> ArtifactTree:
        key = (version, root_id)
        if key not in self._tree_cache:
            self._tree_cache[key] = build_tree(self.snapshot(version), root_id, self.tim)
        return self._tree_cache[key]

    def delta(self, baseline: str, current: str, root_id: str) -> DeltaTree:
        key = (baseline, current, root_id)
        if key not in self._delta_cache:
            baseline_tree = self.tree(baseline, root_id)
            current_tree = self.tree(current, root_id)
            delta = compute_delta(
                baseline_tree, self.snapshot(baseline), current_tree, self.snapshot(current)
            )
            detect_replacements(delta, baseline_tree, current_tree)
            self._delta_cache[key] = delta
        return self._delta_cache[key]

    def warning_set(self, baseline: str, current: str, root_id: str) -> WarningSet:
        """Warnings for one delta; bubbling runs over the delta's edges so
        removed artifacts still reach their surviving ancestors."""
        key = (baseline, current, root_id)
        if key not in self._warning_cache:
            delta = self.delta(baseline, current, root_id)
            self._warning_cache[key] = propagate(
                changed_artifact_ids(delta),
                [delta],
                list(self.fault_trees.values()),
                list(self.safety_cases.values()),
                self.hlinks,
                known_artifact_ids=self.all_artifact_ids(),
            )
        return self._warning_cache[key]

    def pending(self, baseline: str, current: str, root_id: str) -> set[str]:
        delta = self.delta(baseline, current, root_id)
        ws = self.warning_set(baseline, current, root_id)
        return self.review.pending_rationales(delta, ws, self.hlinks)


def validate_workspace(root: Path | str) -> list[str]:
    """Run every store and asset validator; returns all problems found."""
    root = Path(root)
    problems: list[str] = []

    tim = None
    tim_path = root / "tim.yaml"
    if not tim_path.exists():
        return [f"missing {tim_path}"]
    try:
        tim = load_tim(tim_path.read_text(encoding="utf-8"))
    except SafetraceError as exc:
        return [f"tim.yaml: {exc}"]

    snapshots: dict[str, Snapshot] = {}
    for path in sorted((root / "snapshots").glob("*.yaml")):
        try:
            snapshot = ingest_snapshot(path.read_text(encoding="utf-8"), tim)
        except ValidationError as exc:
            problems.extend(f"{path.name}: {v}" for v in exc.violations)
            continue
        except SafetraceError as exc:
            problems.append(f"{path.name}: {exc}")
            continue
        if snapshot.version_label in snapshots:
            problems.append(f"{path.name}: duplicate snapshot version '{snapshot.version_label}'")
        else:
            snapshots[snapshot.version_label] = snapshot

    fault_trees: dict[str, FaultTree] = {}
    safety_cases: dict[str, SafetyCase] = {}
    for path in sorted((root / "assets").glob("*.yaml")):
        text = path.read_text(encoding="utf-8")
        try:
            if _is_fault_tree_doc(text):
                ft = parse_fault_tree(text)
                fault_trees[ft.id] = ft
            else:
                sc = parse_safety_case(text)
                safety_cases[sc.id] = sc
        except StructureError as exc:
            problems.extend(f"{path.name}: {v}" for v in exc.violations)
        except SafetraceError as exc:
            problems.append(f"{path.name}: {exc}")

    links_path = root / "links.yaml"
    if links_path.exists():
        try:
            hlinks = parse_horizontal_links(links_path.read_text(encoding="utf-8"))
        except SafetraceError as exc:
            problems.append(f"links.yaml: {exc}")
            hlinks = []
        fault_node_ids = {n for ft in fault_trees.values() for n in ft.nodes}
        top_ids = {ft.top_event_id for ft in fault_trees.values()}
        solution_ids = {
            n.id
            for sc in safety_cases.values()
            for n in sc.nodes.values()
            if n.kind is SacKind.SOLUTION
        }
        artifact_ids = {a for s in snapshots.values() for a in s.artifact_ids()}
        for hl in hlinks:
            if hl.link_kind in FAULT_TO_ARTIFACT_KINDS:
                if hl.source_id not in fault_node_ids:
                    problems.append(f"links.yaml: source '{hl.source_id}' is not a fault node")
                if hl.target_id not in artifact_ids:
                    problems.append(f"links.yaml: target '{hl.target_id}' is not a known artifact")
            else:
                if hl.source_id not in solution_ids:
                    problems.append(f"links.yaml: source '{hl.source_id}' is not a solution node")
                if hl.target_id not in top_ids:
                    problems.append(
                        f"links.yaml: target '{hl.target_id}' is not a fault tree top event"
                    )
    return problems
