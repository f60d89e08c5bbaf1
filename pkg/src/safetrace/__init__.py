"""safetrace: trace development artifacts into safety analysis assets.

Builds rooted artifact-tree slices from versioned snapshots, diffs them
between versions, propagates change warnings into fault trees and GSN
safety cases over horizontal trace links, and tracks the change rationales
and review decisions that close the loop between developers and safety
analysts.
"""

from .delta import (
    ChangeStatus,
    DeltaTree,
    changed_artifact_ids,
    compute_delta,
    detect_replacements,
)
from .errors import (
    AlreadyClosed,
    DanglingLink,
    NotFound,
    ParseError,
    PendingRationales,
    RootMismatch,
    SafetraceError,
    SchemaError,
    StructureError,
    UnknownRoot,
    ValidationError,
)
from .faulttree import FaultTree, minimal_cut_sets, parse_fault_tree, serialize_fault_tree
from .propagation import HorizontalLink, LinkKind, WarningSet, propagate, warning_report
from .review import LoopClosureNotice, Rationale, RationaleKind, ReviewDecision, ReviewLog
from .safetycase import SafetyCase, parse_safety_case, serialize_safety_case
from .store import (
    Artifact,
    Snapshot,
    TraceabilityInformationModel,
    TraceLink,
    content_hash,
    ingest_snapshot,
    load_tim,
)
from .tree import ArtifactTree, build_tree, tree_stats
from .workspace import ProjectWorkspace, validate_workspace

__version__ = "0.1.0"

__all__ = [
    "Artifact",
    "ArtifactTree",
    "ChangeStatus",
    "DeltaTree",
    "FaultTree",
    "HorizontalLink",
    "LinkKind",
    "LoopClosureNotice",
    "ProjectWorkspace",
    "Rationale",
    "RationaleKind",
    "ReviewDecision",
    "ReviewLog",
    "SafetyCase",
    "Snapshot",
    "TraceLink",
    "TraceabilityInformationModel",
    "WarningSet",
    "build_tree",
    "changed_artifact_ids",
    "compute_delta",
    "content_hash",
    "detect_replacements",
    "ingest_snapshot",
    "load_tim",
    "minimal_cut_sets",
    "parse_fault_tree",
    "parse_safety_case",
    "propagate",
    "serialize_fault_tree",
    "serialize_safety_case",
    "tree_stats",
    "validate_workspace",
    "warning_report",
    # errors
    "SafetraceError",
    "ParseError",
    "SchemaError",
    "ValidationError",
    "StructureError",
    "UnknownRoot",
    "NotFound",
    "RootMismatch",
    "DanglingLink",
    "PendingRationales",
    "AlreadyClosed",
]
