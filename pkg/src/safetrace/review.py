"""Change rationales, analyst review decisions, and loop-closure notices.

Rationales and decisions live in an append-only log: records are only ever
appended, never rewritten, so the persisted JSONL files double as an audit
trail.  Closing a review is atomic under one write lock: the pending check
and the state transition happen together.
"""

from __future__ import annotations

import json
import threading
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Sequence

from .delta import ChangeStatus, DeltaTree, changed_artifact_ids
from .errors import AlreadyClosed, PendingRationales, ValidationError
from .propagation import FAULT_TO_ARTIFACT_KINDS, HorizontalLink, WarningSet


class RationaleKind(str, Enum):
    DESIGN_DECISION = "DesignDecision"
    CODE_CHANGE = "CodeChange"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass
class Rationale:
    """A developer's justification for one changed artifact.

    Design-decision rationales carry a reason plus alternatives and
    arguments; code-change rationales carry a justification plus an
    explanation.  Fields of the other kind must stay empty.
    """

    kind: RationaleKind
    subject_id: str
    baseline_label: str
    current_label: str
    reason: str = ""
    alternatives: list[str] = field(default_factory=list)
    arguments: list[str] = field(default_factory=list)
    justification: str = ""
    explanation: str = ""
    author: str = ""
    id: str = ""
    timestamp: str = ""

    @property
    def delta_ref(self) -> tuple[str, str]:
        return (self.baseline_label, self.current_label)


@dataclass(frozen=True)
class AssetToUpdate:
    kind: str  # "FaultTree" or "SafetyCase"
    asset_id: str


@dataclass
class ReviewDecision:
    """An analyst's verdict over one delta: the three review questions."""

    analyst: str
    baseline_label: str
    current_label: str
    root_id: str
    impacts_safety: bool
    additional_mitigations_needed: bool
    assets_to_update: list[AssetToUpdate] = field(default_factory=list)
    notes: str = ""
    id: str = ""
    timestamp: str = ""
    state: str = "Open"

    @property
    def delta_ref(self) -> tuple[str, str]:
        return (self.baseline_label, self.current_label)


@dataclass
class LoopClosureNotice:
    decision_id: str
    recipients: list[str]
    summary: str
    created_at: str


ASSET_KINDS = frozenset({"FaultTree", "SafetyCase"})


class ReviewLog:
    """Append-only store for rationales, decisions, and notices.

    When constructed with a directory the log persists each record as one
    JSON line (rationales.jsonl, decisions.jsonl, notices.jsonl) and replays
    them on load; closing a decision appends a second record for the same id
    rather than rewriting the open one.
    """

    def __init__(self, directory: Path | str | None = None):
        self._lock = threading.Lock()
        self._dir = Path(directory) if directory is not None else None
        self._rationales: list[Rationale] = []
        self._decisions: dict[str, ReviewDecision] = {}
        self._notices: list[LoopClosureNotice] = []
        self._counter = 0
        if self._dir is not None:
            self._replay()

    # -- queries ---------------------------------------------------------

    def rationales(self) -> list[Rationale]:
        return list(self._rationales)

    def rationales_for_subject(self, subject_id: str) -> list[Rationale]:
        return [r for r in self._rationales if r.subject_id == subject_id]

    def rationales_for_delta(self, baseline: str, current: str) -> list[Rationale]:
        return [r for r in self._rationales if r.delta_ref == (baseline, current)]

    def decisions(self) -> list[ReviewDecision]:
        return list(self._decisions.values())

    def decision(self, decision_id: str) -> ReviewDecision:
        try:
            return self._decisions[decision_id]
        except KeyError:
            raise ValidationError([f"unknown decision '{decision_id}'"]) from None

    def notices(self) -> list[LoopClosureNotice]:
        return list(self._notices)

    # -- rationale workflow ----------------------------------------------

    def submit_rationale(self, rationale: Rationale, delta: DeltaTree) -> str:
        """Validate and append a rationale; returns its stored id.

        Raises:
            ValidationError: unknown subject, subject unchanged in the
                delta, wrong delta reference, or missing/kind-mismatched
                fields.
        """
        violations = self._validate_rationale(rationale, delta)
        if violations:
            raise ValidationError(violations)
        with self._lock:
            if not rationale.id:
                self._counter += 1
                rationale.id = f"R-{self._counter:04d}"
            if not rationale.timestamp:
                rationale.timestamp = _now()
            self._rationales.append(rationale)
            self._append("rationales.jsonl", self._rationale_doc(rationale))
        return rationale.id

    def _validate_rationale(self, rationale: Rationale, delta: DeltaTree) -> list[str]:
        violations: list[str] = []
        if rationale.delta_ref != (delta.baseline_label, delta.current_label):
            violations.append(
                f"rationale references delta {rationale.delta_ref}, "
                f"got ({delta.baseline_label}, {delta.current_label})"
            )
        entry = delta.nodes.get(rationale.subject_id)
        if entry is None:
            violations.append(f"unknown subject '{rationale.subject_id}'")
        else:
            in_replacement = any(
                rationale.subject_id in pair for pair in delta.replacement_candidates
            )
            if entry.status is ChangeStatus.UNCHANGED and not in_replacement:
                violations.append(
                    f"subject '{rationale.subject_id}' is unchanged in this delta"
                )
        if rationale.kind is RationaleKind.DESIGN_DECISION:
            if not rationale.reason.strip():
                violations.append("design-decision rationale requires a non-empty reason")
            if rationale.justification or rationale.explanation:
                violations.append(
                    "design-decision rationale must not carry justification/explanation"
                )
        else:
            if not rationale.justification.strip():
                violations.append("code-change rationale requires a non-empty justification")
            if rationale.reason or rationale.alternatives or rationale.arguments:
                violations.append(
                    "code-change rationale must not carry reason/alternatives/arguments"
                )
        return violations

    def pending_rationales(
        self,
        delta: DeltaTree,
        warning_set: WarningSet,
        hlinks: Sequence[HorizontalLink],
    ) -> set[str]:
        """Changed artifacts still owing a rationale.

        An artifact owes a rationale when itself or any of its delta-tree
        ancestors is the target of a horizontal link whose fault node is
        warned; artifacts already covered for this delta are subtracted.
        """
        warned_targets = {
            hl.target_id
            for hl in hlinks
            if hl.link_kind in FAULT_TO_ARTIFACT_KINDS
            and hl.source_id in warning_set.warned_fault_nodes
        }
        parent = delta.parent_map()
        pending: set[str] = set()
        for changed_id in changed_artifact_ids(delta):
            node: str | None = changed_id
            while node is not None:
                if node in warned_targets:
                    pending.add(changed_id)
                    break
                node = parent.get(node)
        covered = {
            r.subject_id
            for r in self._rationales
            if r.delta_ref == (delta.baseline_label, delta.current_label)
        }
        return pending - covered

    # -- decision workflow -------------------------------------------------

    def create_decision(self, decision: ReviewDecision) -> str:
        """Validate and append an open decision; returns its stored id."""
        violations: list[str] = []
        if decision.state != "Open":
            violations.append("new decisions must start in state 'Open'")
        for asset in decision.assets_to_update:
            if asset.kind not in ASSET_KINDS:
                violations.append(f"unknown asset kind '{asset.kind}'")
        if decision.assets_to_update and not (
            decision.impacts_safety or decision.additional_mitigations_needed
        ):
            violations.append(
                "assets to update require a safety impact or additional mitigations"
            )
        if violations:
            raise ValidationError(violations)
        with self._lock:
            if not decision.id:
                self._counter += 1
                decision.id = f"D-{self._counter:04d}"
            if not decision.timestamp:
                decision.timestamp = _now()
            self._decisions[decision.id] = decision
            self._append("decisions.jsonl", self._decision_doc(decision))
        return decision.id

    def close_review(
        self,
        decision_id: str,
        delta: DeltaTree,
        warning_set: WarningSet,
        hlinks: Sequence[HorizontalLink],
    ) -> LoopClosureNotice:
        """Close a decision and emit its loop-closure notice.

        The pending check and the Open -> Closed transition happen under one
        lock, so a close never races a rationale submission.

        Raises:
            AlreadyClosed: the decision was closed earlier.
            PendingRationales: changed artifacts still owe rationales.
        """
        with self._lock:
            decision = self.decision(decision_id)
            if decision.state == "Closed":
                raise AlreadyClosed(f"decision '{decision_id}' is already closed")
            pending = self.pending_rationales(delta, warning_set, hlinks)
            if pending:
                raise PendingRationales(pending)
            decision.state = "Closed"
            self._append("decisions.jsonl", self._decision_doc(decision))

            recipients = ["developer"]
            if decision.assets_to_update:
                recipients.append("safety-analyst")
            notice = LoopClosureNotice(
                decision_id=decision.id,
                recipients=recipients,
                summary=_decision_summary(decision),
                created_at=_now(),
            )
            self._notices.append(notice)
            self._append("notices.jsonl", {"record": "notice", **asdict(notice)})
        return notice

    # -- persistence -------------------------------------------------------

    def _append(self, filename: str, doc: dict) -> None:
        if self._dir is None:
            return
        self._dir.mkdir(parents=True, exist_ok=True)
        with (self._dir / filename).open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, sort_keys=True) + "\n")

    def _replay(self) -> None:
        assert self._dir is not None
        for record in self._read_lines("rationales.jsonl"):
            self._rationales.append(
                Rationale(
                    kind=RationaleKind(record["kind"]),
                    subject_id=record["subject"],
                    baseline_label=record["baseline"],
                    current_label=record["current"],
                    reason=record.get("reason", ""),
                    alternatives=record.get("alternatives", []),
                    arguments=record.get("arguments", []),
                    justification=record.get("justification", ""),
                    explanation=record.get("explanation", ""),
                    author=record.get("author", ""),
                    id=record["id"],
                    timestamp=record.get("timestamp", ""),
                )
            )
        for record in self._read_lines("decisions.jsonl"):
            self._decisions[record["id"]] = ReviewDecision(
                analyst=record.get("analyst", ""),
                baseline_label=record["baseline"],
                current_label=record["current"],
                root_id=record.get("root", ""),
                impacts_safety=record["impacts_safety"],
                additional_mitigations_needed=record["additional_mitigations_needed"],
                assets_to_update=[
                    AssetToUpdate(a["kind"], a["asset_id"])
                    for a in record.get("assets_to_update", [])
                ],
                notes=record.get("notes", ""),
                id=record["id"],
                timestamp=record.get("timestamp", ""),
                state=record.get("state", "Open"),
            )
        for record in self._read_lines("notices.jsonl"):
            self._notices.append(
                LoopClosureNotice(
                    decision_id=record["decision_id"],
                    recipients=record.get("recipients", []),
                    summary=record.get("summary", ""),
                    created_at=record.get("created_at", ""),
                )
            )
        self._counter = len(self._rationales) + len(self._decisions)

    def _read_lines(self, filename: str) -> list[dict]:
        assert self._dir is not None
        path = self._dir / filename
        if not path.exists():
            return []
        records = []
        for line in path.read_text(encoding="utf-8").splitlines():
            if line.strip():
                records.append(json.loads(line))
        return records

    @staticmethod
    def _rationale_doc(rationale: Rationale) -> dict:
        return {
            "record": "rationale",
            "id": rationale.id,
            "kind": rationale.kind.value,
            "subject": rationale.subject_id,
            "baseline": rationale.baseline_label,
            "current": rationale.current_label,
            "reason": rationale.reason,
            "alternatives": rationale.alternatives,
            "arguments": rationale.arguments,
            "justification": rationale.justification,
            "explanation": rationale.explanation,
            "author": rationale.author,
            "timestamp": rationale.timestamp,
        }

    @staticmethod
    def _decision_doc(decision: ReviewDecision) -> dict:
        return {
            "record": "decision",
            "id": decision.id,
            "analyst": decision.analyst,
            "baseline": decision.baseline_label,
            "current": decision.current_label,
            "root": decision.root_id,
            "impacts_safety": decision.impacts_safety,
            "additional_mitigations_needed": decision.additional_mitigations_needed,
            "assets_to_update": [asdict(a) for a in decision.assets_to_update],
            "notes": decision.notes,
            "timestamp": decision.timestamp,
            "state": decision.state,
        }


def _decision_summary(decision: ReviewDecision) -> str:
    parts = []
    parts.append("safety impact" if decision.impacts_safety else "no safety impact")
    if decision.additional_mitigations_needed:
        parts.append("additional mitigations needed")
    if decision.assets_to_update:
        assets = ", ".join(f"{a.kind} {a.asset_id}" for a in decision.assets_to_update)
        parts.append(f"update {assets}")
    if not decision.additional_mitigations_needed and not decision.assets_to_update:
        parts.append("no further action")
    return "; ".join(parts)
