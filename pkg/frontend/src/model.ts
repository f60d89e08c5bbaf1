// Typed views of the /api/v1 payloads. The client renders these verbatim;
// every status, warning, and pending list comes from the server.

export interface DeltaNodeEntry {
  status: "Added" | "Removed" | "Modified" | "Unchanged" | "Moved";
  artifact_type: string;
  baseline_hash: string | null;
  current_hash: string | null;
}

export interface EdgeEntry {
  parent: string;
  child: string;
  link_type: string;
}

export interface DeltaPayload {
  schema_version: string;
  root: string;
  baseline: string;
  current: string;
  nodes: Record<string, DeltaNodeEntry>;
  edges: EdgeEntry[];
  replacements: { removed: string; added: string }[];
}

export interface WarningsPayload {
  schema_version: string;
  root: string;
  baseline: string;
  current: string;
  changed: string[];
  warned_fault_nodes: string[];
  warned_sac_nodes: string[];
  provenance: Record<string, string[][]>;
}

export interface FaultNodePayload {
  id: string;
  kind: string;
  gate_op: string | null;
  description: string;
}

export interface FaultTreePayload {
  id: string;
  top_event: string;
  nodes: FaultNodePayload[];
  edges: { parent: string; child: string }[];
}

export interface SacNodePayload {
  id: string;
  kind: string;
  statement: string;
}

export interface SafetyCasePayload {
  id: string;
  root_goal: string;
  nodes: SacNodePayload[];
  supported_by: { source: string; target: string }[];
  in_context_of: { source: string; target: string }[];
}

export interface HorizontalLinkPayload {
  source: string;
  target: string;
  kind: string;
}

export interface AssetsPayload {
  schema_version: string;
  fault_trees: FaultTreePayload[];
  safety_cases: SafetyCasePayload[];
  horizontal_links: HorizontalLinkPayload[];
}

export interface ArtifactPayload {
  id: string;
  artifact_type: string;
  summary: string;
  body: string;
  attributes: Record<string, string>;
  content_hash: string;
}

export interface RationalePayload {
  id: string;
  kind: "DesignDecision" | "CodeChange";
  subject: string;
  baseline: string;
  current: string;
  reason: string;
  alternatives: string[];
  arguments: string[];
  justification: string;
  explanation: string;
  author: string;
  timestamp: string;
}

export interface DecisionPayload {
  id: string;
  analyst: string;
  baseline: string;
  current: string;
  root: string;
  impacts_safety: boolean;
  additional_mitigations_needed: boolean;
  assets_to_update: { kind: string; asset_id: string }[];
  notes: string;
  timestamp: string;
  state: "Open" | "Closed";
}

export interface NoticePayload {
  decision_id: string;
  recipients: string[];
  summary: string;
  created_at: string;
}

export interface DeltaRef {
  baseline: string;
  current: string;
  root: string;
}

export type StatusClass = "added" | "removed" | "modified" | "unchanged";

// Moved carries the modified color class; the data keeps the distinction.
export function statusClassOf(status: DeltaNodeEntry["status"]): StatusClass {
  switch (status) {
    case "Added":
      return "added";
    case "Removed":
      return "removed";
    case "Modified":
    case "Moved":
      return "modified";
    default:
      return "unchanged";
  }
}
