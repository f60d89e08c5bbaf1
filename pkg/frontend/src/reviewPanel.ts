// Analyst review panel: the pending-rationale checklist, the three verdict
// questions, and the close button. Close stays disabled while the server
// reports pending subjects; a 409 on close renders the missing ids.

import type { Api, DecisionDraft } from "./api.js";
import { ApiError } from "./api.js";
import { clear, el } from "./dom.js";
import type { DecisionPayload, DeltaRef, NoticePayload } from "./model.js";

export interface ReviewPanelModel {
  pending: string[];
  decisions: DecisionPayload[];
}

export interface ReviewPanelOptions {
  api: Api;
  ref: DeltaRef;
  onClosed?: (notice: NoticePayload) => void;
}

function yesNo(name: string, label: string): HTMLElement {
  return el(
    "fieldset",
    { class: "question", "data-question": name },
    el("legend", { text: label }),
    el(
      "label",
      {},
      el("input", { type: "radio", name, value: "yes" }),
      el("span", { text: "yes" }),
    ),
    el(
      "label",
      {},
      el("input", { type: "radio", name, value: "no", checked: "checked" }),
      el("span", { text: "no" }),
    ),
  );
}

function renderDecision(decision: DecisionPayload): HTMLElement {
  const assets = decision.assets_to_update
    .map((a) => `${a.kind} ${a.asset_id}`)
    .join(", ");
  return el(
    "article",
    { class: `decision decision-${decision.state.toLowerCase()}`, "data-decision-id": decision.id },
    el("header", { text: `${decision.id} · ${decision.state} · ${decision.analyst}` }),
    el("p", { text: `impacts safety: ${decision.impacts_safety ? "yes" : "no"}` }),
    el("p", {
      text: `additional mitigations: ${decision.additional_mitigations_needed ? "yes" : "no"}`,
    }),
    ...(assets ? [el("p", { text: `assets to update: ${assets}` })] : []),
    ...(decision.notes ? [el("p", { class: "decision-notes", text: decision.notes })] : []),
  );
}

export function renderReviewPanel(
  container: HTMLElement,
  model: ReviewPanelModel,
  options: ReviewPanelOptions,
): void {
  clear(container);
  container.append(el("h3", { text: "Review" }));

  const checklist = el("ul", { class: "pending-checklist" });
  for (const subject of model.pending) {
    checklist.append(el("li", { class: "pending-item", text: subject }));
  }
  if (!model.pending.length) {
    checklist.append(el("li", { class: "pending-none", text: "All rationales filed." }));
  }
  container.append(
    el("h4", { text: `Pending rationales (${model.pending.length})` }),
    checklist,
  );

  const closedAlready = model.decisions.some((d) => d.state === "Closed");
  const error = el("p", { class: "form-error", role: "alert" });
  error.hidden = true;
  const noticeBox = el("p", { class: "notice-summary" });
  noticeBox.hidden = true;

  const form = el(
    "form",
    { class: "verdict-form" },
    yesNo("impacts_safety", "Do the current changes impact safety?"),
    yesNo("additional_mitigations_needed", "Are additional mitigations needed?"),
    el(
      "fieldset",
      { class: "question", "data-question": "assets_to_update" },
      el("legend", { text: "Safety assets to update" }),
      el(
        "label",
        {},
        el("input", { type: "checkbox", name: "update_ft", value: "FaultTree" }),
        el("span", { text: "fault tree" }),
      ),
      el(
        "label",
        {},
        el("input", { type: "checkbox", name: "update_sac", value: "SafetyCase" }),
        el("span", { text: "safety case" }),
      ),
      el(
        "label",
        { class: "field" },
        el("span", { text: "Asset ids (comma separated)" }),
        el("input", { type: "text", name: "asset_ids" }),
      ),
    ),
    el(
      "label",
      { class: "field" },
      el("span", { text: "Analyst" }),
      el("input", { type: "text", name: "analyst" }),
    ),
    el(
      "label",
      { class: "field" },
      el("span", { text: "Notes" }),
      el("textarea", { name: "notes", rows: "2" }),
    ),
    error,
    noticeBox,
  );

  const closeButton = el("button", {
    type: "submit",
    class: "close-review",
    text: "Close review",
  });
  if (model.pending.length > 0 || closedAlready) {
    closeButton.disabled = true;
    closeButton.title = closedAlready
      ? "This review is closed."
      : "Every pending subject needs a rationale first.";
  }
  form.append(closeButton);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    error.hidden = true;
    const value = (name: string) =>
      (form.elements.namedItem(name) as HTMLInputElement | HTMLTextAreaElement | null)
        ?.value ?? "";
    const radio = (name: string) => {
      const checked = form.querySelector<HTMLInputElement>(
        `input[name="${name}"]:checked`,
      );
      return checked?.value === "yes";
    };
    const kinds: string[] = [];
    if (form.querySelector<HTMLInputElement>('input[name="update_ft"]')?.checked) {
      kinds.push("FaultTree");
    }
    if (form.querySelector<HTMLInputElement>('input[name="update_sac"]')?.checked) {
      kinds.push("SafetyCase");
    }
    const ids = value("asset_ids")
      .split(",")
      .map((s) => s.trim())
      .filter(Boolean);
    const draft: DecisionDraft = {
      analyst: value("analyst"),
      impacts_safety: radio("impacts_safety"),
      additional_mitigations_needed: radio("additional_mitigations_needed"),
      assets_to_update: kinds.flatMap((kind, index) =>
        ids[index] ? [{ kind, asset_id: ids[index] }] : [],
      ),
      notes: value("notes"),
    };

    options.api
      .createDecision(options.ref, draft)
      .then((decision) => options.api.closeDecision(decision.id))
      .then(({ notice }) => {
        noticeBox.textContent = `Closed. ${notice.summary} → ${notice.recipients.join(", ")}`;
        noticeBox.hidden = false;
        closeButton.disabled = true;
        options.onClosed?.(notice);
      })
      .catch((err) => {
        if (err instanceof ApiError && err.code === "PendingRationales") {
          error.textContent = `Rationales still missing: ${err.missing.join(", ")}`;
        } else if (err instanceof ApiError) {
          error.textContent = err.detail;
        } else {
          error.textContent = String(err);
        }
        error.hidden = false;
      });
  });

  container.append(form);

  if (model.decisions.length) {
    container.append(el("h4", { text: "Decisions" }));
    for (const decision of model.decisions) {
      container.append(renderDecision(decision));
    }
  }
}
