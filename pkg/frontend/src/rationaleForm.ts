// Rationale capture: reason/alternatives/arguments for design decisions,
// justification/explanation for code changes. Validation failures from the
// server (400) render inline; nothing is assumed client-side beyond
// non-empty required text.

import type { Api, RationaleDraft } from "./api.js";
import { ApiError } from "./api.js";
import { el } from "./dom.js";
import type { DeltaRef, RationalePayload } from "./model.js";

export interface RationaleFormOptions {
  subject: string;
  kind: "DesignDecision" | "CodeChange";
  api: Api;
  ref: DeltaRef;
  onSubmitted?: (stored: RationalePayload) => void;
}

function textarea(name: string, label: string): HTMLElement {
  return el(
    "label",
    { class: "field" },
    el("span", { text: label }),
    el("textarea", { name, rows: "2" }),
  );
}

export function buildRationaleForm(options: RationaleFormOptions): HTMLFormElement {
  const { subject, kind } = options;
  const isDesign = kind === "DesignDecision";
  const form = el("form", { class: "rationale-form", "data-subject": subject });
  const error = el("p", { class: "form-error", role: "alert" });
  error.hidden = true;

  const fields = isDesign
    ? [
        textarea("reason", "Reason for the change"),
        textarea("alternatives", "Alternatives considered (one per line)"),
        textarea("arguments", "Arguments (one per line)"),
      ]
    : [
        textarea("justification", "Justification for the change"),
        textarea("explanation", "Explanation of the change"),
      ];

  form.append(
    el("h4", { text: `${isDesign ? "Design" : "Code"} rationale · ${subject}` }),
    ...fields,
    el(
      "label",
      { class: "field" },
      el("span", { text: "Author" }),
      el("input", { name: "author", type: "text" }),
    ),
    error,
    el("button", { type: "submit", text: "Submit rationale" }),
  );

  const showError = (message: string) => {
    error.textContent = message;
    error.hidden = false;
  };

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    error.hidden = true;
    const value = (name: string) =>
      (form.elements.namedItem(name) as HTMLTextAreaElement | HTMLInputElement | null)
        ?.value ?? "";
    const lines = (name: string) =>
      value(name)
        .split("\n")
        .map((line) => line.trim())
        .filter(Boolean);

    const required = isDesign ? value("reason") : value("justification");
    if (!required.trim()) {
      // Surfaced inline; no request leaves the page.
      showError(isDesign ? "A reason is required." : "A justification is required.");
      return;
    }

    const draft: RationaleDraft = isDesign
      ? {
          kind,
          subject,
          reason: value("reason"),
          alternatives: lines("alternatives"),
          arguments: lines("arguments"),
          author: value("author"),
        }
      : {
          kind,
          subject,
          justification: value("justification"),
          explanation: value("explanation"),
          author: value("author"),
        };

    options.api
      .submitRationale(options.ref, draft)
      .then((stored) => {
        form.reset();
        options.onSubmitted?.(stored);
      })
      .catch((err) => {
        if (err instanceof ApiError) {
          showError(err.detail);
        } else {
          showError(String(err));
        }
      });
  });

  return form;
}
