// Node detail panel: the selected record plus its attached rationales.

import { clear, el } from "./dom.js";
import type { ArtifactPayload, RationalePayload } from "./model.js";

export function renderArtifactDetail(
  container: HTMLElement,
  artifact: ArtifactPayload,
  rationales: RationalePayload[],
): void {
  clear(container);
  const rows = [
    el("h3", { text: artifact.id }),
    el("p", { class: "detail-type", text: artifact.artifact_type }),
    el("p", { class: "detail-summary", text: artifact.summary }),
  ];
  if (artifact.body) {
    rows.push(el("p", { class: "detail-body", text: artifact.body }));
  }
  for (const [key, value] of Object.entries(artifact.attributes)) {
    rows.push(el("p", { class: "detail-attr", text: `${key}: ${value}` }));
  }
  container.append(...rows, renderRationaleList(rationales));
}

export function renderSafetyDetail(
  container: HTMLElement,
  id: string,
  kind: string,
  text: string,
  warned: boolean,
): void {
  clear(container);
  container.append(
    el("h3", { text: id }),
    el("p", { class: "detail-type", text: warned ? `${kind} · warned` : kind }),
    el("p", { class: "detail-summary", text }),
  );
}

export function renderRationaleList(rationales: RationalePayload[]): HTMLElement {
  const list = el("div", { class: "rationale-list" });
  if (!rationales.length) {
    list.append(el("p", { class: "rationale-empty", text: "No rationales recorded." }));
    return list;
  }
  for (const r of rationales) {
    const body =
      r.kind === "DesignDecision"
        ? [
            el("p", { class: "rationale-reason", text: r.reason }),
            ...r.alternatives.map((a) =>
              el("p", { class: "rationale-alternative", text: `alternative: ${a}` }),
            ),
            ...r.arguments.map((a) =>
              el("p", { class: "rationale-argument", text: `argument: ${a}` }),
            ),
          ]
        : [
            el("p", { class: "rationale-justification", text: r.justification }),
            el("p", { class: "rationale-explanation", text: r.explanation }),
          ];
    list.append(
      el(
        "article",
        { class: "rationale-entry", "data-rationale-id": r.id },
        el("header", { text: `${r.id} · ${r.kind} · ${r.author || "unknown"}` }),
        ...body,
      ),
    );
  }
  return list;
}
