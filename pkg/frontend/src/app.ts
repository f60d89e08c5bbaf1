// Page wiring: fetch the lane payloads, render, and refetch after writes.
// The client computes nothing safety-related; it draws what the API says.

import type { Api } from "./api.js";
import { ApiError, HttpApi } from "./api.js";
import { renderArtifactDetail, renderSafetyDetail } from "./detail.js";
import { clear, el } from "./dom.js";
import { renderLanes, type LaneName } from "./lanes.js";
import type { AssetsPayload, DeltaPayload, DeltaRef } from "./model.js";
import { buildRationaleForm } from "./rationaleForm.js";
import { renderReviewPanel } from "./reviewPanel.js";

interface PageElements {
  lanes: HTMLElement;
  detail: HTMLElement;
  review: HTMLElement;
  status: HTMLElement;
}

function refFromLocation(): DeltaRef {
  const params = new URLSearchParams(window.location.search);
  return {
    baseline: params.get("baseline") ?? "v1",
    current: params.get("current") ?? "v2",
    root: params.get("root") ?? "UAV-1387",
  };
}

function detailVersion(delta: DeltaPayload, id: string): string {
  // Removed artifacts only exist in the baseline snapshot.
  return delta.nodes[id]?.status === "Removed" ? delta.baseline : delta.current;
}

function rationaleKindFor(delta: DeltaPayload, id: string): "DesignDecision" | "CodeChange" {
  return delta.nodes[id]?.artifact_type === "Code" ? "CodeChange" : "DesignDecision";
}

export async function bootstrap(
  elements: PageElements,
  api: Api,
  ref: DeltaRef = refFromLocation(),
): Promise<void> {
  const status = elements.status;

  const showError = (err: unknown) => {
    clear(status);
    const message = err instanceof ApiError ? `${err.code}: ${err.detail}` : String(err);
    const retry = el("button", { type: "button", text: "Retry" });
    retry.addEventListener("click", () => {
      void bootstrap(elements, api, ref);
    });
    status.append(
      el("div", { class: "error-panel", role: "alert" },
        el("p", { text: `Could not reach the review service. ${message}` }),
        retry),
    );
  };

  let delta: DeltaPayload;
  let assets: AssetsPayload;
  try {
    const warningsPromise = api.warnings(ref);
    const assetsPromise = api.assets();
    const pendingPromise = api.pending(ref);
    const decisionsPromise = api.decisions();
    delta = await api.delta(ref);
    assets = await assetsPromise;
    const warnings = await warningsPromise;
    const pending = await pendingPromise;
    const decisions = await decisionsPromise;
    clear(status);

    renderLanes(elements.lanes, { delta, warnings, assets }, {
      onSelect: (id, lane) => {
        void showDetail(id, lane);
      },
    });
    renderReviewPanel(elements.review, { pending, decisions }, {
      api,
      ref,
      onClosed: () => {
        void refreshReview();
      },
    });
  } catch (err) {
    showError(err);
    return;
  }

  async function refreshReview(): Promise<void> {
    try {
      const [pending, decisions] = await Promise.all([api.pending(ref), api.decisions()]);
      renderReviewPanel(elements.review, { pending, decisions }, {
        api,
        ref,
        onClosed: () => void refreshReview(),
      });
    } catch (err) {
      showError(err);
    }
  }

  async function showDetail(id: string, lane: LaneName): Promise<void> {
    if (lane !== "delta") {
      const ft = assets.fault_trees.flatMap((f) => f.nodes).find((n) => n.id === id);
      const sac = assets.safety_cases.flatMap((s) => s.nodes).find((n) => n.id === id);
      const warnedBadge = document.querySelector(`[data-id="${id}"].warned`) !== null;
      if (ft) renderSafetyDetail(elements.detail, id, ft.kind, ft.description, warnedBadge);
      if (sac) renderSafetyDetail(elements.detail, id, sac.kind, sac.statement, warnedBadge);
      return;
    }
    try {
      const [artifact, rationales] = await Promise.all([
        api.artifact(detailVersion(delta, id), id),
        api.rationalesFor(id),
      ]);
      renderArtifactDetail(elements.detail, artifact, rationales);
      if (delta.nodes[id]?.status !== "Unchanged") {
        elements.detail.append(
          buildRationaleForm({
            subject: id,
            kind: rationaleKindFor(delta, id),
            api,
            ref,
            onSubmitted: () => {
              void showDetail(id, lane);
              void refreshReview();
            },
          }),
        );
      }
    } catch (err) {
      showError(err);
    }
  }
}

export function start(): void {
  const get = (id: string): HTMLElement => {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node;
  };
  const params = new URLSearchParams(window.location.search);
  const api = new HttpApi(params.get("api") ?? "");
  void bootstrap(
    { lanes: get("lanes"), detail: get("detail"), review: get("review"), status: get("status") },
    api,
  );
}

if (typeof document !== "undefined" && document.getElementById("lanes")) {
  start();
}
