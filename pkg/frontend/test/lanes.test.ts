// Contract tests: replay recorded API payloads and assert what gets drawn.

import { beforeEach, describe, expect, it, vi } from "vitest";

import { renderLanes } from "../src/lanes.js";
import type { AssetsPayload, DeltaPayload, WarningsPayload } from "../src/model.js";

import assetsFixture from "./fixtures/assets.json";
import deltaFixture from "./fixtures/delta.json";
import warningsFixture from "./fixtures/warnings.json";

const delta = deltaFixture as unknown as DeltaPayload;
const warnings = warningsFixture as unknown as WarningsPayload;
const assets = assetsFixture as unknown as AssetsPayload;

describe("three-lane view over the golden scenario", () => {
  let container: HTMLElement;

  beforeEach(() => {
    container = document.createElement("div");
    document.body.replaceChildren(container);
    renderLanes(container, { delta, warnings, assets });
  });

  it("renders exactly 2 green and 2 red artifact nodes", () => {
    expect(container.querySelectorAll(".node.artifact.added")).toHaveLength(2);
    expect(container.querySelectorAll(".node.artifact.removed")).toHaveLength(2);
    const addedIds = [...container.querySelectorAll(".node.artifact.added")].map(
      (n) => n.getAttribute("data-id"),
    );
    expect(addedIds.sort()).toEqual(["OnDemandAirspace.java", "UAV-1413"]);
  });

  it("renders the unchanged artifacts gray, never colored", () => {
    expect(container.querySelectorAll(".node.artifact.unchanged")).toHaveLength(2);
    expect(container.querySelectorAll(".node.artifact.modified")).toHaveLength(0);
  });

  it("badge and warned overlays equal the warning payload cardinality", () => {
    const expected =
      warnings.warned_fault_nodes.length + warnings.warned_sac_nodes.length;
    expect(container.querySelector("#warned-badge")?.textContent).toBe(String(expected));
    expect(container.querySelectorAll(".node.warned")).toHaveLength(expected);
  });

  it("marks only the warned safety nodes", () => {
    const warnedIds = [...container.querySelectorAll(".node.warned")].map(
      (n) => n.getAttribute("data-id"),
    );
    expect(warnedIds.sort()).toEqual(
      [...warnings.warned_fault_nodes, ...warnings.warned_sac_nodes].sort(),
    );
    expect(container.querySelector('[data-id="FT-IE1"]')?.classList.contains("warned"))
      .toBe(false);
  });

  it("draws dashed cross-lane connectors for every horizontal link", () => {
    expect(container.querySelectorAll("line.hlink.dashed")).toHaveLength(
      assets.horizontal_links.length,
    );
  });

  it("brackets the replacement pair in red/green", () => {
    expect(container.querySelectorAll("line.replacement")).toHaveLength(1);
    expect(
      container.querySelector(".replacement-removed")?.getAttribute("data-id"),
    ).toBe("UAV-1388");
    expect(
      container.querySelector(".replacement-added")?.getAttribute("data-id"),
    ).toBe("UAV-1413");
  });

  it("clicking a node reports its id and lane", () => {
    const onSelect = vi.fn();
    renderLanes(container, { delta, warnings, assets }, { onSelect });
    (container.querySelector('[data-id="UAV-1413"]') as HTMLElement).click();
    expect(onSelect).toHaveBeenCalledWith("UAV-1413", "delta");
    (container.querySelector('[data-id="FT-BE2"]') as HTMLElement).click();
    expect(onSelect).toHaveBeenCalledWith("FT-BE2", "ft");
  });
});

describe("all-unchanged delta", () => {
  it("renders no colored nodes", () => {
    const container = document.createElement("div");
    const flat: DeltaPayload = {
      ...delta,
      nodes: Object.fromEntries(
        Object.entries(delta.nodes).map(([id, entry]) => [
          id,
          { ...entry, status: "Unchanged" as const },
        ]),
      ),
      replacements: [],
    };
    const quiet: WarningsPayload = {
      ...warnings,
      changed: [],
      warned_fault_nodes: [],
      warned_sac_nodes: [],
      provenance: {},
    };
    renderLanes(container, { delta: flat, warnings: quiet, assets });
    expect(container.querySelectorAll(".node.added")).toHaveLength(0);
    expect(container.querySelectorAll(".node.removed")).toHaveLength(0);
    expect(container.querySelectorAll(".node.modified")).toHaveLength(0);
    expect(container.querySelectorAll(".node.warned")).toHaveLength(0);
    expect(container.querySelector("#warned-badge")?.textContent).toBe("0");
  });
});
