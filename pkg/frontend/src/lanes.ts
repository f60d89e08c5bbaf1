// Three-lane view: safety case | fault tree | delta tree. Node colors come
// straight from the API payload statuses and warned sets; the client lays
// boxes out on a depth grid and draws connectors, nothing more.

import { clear, el, svgEl } from "./dom.js";
import type { AssetsPayload, DeltaPayload, WarningsPayload } from "./model.js";
import { statusClassOf } from "./model.js";

export interface LaneModel {
  delta: DeltaPayload;
  warnings: WarningsPayload;
  assets: AssetsPayload;
}

export type LaneName = "sac" | "ft" | "delta";

export interface LaneHandlers {
  onSelect?: (nodeId: string, lane: LaneName) => void;
}

const NODE_W = 150;
const NODE_H = 44;
const GAP_X = 26;
const GAP_Y = 36;
const LANE_GAP = 70;
const HEADER_H = 46;

interface Placed {
  x: number;
  y: number;
  lane: LaneName;
}

interface LaneSpec {
  lane: LaneName;
  title: string;
  nodes: { id: string; label: string; sub: string; classes: string[] }[];
  edges: { from: string; to: string; dashed: boolean }[];
}

function depthsFrom(ids: string[], edges: { from: string; to: string }[]): Map<string, number> {
  const children = new Map<string, string[]>();
  const hasParent = new Set<string>();
  for (const { from, to } of edges) {
    children.set(from, [...(children.get(from) ?? []), to]);
    hasParent.add(to);
  }
  const depth = new Map<string, number>();
  const queue = ids.filter((id) => !hasParent.has(id));
  for (const root of queue) depth.set(root, 0);
  while (queue.length) {
    const node = queue.shift()!;
    for (const child of children.get(node) ?? []) {
      if (!depth.has(child)) {
        depth.set(child, depth.get(node)! + 1);
        queue.push(child);
      }
    }
  }
  for (const id of ids) {
    if (!depth.has(id)) depth.set(id, 0);
  }
  return depth;
}

function buildLaneSpecs(model: LaneModel): LaneSpec[] {
  const warned = new Set([
    ...model.warnings.warned_fault_nodes,
    ...model.warnings.warned_sac_nodes,
  ]);

  const sacNodes: LaneSpec["nodes"] = [];
  const sacEdges: LaneSpec["edges"] = [];
  for (const sc of model.assets.safety_cases) {
    for (const node of sc.nodes) {
      const classes = ["sac", node.kind.toLowerCase()];
      if (warned.has(node.id)) classes.push("warned");
      sacNodes.push({ id: node.id, label: node.id, sub: node.kind, classes });
    }
    sacEdges.push(
      ...sc.supported_by.map((e) => ({ from: e.source, to: e.target, dashed: false })),
      ...sc.in_context_of.map((e) => ({ from: e.source, to: e.target, dashed: true })),
    );
  }

  const ftNodes: LaneSpec["nodes"] = [];
  const ftEdges: LaneSpec["edges"] = [];
  for (const ft of model.assets.fault_trees) {
    for (const node of ft.nodes) {
      const classes = ["ft", node.kind.toLowerCase()];
      if (warned.has(node.id)) classes.push("warned");
      const sub = node.gate_op ? `${node.kind} ${node.gate_op}` : node.kind;
      ftNodes.push({ id: node.id, label: node.id, sub, classes });
    }
    ftEdges.push(...ft.edges.map((e) => ({ from: e.parent, to: e.child, dashed: false })));
  }

  const deltaNodes: LaneSpec["nodes"] = Object.entries(model.delta.nodes).map(
    ([id, entry]) => ({
      id,
      label: id,
      sub: `${entry.artifact_type} · ${entry.status}`,
      classes: ["artifact", statusClassOf(entry.status)],
    }),
  );
  const deltaEdges = model.delta.edges.map((e) => ({
    from: e.parent,
    to: e.child,
    dashed: false,
  }));

  return [
    { lane: "sac", title: "Safety case", nodes: sacNodes, edges: sacEdges },
    { lane: "ft", title: "Fault tree", nodes: ftNodes, edges: ftEdges },
    {
      lane: "delta",
      title: `Delta ${model.delta.baseline} → ${model.delta.current}`,
      nodes: deltaNodes,
      edges: deltaEdges,
    },
  ];
}

export function renderLanes(
  container: HTMLElement,
  model: LaneModel,
  handlers: LaneHandlers = {},
): void {
  clear(container);
  const specs = buildLaneSpecs(model);
  const positions = new Map<string, Placed>();

  let laneX = 0;
  let maxY = 0;
  const laneMeta: { spec: LaneSpec; x: number; width: number }[] = [];
  for (const spec of specs) {
    const depth = depthsFrom(
      spec.nodes.map((n) => n.id),
      spec.edges,
    );
    const rows = new Map<number, string[]>();
    for (const node of spec.nodes) {
      const d = depth.get(node.id)!;
      rows.set(d, [...(rows.get(d) ?? []), node.id]);
    }
    let widest = 1;
    for (const [d, ids] of rows) {
      ids.sort();
      widest = Math.max(widest, ids.length);
      ids.forEach((id, index) => {
        positions.set(id, {
          x: laneX + index * (NODE_W + GAP_X),
          y: HEADER_H + d * (NODE_H + GAP_Y),
          lane: spec.lane,
        });
      });
      maxY = Math.max(maxY, HEADER_H + d * (NODE_H + GAP_Y) + NODE_H);
    }
    const width = widest * (NODE_W + GAP_X) - GAP_X;
    laneMeta.push({ spec, x: laneX, width });
    laneX += width + LANE_GAP;
  }
  const totalW = laneX - LANE_GAP;
  const totalH = maxY + 30;

  const badge = el("span", {
    id: "warned-badge",
    class: "badge warned-badge",
    title: "warned safety nodes",
    text: String(
      model.warnings.warned_fault_nodes.length + model.warnings.warned_sac_nodes.length,
    ),
  });
  const header = el(
    "div",
    { class: "lanes-header" },
    el("span", { text: `root ${model.delta.root}` }),
    el("span", { text: " · warned " }),
    badge,
  );

  const canvas = el("div", { class: "lanes-canvas" });
  canvas.style.position = "relative";
  canvas.style.width = `${totalW}px`;
  canvas.style.height = `${totalH}px`;

  const svg = svgEl("svg", {
    class: "lanes-edges",
    width: String(totalW),
    height: String(totalH),
    viewBox: `0 0 ${totalW} ${totalH}`,
  });
  svg.setAttribute(
    "style",
    "position:absolute;left:0;top:0;pointer-events:none;",
  );
  canvas.append(svg);

  const center = (id: string) => {
    const p = positions.get(id);
    return p ? { cx: p.x + NODE_W / 2, cy: p.y + NODE_H / 2 } : undefined;
  };

  const line = (from: string, to: string, classes: string) => {
    const a = center(from);
    const b = center(to);
    if (!a || !b) return;
    svg.append(
      svgEl("line", {
        x1: String(a.cx),
        y1: String(a.cy),
        x2: String(b.cx),
        y2: String(b.cy),
        class: classes,
      }),
    );
  };

  for (const { spec, x, width } of laneMeta) {
    canvas.append(
      el("h2", {
        class: `lane-title lane-${spec.lane}`,
        text: spec.title,
        style: `position:absolute;left:${x}px;top:0;width:${width}px;`,
      }),
    );
    for (const edge of spec.edges) {
      line(edge.from, edge.to, edge.dashed ? "edge dashed" : "edge");
    }
    for (const node of spec.nodes) {
      const p = positions.get(node.id)!;
      const box = el(
        "div",
        {
          class: ["node", ...node.classes].join(" "),
          "data-id": node.id,
          "data-lane": spec.lane,
          tabindex: "0",
          style: `position:absolute;left:${p.x}px;top:${p.y}px;width:${NODE_W}px;height:${NODE_H}px;`,
        },
        el("span", { class: "node-id", text: node.label }),
        el("span", { class: "node-sub", text: node.sub }),
      );
      box.addEventListener("click", () => handlers.onSelect?.(node.id, spec.lane));
      canvas.append(box);
    }
  }

  // Cross-lane connectors: dashed horizontal trace links, and a dashed
  // red/green bracket for each replacement pair.
  for (const hl of model.assets.horizontal_links) {
    line(hl.source, hl.target, "hlink dashed");
  }
  for (const pair of model.delta.replacements) {
    line(pair.removed, pair.added, "replacement dashed");
    const removedBox = canvas.querySelector(`[data-id="${pair.removed}"]`);
    const addedBox = canvas.querySelector(`[data-id="${pair.added}"]`);
    removedBox?.classList.add("replacement-removed");
    addedBox?.classList.add("replacement-added");
  }

  container.append(header, canvas);
}
