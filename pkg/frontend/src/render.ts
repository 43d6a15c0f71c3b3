/** DOM rendering. Stateless: every function redraws its subtree from the
 * view model, so the DOM is a pure function of (view model, panel data). */

import { layeredLayout } from "./layout.js";
import {
  ViewModel,
  edgeThickness,
  highlightedEdgeKeys,
  highlightedNodeIds,
  maxEdgeWeight,
  maxNodeWeight,
  nodeDarkness,
  revealedEdgeKeys,
  revealedNodeIds,
  visibleEdges,
  visibleNodes,
} from "./viewmodel.js";
import {
  formatPercent,
  formatRange,
  formatTimeRange,
  nodeLabel,
} from "./format.js";
import type { GraphNode } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const CELL_X = 170;
const CELL_Y = 84;
const NODE_RX = 56;
const NODE_RY = 28;
const TERM_RX = 34;
const TERM_RY = 20;

export function shadeColor(darkness: number): string {
  const lightness = Math.round(92 - 62 * darkness);
  return `hsl(215, 48%, ${lightness}%)`;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

function ellipseBoundaryOffset(
  dx: number,
  dy: number,
  rx: number,
  ry: number,
): { x: number; y: number } {
  const norm = Math.sqrt((dx / rx) ** 2 + (dy / ry) ** 2) || 1;
  return { x: dx / norm, y: dy / norm };
}

export function renderGraph(svg: SVGSVGElement, vm: ViewModel): void {
  svg.textContent = "";

  const nodes = visibleNodes(vm);
  const edges = visibleEdges(vm);
  const positions = layeredLayout({
    start: vm.graph.start,
    end: vm.graph.end,
    nodeIds: nodes.map((n) => n.id),
    edges: edges.map((e) => [e.src, e.dst]),
  });

  const px = new Map<number, { x: number; y: number }>();
  let minY = 0;
  let maxY = 0;
  let maxX = 0;
  for (const [id, p] of positions) {
    minY = Math.min(minY, p.y);
    maxY = Math.max(maxY, p.y);
    maxX = Math.max(maxX, p.x);
  }
  for (const [id, p] of positions) {
    px.set(id, {
      x: 80 + p.x * CELL_X,
      y: 60 + (p.y - minY) * CELL_Y,
    });
  }
  const width = 160 + maxX * CELL_X;
  const height = 120 + (maxY - minY) * CELL_Y;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);

  const defs = svgEl("defs", {});
  for (const [id, color] of [
    ["arrow", "#7a8699"],
    ["arrow-hl", "#1f6fd6"],
  ] as const) {
    const marker = svgEl("marker", {
      id,
      viewBox: "0 0 10 10",
      refX: "9",
      refY: "5",
      markerWidth: "7",
      markerHeight: "7",
      orient: "auto-start-reverse",
    });
    marker.appendChild(svgEl("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: color }));
    defs.appendChild(marker);
  }
  svg.appendChild(defs);

  const maxEdge = maxEdgeWeight(vm);
  const revealedEdges = revealedEdgeKeys(vm);
  const highlighted = highlightedEdgeKeys(vm);
  const edgeLayer = svgEl("g", { class: "edges" });
  for (const edge of edges) {
    const a = px.get(edge.src);
    const b = px.get(edge.dst);
    if (!a || !b) continue;
    const key = `${edge.src}>${edge.dst}`;
    const [arx, ary] = edge.src === vm.graph.start ? [TERM_RX, TERM_RY] : [NODE_RX, NODE_RY];
    const [brx, bry] = edge.dst === vm.graph.end ? [TERM_RX, TERM_RY] : [NODE_RX, NODE_RY];
    const out = ellipseBoundaryOffset(b.x - a.x, b.y - a.y, arx, ary);
    const into = ellipseBoundaryOffset(a.x - b.x, a.y - b.y, brx, bry);
    const classes = ["edge"];
    if (revealedEdges.has(key)) classes.push("revealed");
    if (highlighted.has(key)) classes.push("highlight");
    const line = svgEl("line", {
      class: classes.join(" "),
      x1: String(a.x + out.x),
      y1: String(a.y + out.y),
      x2: String(b.x + into.x),
      y2: String(b.y + into.y),
      "stroke-width": edgeThickness(edge.weight, maxEdge).toFixed(2),
      "marker-end": highlighted.has(key) ? "url(#arrow-hl)" : "url(#arrow)",
      "data-src": String(edge.src),
      "data-dst": String(edge.dst),
      "data-weight": String(edge.weight),
    });
    const title = svgEl("title", {});
    title.textContent = `${edge.src} → ${edge.dst}: ${edge.weight} recipes`;
    line.appendChild(title);
    edgeLayer.appendChild(line);
  }
  svg.appendChild(edgeLayer);

  const maxNode = maxNodeWeight(vm);
  const revealed = revealedNodeIds(vm);
  const onPath = highlightedNodeIds(vm);
  const nodeLayer = svgEl("g", { class: "nodes" });

  for (const [id, label] of [
    [vm.graph.start, "START"],
    [vm.graph.end, "END"],
  ] as const) {
    const p = px.get(id);
    if (!p) continue;
    const group = svgEl("g", {
      class: "terminal",
      "data-id": String(id),
      transform: `translate(${p.x}, ${p.y})`,
    });
    group.appendChild(
      svgEl("ellipse", { rx: String(TERM_RX), ry: String(TERM_RY) }),
    );
    const text = svgEl("text", { "text-anchor": "middle", dy: "4" });
    text.textContent = label;
    group.appendChild(text);
    nodeLayer.appendChild(group);
  }

  for (const node of nodes) {
    const p = px.get(node.id);
    if (!p) continue;
    const classes = ["node"];
    if (revealed.has(node.id)) classes.push("revealed");
    if (onPath.has(node.id)) classes.push("highlight");
    if (vm.selection === node.id) classes.push("selected");
    const group = svgEl("g", {
      class: classes.join(" "),
      "data-id": String(node.id),
      "data-weight": String(node.weight),
      transform: `translate(${p.x}, ${p.y})`,
    });
    const darkness = nodeDarkness(node.weight, maxNode);
    group.appendChild(
      svgEl("ellipse", {
        rx: String(NODE_RX),
        ry: String(NODE_RY),
        fill: shadeColor(darkness),
        "data-darkness": darkness.toFixed(4),
      }),
    );
    const lines = nodeLabel(node);
    const text = svgEl("text", {
      "text-anchor": "middle",
      y: String(-(lines.length - 1) * 6),
    });
    lines.forEach((lineText, i) => {
      const tspan = svgEl("tspan", {
        x: "0",
        dy: i === 0 ? "0" : "12",
        class: i === 0 ? "verb" : "ing",
      });
      tspan.textContent = lineText;
      text.appendChild(tspan);
    });
    group.appendChild(text);
    const title = svgEl("title", {});
    title.textContent = `${node.verb}: ${node.weight} instructions`;
    group.appendChild(title);
    nodeLayer.appendChild(group);
  }
  svg.appendChild(nodeLayer);
}

export interface PanelData {
  node: GraphNode;
  samples: string[] | null;
}

export function renderPanel(panel: HTMLElement, data: PanelData | null): void {
  panel.textContent = "";
  if (data === null) {
    panel.hidden = true;
    return;
  }
  panel.hidden = false;
  const { node, samples } = data;

  const heading = document.createElement("h3");
  heading.textContent = node.verb;
  panel.appendChild(heading);

  const meta = document.createElement("p");
  meta.className = "meta";
  meta.textContent = `cluster of ${node.weight} instructions`;
  panel.appendChild(meta);

  if (node.ingredients.length > 0) {
    const list = document.createElement("ul");
    list.className = "ingredients";
    for (const ing of node.ingredients) {
      const item = document.createElement("li");
      const name = document.createElement("span");
      name.className = "ing-name";
      name.textContent = ing.name;
      item.appendChild(name);
      const range = formatRange(ing);
      if (range) {
        const qty = document.createElement("span");
        qty.className = "ing-range";
        qty.textContent = range;
        item.appendChild(qty);
      }
      const freq = document.createElement("span");
      freq.className = "ing-freq";
      freq.textContent = formatPercent(ing.freq);
      item.appendChild(freq);
      list.appendChild(item);
    }
    panel.appendChild(list);
  }

  if (node.tools.length > 0) {
    const tools = document.createElement("p");
    tools.className = "tools";
    tools.textContent =
      "tools: " + node.tools.map((t) => `${t.name} ×${t.count}`).join(", ");
    panel.appendChild(tools);
  }

  const time = formatTimeRange(node.time_min_s, node.time_max_s);
  if (time) {
    const el = document.createElement("p");
    el.className = "time";
    el.textContent = `time: ${time}`;
    panel.appendChild(el);
  }

  if (samples === null) {
    const button = document.createElement("button");
    button.className = "samples-btn";
    button.textContent = "show sample instructions";
    panel.appendChild(button);
  } else {
    const list = document.createElement("ol");
    list.className = "samples";
    for (const text of samples) {
      const item = document.createElement("li");
      item.textContent = text;
      list.appendChild(item);
    }
    panel.appendChild(list);
  }
}

export function renderRareList(
  el: HTMLElement,
  ingredients: { name: string; count: number }[],
): void {
  el.textContent = "";
  for (const { name, count } of ingredients) {
    const item = document.createElement("li");
    item.dataset.name = name;
    const label = document.createElement("span");
    label.className = "rare-name";
    label.textContent = name;
    item.appendChild(label);
    const n = document.createElement("span");
    n.className = "rare-count";
    n.textContent = String(count);
    item.appendChild(n);
    el.appendChild(item);
  }
}

export function showBanner(el: HTMLElement, message: string | null): void {
  el.hidden = message === null;
  el.textContent = message ?? "";
}

export function showToast(el: HTMLElement, message: string, ms = 4000): void {
  el.textContent = message;
  el.hidden = false;
  if (ms > 0) {
    setTimeout(() => {
      el.hidden = true;
    }, ms);
  }
}
