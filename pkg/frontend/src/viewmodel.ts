/** Pure view-model layer: what is visible, how dark, how thick.
 * Reveal state is a single optional overlay, so dismissing is exactly
 * "drop the overlay" and provably restores the prior view. */

import type { GraphEdge, GraphNode, GraphPayload, PathsPayload } from "./types.js";

export interface Overlay {
  ingredient: string;
  paths: PathsPayload["paths"];
  revealedNodes: GraphNode[];
  revealedEdges: GraphEdge[];
}

export interface ViewModel {
  graph: GraphPayload;
  selection: number | null;
  overlay: Overlay | null;
}

export function createViewModel(graph: GraphPayload): ViewModel {
  return { graph, selection: null, overlay: null };
}

export function applyReveal(vm: ViewModel, payload: PathsPayload): ViewModel {
  return {
    ...vm,
    overlay: {
      ingredient: payload.ingredient,
      paths: payload.paths,
      revealedNodes: payload.revealed_nodes,
      revealedEdges: payload.revealed_edges,
    },
  };
}

export function dismissReveal(vm: ViewModel): ViewModel {
  return vm.overlay === null ? vm : { ...vm, overlay: null };
}

export function toggleSelection(vm: ViewModel, id: number | null): ViewModel {
  return { ...vm, selection: vm.selection === id ? null : id };
}

/** Base nodes plus any overlay nodes the display graph lacks. */
export function visibleNodes(vm: ViewModel): GraphNode[] {
  const nodes = [...vm.graph.nodes];
  if (vm.overlay) {
    const known = new Set(nodes.map((n) => n.id));
    for (const node of vm.overlay.revealedNodes) {
      if (!known.has(node.id)) nodes.push(node);
    }
  }
  return nodes.sort((a, b) => a.id - b.id);
}

export function visibleEdges(vm: ViewModel): GraphEdge[] {
  const edges = [...vm.graph.edges];
  if (vm.overlay) {
    const known = new Set(edges.map((e) => `${e.src}>${e.dst}`));
    for (const edge of vm.overlay.revealedEdges) {
      if (!known.has(`${edge.src}>${edge.dst}`)) edges.push(edge);
    }
  }
  return edges.sort((a, b) => a.src - b.src || a.dst - b.dst);
}

export function revealedNodeIds(vm: ViewModel): Set<number> {
  return new Set((vm.overlay?.revealedNodes ?? []).map((n) => n.id));
}

export function revealedEdgeKeys(vm: ViewModel): Set<string> {
  return new Set(
    (vm.overlay?.revealedEdges ?? []).map((e) => `${e.src}>${e.dst}`),
  );
}

/** Edges lying on any revealed path: these get the blue highlight. */
export function highlightedEdgeKeys(vm: ViewModel): Set<string> {
  const keys = new Set<string>();
  for (const path of vm.overlay?.paths ?? []) {
    for (let i = 0; i + 1 < path.nodes.length; i++) {
      keys.add(`${path.nodes[i]}>${path.nodes[i + 1]}`);
    }
  }
  return keys;
}

export function highlightedNodeIds(vm: ViewModel): Set<number> {
  const ids = new Set<number>();
  for (const path of vm.overlay?.paths ?? []) {
    for (const id of path.nodes) ids.add(id);
  }
  return ids;
}

/** Darkness in [0.25, 0.95], strictly monotone in weight. */
export function nodeDarkness(weight: number, maxWeight: number): number {
  const cap = Math.max(maxWeight, 1);
  return 0.25 + 0.7 * (weight / cap);
}

/** Stroke width in px, strictly monotone in weight. */
export function edgeThickness(weight: number, maxWeight: number): number {
  const cap = Math.max(maxWeight, 1);
  return 1 + 5 * (weight / cap);
}

export function maxNodeWeight(vm: ViewModel): number {
  return Math.max(1, ...visibleNodes(vm).map((n) => n.weight));
}

export function maxEdgeWeight(vm: ViewModel): number {
  return Math.max(1, ...visibleEdges(vm).map((e) => e.weight));
}
