/** Layered left-to-right placement: each node's column is its longest-path
 * rank from START, so START sits leftmost and END is pinned rightmost.
 * Only geometry happens here; weights and labels pass through untouched. */

export interface LayoutGraph {
  start: number;
  end: number;
  nodeIds: number[];
  edges: [number, number][];
}

export interface Point {
  x: number;
  y: number;
}

export function longestPathRanks(g: LayoutGraph): Map<number, number> {
  const ranks = new Map<number, number>([[g.start, 0]]);
  const nodes = new Set([g.start, g.end, ...g.nodeIds]);
  // relaxation capped at |V| passes: terminates even if a union of paths
  // happens to contain a cycle
  for (let pass = 0; pass < nodes.size; pass++) {
    let changed = false;
    for (const [src, dst] of g.edges) {
      if (dst === g.start || dst === g.end) continue;
      const from = ranks.get(src);
      if (from === undefined) continue;
      const candidate = from + 1;
      if (candidate > (ranks.get(dst) ?? -Infinity)) {
        ranks.set(dst, candidate);
        changed = true;
      }
    }
    if (!changed) break;
  }
  let deepest = 0;
  for (const [node, rank] of ranks) {
    if (node !== g.start) deepest = Math.max(deepest, rank);
  }
  for (const id of g.nodeIds) {
    if (!ranks.has(id)) ranks.set(id, 1); // unreachable stragglers
  }
  ranks.set(g.end, deepest + 1);
  return ranks;
}

/** Abstract grid positions: x = rank, y centered within each column. */
export function layeredLayout(g: LayoutGraph): Map<number, Point> {
  const ranks = longestPathRanks(g);
  const columns = new Map<number, number[]>();
  for (const [node, rank] of ranks) {
    const col = columns.get(rank) ?? [];
    col.push(node);
    columns.set(rank, col);
  }
  const positions = new Map<number, Point>();
  for (const [rank, members] of columns) {
    members.sort((a, b) => a - b);
    members.forEach((node, row) => {
      positions.set(node, { x: rank, y: row - (members.length - 1) / 2 });
    });
  }
  return positions;
}
