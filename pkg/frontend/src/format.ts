/** Text formatting for values taken verbatim from API payloads. */

import type { GraphNode, IngredientSummary } from "./types.js";

/** 0.5333 -> "53.3%" (always one decimal place). */
export function formatPercent(freq: number): string {
  return `${(freq * 100).toFixed(1)}%`;
}

/** Trim trailing zeros without losing precision: 0.5 -> "0.5", 2 -> "2". */
export function formatQuantity(value: number): string {
  return String(parseFloat(value.toPrecision(12)));
}

/** "1-3 cup", "2 cup", "2" or "" when the API carries no quantity. */
export function formatRange(ing: IngredientSummary): string {
  if (ing.qty_min === null || ing.qty_max === null) return "";
  const lo = formatQuantity(ing.qty_min);
  const hi = formatQuantity(ing.qty_max);
  const span = lo === hi ? lo : `${lo}–${hi}`;
  return ing.unit === null ? span : `${span} ${ing.unit}`;
}

/** Seconds -> compact "45 min" / "1 h 15 min" / "30 s". */
export function formatSeconds(s: number): string {
  if (s < 60) return `${s} s`;
  const minutes = Math.round(s / 60);
  if (minutes < 60) return `${minutes} min`;
  const h = Math.floor(minutes / 60);
  const rest = minutes % 60;
  return rest === 0 ? `${h} h` : `${h} h ${rest} min`;
}

export function formatTimeRange(min: number | null, max: number | null): string {
  if (min === null || max === null) return "";
  const lo = formatSeconds(min);
  const hi = formatSeconds(max);
  return lo === hi ? lo : `${lo} – ${hi}`;
}

/** Node caption: verb plus the top ingredients, Fig-style percentages. */
export function nodeLabel(node: GraphNode, maxIngredients = 2): string[] {
  const lines = [node.verb];
  for (const ing of node.ingredients.slice(0, maxIngredients)) {
    lines.push(`${ing.name} (${formatPercent(ing.freq)})`);
  }
  return lines;
}
