/** Payload shapes of the procmap HTTP API. All numbers shown in the UI
 * come from these bodies; the client computes only geometry. */

export interface IngredientSummary {
  name: string;
  freq: number;
  qty_min: number | null;
  qty_max: number | null;
  unit: string | null;
}

export interface ToolCount {
  name: string;
  count: number;
}

export interface GraphNode {
  id: number;
  weight: number;
  verb: string;
  ingredients: IngredientSummary[];
  tools: ToolCount[];
  time_min_s: number | null;
  time_max_s: number | null;
  samples: string[];
}

export interface GraphEdge {
  src: number;
  dst: number;
  weight: number;
}

export interface GraphPayload {
  dish: string;
  start: number;
  end: number;
  min_len: number;
  warning: string | null;
  nodes: GraphNode[];
  edges: GraphEdge[];
  paths: number[][];
  rare_ingredients: { name: string; count: number }[];
}

export interface InstructionsPayload {
  id: number;
  instructions: string[];
}

export interface IngredientsPayload {
  ingredients: { name: string; count: number }[];
}

export interface RevealPath {
  nodes: number[];
  hidden: boolean;
}

export interface PathsPayload {
  ingredient: string;
  paths: RevealPath[];
  revealed_nodes: GraphNode[];
  revealed_edges: GraphEdge[];
}

export interface ApiErrorBody {
  error: string;
  message: string;
}
