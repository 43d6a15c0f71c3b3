/** Typed client for the procmap service. Each getter either resolves with
 * the parsed body or throws ApiError carrying the server's symbolic code. */

import type {
  ApiErrorBody,
  GraphPayload,
  IngredientsPayload,
  InstructionsPayload,
  PathsPayload,
  GraphNode,
} from "./types.js";

export type FetchLike = (url: string) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function getJson<T>(fetchFn: FetchLike, url: string): Promise<T> {
  const resp = await fetchFn(url);
  if (!resp.ok) {
    let body: ApiErrorBody | null = null;
    try {
      body = (await resp.json()) as ApiErrorBody;
    } catch {
      // non-JSON error body: fall through to the generic message
    }
    throw new ApiError(
      resp.status,
      body?.error ?? "http_error",
      body?.message ?? `request failed with status ${resp.status}`,
    );
  }
  return (await resp.json()) as T;
}

export class Api {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  graph(): Promise<GraphPayload> {
    return getJson(this.fetchFn, `${this.base}/api/graph`);
  }

  node(id: number): Promise<GraphNode> {
    return getJson(this.fetchFn, `${this.base}/api/nodes/${id}`);
  }

  instructions(id: number, limit = 10): Promise<InstructionsPayload> {
    return getJson(
      this.fetchFn,
      `${this.base}/api/nodes/${id}/instructions?limit=${limit}`,
    );
  }

  ingredients(limit = 20): Promise<IngredientsPayload> {
    return getJson(
      this.fetchFn,
      `${this.base}/api/ingredients?order=rarity&limit=${limit}`,
    );
  }

  paths(ingredient: string): Promise<PathsPayload> {
    return getJson(
      this.fetchFn,
      `${this.base}/api/paths?ingredient=${encodeURIComponent(ingredient)}`,
    );
  }
}

/** Wraps an async operation so only the most recent call may deliver:
 * responses arriving out of order are dropped, not applied. */
export class LatestWins<T> {
  private seq = 0;

  async run(op: () => Promise<T>): Promise<T | undefined> {
    const ticket = ++this.seq;
    const result = await op();
    return ticket === this.seq ? result : undefined;
  }
}
