"""HTTP JSON API over a built summary graph.

Stateless and read-only: the graph is loaded once at startup and shared
immutably across request handlers. Reveal state lives in the client.
Errors are JSON bodies of the form {"error": code, "message": text}.
"""
from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .graph import (
    IngredientNotFound,
    PruneConfig,
    SummaryGraph,
    graph_to_json,
    node_to_json,
    paths_with_ingredient,
    rare_ingredients,
)


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _no_graph() -> ApiError:
    return ApiError(503, "no_graph", "no summary graph is loaded")


def create_app(
    graph: SummaryGraph | None,
    static_dir: str | Path | None = None,
    config: PruneConfig = PruneConfig(),
) -> FastAPI:
    app = FastAPI(title="procmap", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": exc.code, "message": exc.message},
        )

    def require_graph() -> SummaryGraph:
        if graph is None:
            raise _no_graph()
        return graph

    def find_node(node_id: int):
        g = require_graph()
        node = g.nodes.get(node_id)
        if node is None and g.hidden is not None:
            node = g.hidden.nodes.get(node_id)
        if node is None:
            raise ApiError(404, "unknown_node", f"no node with id {node_id}")
        return node

    @app.get("/api/graph")
    def get_graph():
        return graph_to_json(require_graph())

    @app.get("/api/nodes/{node_id}")
    def get_node(node_id: int):
        return node_to_json(find_node(node_id))

    @app.get("/api/nodes/{node_id}/instructions")
    def get_node_instructions(node_id: int, limit: int = Query(default=10, ge=1)):
        node = find_node(node_id)
        return {"id": node.id, "instructions": list(node.summary.samples[:limit])}

    @app.get("/api/ingredients")
    def get_ingredients(
        order: str = Query(default="rarity"), limit: int = Query(default=20, ge=1)
    ):
        g = require_graph()
        if order != "rarity":
            raise ApiError(400, "bad_order", f"unsupported order {order!r}")
        counts = dict(g.rare)
        ranked = rare_ingredients(_TableView(counts), limit)
        return {"ingredients": [{"name": n, "count": c} for n, c in ranked]}

    @app.get("/api/paths")
    def get_paths(ingredient: str = Query(...)):
        g = require_graph()
        if g.hidden is None:
            raise ApiError(503, "no_hidden_graph", "hidden graph not loaded")
        try:
            revealed = paths_with_ingredient(g, ingredient, config)
        except IngredientNotFound as exc:
            raise ApiError(404, "ingredient_not_found", str(exc))
        displayed_nodes = set(g.nodes)
        displayed_edges = set(g.edges)
        hidden_nodes: set[int] = set()
        hidden_edges: set[tuple[int, int]] = set()
        for path, _ in revealed:
            for n in path:
                if n not in displayed_nodes and n not in (g.start, g.end):
                    hidden_nodes.add(n)
            for pair in zip(path, path[1:]):
                if pair not in displayed_edges:
                    hidden_edges.add(pair)
        return {
            "ingredient": ingredient,
            "paths": [
                {"nodes": list(path), "hidden": was_hidden}
                for path, was_hidden in revealed
            ],
            "revealed_nodes": [
                node_to_json(g.hidden.nodes[i]) for i in sorted(hidden_nodes)
            ],
            "revealed_edges": [
                {"src": s, "dst": d, "weight": g.hidden.edges[(s, d)]}
                for (s, d) in sorted(hidden_edges)
            ],
        }

    @app.get("/api/health")
    def get_health():
        if graph is None:
            return {"status": "empty", "dish": None, "nodes": 0, "edges": 0}
        return {
            "status": "ok",
            "dish": graph.dish,
            "nodes": len(graph.nodes),
            "edges": len(graph.edges),
        }

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


class _TableView:
    """Just enough of the frequency-table interface for rare_ingredients."""

    def __init__(self, counts: dict[str, int]):
        self.counts = counts

    def items(self):
        return self.counts.items()


def run_server(
    graph: SummaryGraph | None,
    host: str = "127.0.0.1",
    port: int = 8750,
    static_dir: str | Path | None = None,
) -> None:
    import uvicorn

    uvicorn.run(create_app(graph, static_dir), host=host, port=port, log_level="info")
