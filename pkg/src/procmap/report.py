"""Static report for a built graph: figures plus delimited tables.

Writes, into one directory: a layered drawing of the display graph
(node darkness tracks cluster size, edge thickness tracks recipe count),
a rarity chart, and CSV tables for nodes, edges, paths and rare
ingredients.
"""
from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .graph import END, START, SummaryGraph  # noqa: E402


def _layers(g: SummaryGraph) -> dict[int, int]:
    """BFS depth from START; unreachable nodes land after the deepest."""
    depth = {START: 0}
    frontier = [START]
    while frontier:
        nxt = []
        for node in frontier:
            for (s, d), _ in g.edges.items():
                if s == node and d not in depth:
                    depth[d] = depth[node] + 1
                    nxt.append(d)
        frontier = nxt
    deepest = max(depth.values(), default=0)
    for node in g.nodes:
        depth.setdefault(node, deepest)
    depth[END] = max(depth.values(), default=0) + 1
    return depth


def _positions(g: SummaryGraph) -> dict[int, tuple[float, float]]:
    depth = _layers(g)
    columns: dict[int, list[int]] = {}
    for node, layer in depth.items():
        columns.setdefault(layer, []).append(node)
    pos = {}
    for layer, nodes in columns.items():
        nodes.sort()
        for row, node in enumerate(nodes):
            pos[node] = (float(layer), row - (len(nodes) - 1) / 2.0)
    return pos


def render_graph_figure(g: SummaryGraph, path: Path) -> None:
    pos = _positions(g)
    fig, ax = plt.subplots(figsize=(max(8, 2.2 * max(x for x, _ in pos.values())), 7))

    max_edge = max(g.edges.values(), default=1)
    for (s, d), w in sorted(g.edges.items()):
        x0, y0 = pos[s]
        x1, y1 = pos[d]
        ax.annotate(
            "",
            xy=(x1, y1),
            xytext=(x0, y0),
            arrowprops=dict(
                arrowstyle="-|>",
                color="#777777",
                lw=0.5 + 3.0 * w / max_edge,
                shrinkA=16,
                shrinkB=16,
            ),
        )

    max_weight = max((n.weight for n in g.nodes.values()), default=1)
    for node_id, (x, y) in pos.items():
        if node_id in (START, END):
            label = "START" if node_id == START else "END"
            ax.scatter([x], [y], s=900, c="#ffffff", edgecolors="#222222", zorder=3)
            ax.text(x, y, label, ha="center", va="center", fontsize=8, zorder=4)
            continue
        node = g.nodes[node_id]
        shade = 0.25 + 0.7 * node.weight / max_weight
        ax.scatter(
            [x], [y], s=1100, c=[(0.2, 0.35, 0.6, shade)],
            edgecolors="#222222", zorder=3,
        )
        ings = ", ".join(s.name for s in node.summary.ingredients[:2])
        label = node.summary.verb if not ings else f"{node.summary.verb}\n{ings}"
        ax.text(x, y, label, ha="center", va="center", fontsize=7, zorder=4)

    ax.set_title(f"{g.dish}: summary graph ({len(g.nodes)} nodes)")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_rarity_figure(g: SummaryGraph, path: Path, top: int = 15) -> None:
    rare = g.rare[:top]
    fig, ax = plt.subplots(figsize=(7, max(3, 0.35 * len(rare))))
    if rare:
        names = [name for name, _ in rare][::-1]
        counts = [count for _, count in rare][::-1]
        ax.barh(names, counts, color="#4a6fa5")
        ax.set_xlabel("recipes")
    ax.set_title(f"{g.dish}: rarest ingredients")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(g: SummaryGraph, out_dir: str | Path) -> list[Path]:
    """Render figures and CSV tables; returns the files written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    nodes_csv = out / "nodes.csv"
    with nodes_csv.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["id", "weight", "verb", "ingredients", "tools", "time_min_s", "time_max_s"]
        )
        for node in sorted(g.nodes.values(), key=lambda n: n.id):
            s = node.summary
            writer.writerow(
                [
                    node.id,
                    node.weight,
                    s.verb,
                    "; ".join(f"{i.name}={i.freq:.3f}" for i in s.ingredients),
                    "; ".join(f"{name}={count}" for name, count in s.tools),
                    "" if s.time_range is None else s.time_range[0],
                    "" if s.time_range is None else s.time_range[1],
                ]
            )
    written.append(nodes_csv)

    edges_csv = out / "edges.csv"
    with edges_csv.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["src", "dst", "weight"])
        for (s, d), w in sorted(g.edges.items()):
            writer.writerow([s, d, w])
    written.append(edges_csv)

    paths_csv = out / "paths.csv"
    with paths_csv.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "length", "nodes"])
        for rank, path in enumerate(g.paths, start=1):
            writer.writerow([rank, len(path) - 2, " ".join(str(n) for n in path)])
    written.append(paths_csv)

    rare_csv = out / "rare_ingredients.csv"
    with rare_csv.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["name", "count"])
        for name, count in g.rare:
            writer.writerow([name, count])
    written.append(rare_csv)

    graph_png = out / "graph.png"
    render_graph_figure(g, graph_png)
    written.append(graph_png)

    rare_png = out / "rare_ingredients.png"
    render_rarity_figure(g, rare_png)
    written.append(rare_png)

    return written
