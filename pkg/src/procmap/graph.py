"""Summary graph: construction, pruning, path selection, node summaries.

Clusters become weighted nodes, recipe adjacency becomes weighted edges,
and START/END terminals make every displayed plan a START-to-END path.
The displayed graph is composed from the top-ranked paths; the full
pre-prune graph is kept alongside for rare-ingredient reveals.
"""
from __future__ import annotations

import heapq
import json
import math
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

from .clustering import Clustering, ingredient_object_similarity
from .corpus import EmptyCorpus
from .parser import IngredientObject, Instruction, ParsedRecipe

START = -1
END = -2


class GraphError(Exception):
    pass


class Disconnected(GraphError):
    """Pruning left no START-to-END path."""


class OrphanInstruction(GraphError):
    """An instruction is missing from every cluster."""


class IngredientNotFound(GraphError):
    """No node in the full graph mentions the queried ingredient."""


class NoPathsLeft(UserWarning):
    """Every candidate path fell below the length bound; the unfiltered
    ranking was returned instead."""


@dataclass(frozen=True)
class PruneConfig:
    min_weight: int = 2
    k_paths: int = 60
    display_paths: int = 20
    trim_fraction: float = 0.10

    def __post_init__(self):
        if self.display_paths > self.k_paths:
            raise ValueError("display_paths must not exceed k_paths")
        if not 0 <= self.trim_fraction < 1:
            raise ValueError("trim_fraction must be in [0, 1)")


@dataclass(frozen=True)
class IngredientSummary:
    name: str
    freq: float  # fraction of member instructions mentioning it
    qty_min: Fraction | None = None
    qty_max: Fraction | None = None
    unit: str | None = None


@dataclass(frozen=True)
class NodeSummary:
    verb: str
    ingredients: tuple[IngredientSummary, ...]
    tools: tuple[tuple[str, int], ...]
    time_range: tuple[float, float] | None
    samples: tuple[str, ...]


@dataclass(frozen=True)
class Node:
    id: int
    weight: int
    summary: NodeSummary


@dataclass
class SummaryGraph:
    dish: str
    nodes: dict[int, Node]
    edges: dict[tuple[int, int], int]
    paths: list[list[int]] = field(default_factory=list)
    rare: list[tuple[str, int]] = field(default_factory=list)
    min_len: int = 0
    warning: str | None = None
    hidden: "SummaryGraph | None" = None
    start: int = START
    end: int = END

    def out_edges(self, node: int) -> list[tuple[int, int]]:
        return [(dst, w) for (src, dst), w in self.edges.items() if src == node]


MAX_SAMPLES = 10


def summarize_node(
    members: list[tuple[ParsedRecipe, Instruction]],
    canonical_verb: str,
    reference_servings: int,
) -> NodeSummary:
    """Aggregate a cluster into what the user sees on a node.

    Ingredient frequency is the fraction of member instructions that
    mention the ingredient; quantity ranges are normalized to the
    reference servings and reported for the ingredient's most common
    unit.
    """
    n = len(members)
    mention_count: dict[str, int] = {}
    quantities: dict[str, dict[str | None, list[Fraction]]] = {}
    tool_count: dict[str, int] = {}
    time_spans = []
    samples = []

    for recipe, instr in sorted(members, key=lambda m: (m[0].id, m[1].position)):
        linked = [recipe.ingredients[i] for i in sorted(instr.ingredients)]
        seen_names = set()
        for ing in linked:
            if ing.full_name not in seen_names:
                seen_names.add(ing.full_name)
                mention_count[ing.full_name] = mention_count.get(ing.full_name, 0) + 1
            if ing.quantity is not None:
                scale = (
                    Fraction(reference_servings, recipe.servings)
                    if recipe.servings
                    else Fraction(1)
                )
                by_unit = quantities.setdefault(ing.full_name, {})
                by_unit.setdefault(ing.unit, []).append(ing.quantity * scale)
        for tool in instr.tools:
            tool_count[tool] = tool_count.get(tool, 0) + 1
        if instr.time_range is not None:
            time_spans.append(instr.time_range)
        if len(samples) < MAX_SAMPLES:
            samples.append(instr.raw_text)

    ingredients = []
    for name, count in mention_count.items():
        qty_min = qty_max = unit = None
        by_unit = quantities.get(name)
        if by_unit:
            # most common unit wins; unitless sorts last on ties
            unit = max(
                by_unit,
                key=lambda u: (len(by_unit[u]), u is not None, "" if u is None else u),
            )
            values = by_unit[unit]
            qty_min, qty_max = min(values), max(values)
        ingredients.append(
            IngredientSummary(
                name=name,
                freq=count / n,
                qty_min=qty_min,
                qty_max=qty_max,
                unit=unit,
            )
        )
    ingredients.sort(key=lambda s: (-s.freq, s.name))

    time_range = None
    if time_spans:
        time_range = (min(s[0] for s in time_spans), max(s[1] for s in time_spans))

    tools = tuple(sorted(tool_count.items(), key=lambda t: (-t[1], t[0])))
    return NodeSummary(
        verb=canonical_verb,
        ingredients=tuple(ingredients),
        tools=tools,
        time_range=time_range,
        samples=tuple(samples),
    )


def build_graph(
    parsed: list[ParsedRecipe],
    clustering: Clustering,
    dish: str,
    reference_servings: int,
) -> SummaryGraph:
    """Unpruned summary graph: one node per cluster, adjacency edges.

    Node weight is the cluster size. An inner edge counts the recipes in
    which the two clusters hold consecutive instructions; START/END edges
    count the recipes starting/ending in a cluster. Self-loops are
    recorded here and dropped during pruning.
    """
    recipes_by_id = {r.id: r for r in parsed}
    instr_by_key = {
        (r.id, ins.position): ins for r in parsed for ins in r.instructions
    }
    cluster_of = clustering.cluster_of()

    nodes: dict[int, Node] = {}
    for ci, member_ids in enumerate(clustering.clusters):
        members = []
        for idx in member_ids:
            item = clustering.items[idx]
            members.append(
                (recipes_by_id[item.recipe_id], instr_by_key[(item.recipe_id, item.position)])
            )
        verb = clustering.items[member_ids[0]].canonical_verb
        nodes[ci] = Node(
            id=ci,
            weight=len(member_ids),
            summary=summarize_node(members, verb, reference_servings),
        )

    edge_recipes: dict[tuple[int, int], set[str]] = {}
    for recipe in parsed:
        seq = []
        for instr in recipe.instructions:
            key = (recipe.id, instr.position)
            if key not in cluster_of:
                raise OrphanInstruction(f"instruction {key} is in no cluster")
            seq.append(cluster_of[key])
        edge_recipes.setdefault((START, seq[0]), set()).add(recipe.id)
        edge_recipes.setdefault((seq[-1], END), set()).add(recipe.id)
        for a, b in zip(seq, seq[1:]):
            edge_recipes.setdefault((a, b), set()).add(recipe.id)

    edges = {pair: len(recs) for pair, recs in edge_recipes.items()}
    return SummaryGraph(dish=dish, nodes=nodes, edges=edges)


def prune_graph(g: SummaryGraph, config: PruneConfig) -> SummaryGraph:
    """Visualization pruning, in order: drop light nodes and edges, keep
    the heavier of a bidirectional pair (ties drop both), drop
    self-loops, then keep only elements on a START-to-END path."""
    nodes = {i: n for i, n in g.nodes.items() if n.weight > config.min_weight}
    edges = {
        (s, d): w
        for (s, d), w in g.edges.items()
        if w > config.min_weight
        and (s in nodes or s == START)
        and (d in nodes or d == END)
    }

    for (s, d) in list(edges):
        if s == d or (s, d) not in edges:
            continue
        w_fwd, w_rev = edges.get((s, d)), edges.get((d, s))
        if w_rev is None:
            continue
        if w_fwd == w_rev:
            del edges[(s, d)]
            del edges[(d, s)]
        elif w_fwd < w_rev:
            del edges[(s, d)]
        else:
            del edges[(d, s)]

    edges = {(s, d): w for (s, d), w in edges.items() if s != d}

    forward = _reachable(edges, START, forward=True)
    backward = _reachable(edges, END, forward=False)
    keep = forward & backward
    if START not in keep or END not in keep:
        raise Disconnected("no START-to-END path survives pruning")
    nodes = {i: n for i, n in nodes.items() if i in keep}
    edges = {
        (s, d): w for (s, d), w in edges.items() if s in keep and d in keep
    }
    return SummaryGraph(dish=g.dish, nodes=nodes, edges=edges)


def _reachable(
    edges: dict[tuple[int, int], int], origin: int, forward: bool
) -> set[int]:
    adjacency: dict[int, list[int]] = {}
    for (s, d) in edges:
        a, b = (s, d) if forward else (d, s)
        adjacency.setdefault(a, []).append(b)
    seen = {origin}
    stack = [origin]
    while stack:
        for nxt in adjacency.get(stack.pop(), ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def min_length_bound(parsed: list[ParsedRecipe], trim_fraction: float) -> int:
    """Minimal instruction count after trimming the smallest tail."""
    counts = sorted(len(r.instructions) for r in parsed)
    if not counts:
        raise EmptyCorpus("no recipes")
    drop = math.floor(trim_fraction * len(counts))
    return counts[drop]


# --- K shortest loopless paths -------------------------------------------------


def _dijkstra(
    adjacency: dict[int, list[tuple[int, Fraction]]],
    source: int,
    target: int,
    banned_nodes: set[int] = frozenset(),
    banned_edges: set[tuple[int, int]] = frozenset(),
) -> tuple[Fraction, tuple[int, ...]] | None:
    """Cheapest path; exact costs, ties break on the node sequence."""
    heap: list[tuple[Fraction, tuple[int, ...]]] = [(Fraction(0), (source,))]
    done: set[int] = set()
    while heap:
        cost, path = heapq.heappop(heap)
        node = path[-1]
        if node == target:
            return cost, path
        if node in done:
            continue
        done.add(node)
        for nxt, w in adjacency.get(node, ()):
            if nxt in done or nxt in banned_nodes or (node, nxt) in banned_edges:
                continue
            heapq.heappush(heap, (cost + w, path + (nxt,)))
    return None


def k_shortest_paths(
    edges: dict[tuple[int, int], Fraction],
    source: int,
    target: int,
    k: int,
) -> list[tuple[Fraction, tuple[int, ...]]]:
    """Yen's algorithm for loopless paths with exact rational costs.

    Ties at the k-th cost are collected in full, then the result is
    sorted by (cost, node sequence) and truncated, which makes the
    output identical to exhaustive enumeration of all simple paths.
    """
    adjacency: dict[int, list[tuple[int, Fraction]]] = {}
    for (s, d), w in edges.items():
        adjacency.setdefault(s, []).append((d, w))
    for lst in adjacency.values():
        lst.sort()

    first = _dijkstra(adjacency, source, target)
    if first is None:
        return []
    found: list[tuple[Fraction, tuple[int, ...]]] = [first]
    candidates: list[tuple[Fraction, tuple[int, ...]]] = []
    pooled: set[tuple[int, ...]] = {first[1]}

    while True:
        _, prev = found[-1]
        for i in range(len(prev) - 1):
            root = prev[: i + 1]
            root_cost = sum(
                (edges[(root[j], root[j + 1])] for j in range(i)), Fraction(0)
            )
            banned_edges = {
                (p[i], p[i + 1])
                for _, p in found
                if len(p) > i + 1 and p[: i + 1] == root
            }
            banned_nodes = set(root[:-1])
            spur = _dijkstra(adjacency, root[-1], target, banned_nodes, banned_edges)
            if spur is None:
                continue
            total = root[:-1] + spur[1]
            if total in pooled:
                continue
            pooled.add(total)
            heapq.heappush(candidates, (root_cost + spur[0], total))
        if not candidates:
            break
        if len(found) >= k:
            kth = sorted(c for c, _ in found)[k - 1]
            if candidates[0][0] > kth:
                break
        found.append(heapq.heappop(candidates))

    found.sort()
    return found[:k]


def select_paths(
    g: SummaryGraph, config: PruneConfig, min_len: int
) -> tuple[list[list[int]], str | None]:
    """Top display paths: K shortest under inverted weights, length
    filter, then rerank by average inverted weight.

    When the length filter rejects everything, the unfiltered ranking is
    returned and a NoPathsLeft warning is emitted; the second return
    value carries the warning text.
    """
    inverted = {pair: Fraction(1, w) for pair, w in g.edges.items()}
    ranked = k_shortest_paths(inverted, START, END, config.k_paths)
    if not ranked:
        raise Disconnected("no START-to-END path")

    def rerank(paths: list[tuple[Fraction, tuple[int, ...]]]) -> list[list[int]]:
        scored = [(cost / (len(p) - 1), p) for cost, p in paths]
        scored.sort()
        return [list(p) for _, p in scored[: config.display_paths]]

    kept = [(c, p) for c, p in ranked if len(p) - 2 >= min_len]
    if kept:
        return rerank(kept), None
    message = (
        f"all {len(ranked)} candidate paths have fewer than {min_len} "
        "instruction nodes; returning the unfiltered ranking"
    )
    warnings.warn(message, NoPathsLeft)
    return rerank(ranked), message


def compose_display(
    pruned: SummaryGraph,
    paths: list[list[int]],
    rare: list[tuple[str, int]],
    min_len: int,
    warning: str | None,
    hidden: SummaryGraph,
) -> SummaryGraph:
    """The user-facing graph is exactly the union of the chosen paths."""
    node_ids = set()
    edge_pairs = set()
    for path in paths:
        node_ids.update(n for n in path if n not in (START, END))
        edge_pairs.update(zip(path, path[1:]))
    return SummaryGraph(
        dish=pruned.dish,
        nodes={i: pruned.nodes[i] for i in sorted(node_ids)},
        edges={pair: pruned.edges[pair] for pair in sorted(edge_pairs)},
        paths=paths,
        rare=rare,
        min_len=min_len,
        warning=warning,
        hidden=hidden,
    )


def rare_ingredients(freqs, limit: int | None = None) -> list[tuple[str, int]]:
    """Least common ingredients first; ties alphabetical."""
    ordered = sorted(freqs.items(), key=lambda kv: (kv[1], kv[0]))
    return ordered if limit is None else ordered[:limit]


def summarize_graph(
    parsed: list[ParsedRecipe],
    clustering: Clustering,
    dish: str,
    reference_servings: int,
    freqs,
    config: PruneConfig = PruneConfig(),
) -> SummaryGraph:
    """Full flow: build, prune, select paths, compose the display graph
    with the pre-prune graph attached for reveals."""
    hidden = build_graph(parsed, clustering, dish, reference_servings)
    pruned = prune_graph(hidden, config)
    min_len = min_length_bound(parsed, config.trim_fraction)
    paths, warning = select_paths(pruned, config, min_len)
    # the full ascending table, so consumers can slice any rarity prefix
    rare = rare_ingredients(freqs)
    return compose_display(pruned, paths, rare, min_len, warning, hidden)


# --- ingredient reveal ----------------------------------------------------------


def _ingredient_matches(query: str, summary: NodeSummary, t1: float) -> bool:
    probe = IngredientObject(full_name=query, abbreviation=query, raw_line=query)
    for ing in summary.ingredients:
        target = IngredientObject(
            full_name=ing.name, abbreviation=ing.name, raw_line=ing.name
        )
        if ingredient_object_similarity(probe, target) >= t1:
            return True
    return False


def paths_with_ingredient(
    g: SummaryGraph,
    ingredient: str,
    config: PruneConfig = PruneConfig(),
    t1: float = 0.35,
) -> list[tuple[list[int], bool]]:
    """Paths through nodes mentioning the ingredient, displayed first.

    Displayed paths that already contain a matching node come first in
    display order; then hidden-graph paths (reranked like select_paths)
    through matching nodes, flagged as hidden additions. At least one
    path through a matching node is always returned.
    """
    if g.hidden is None:
        raise GraphError("graph was built without its hidden counterpart")
    hidden = g.hidden
    query = ingredient.strip().lower()

    matching = {
        i for i, node in hidden.nodes.items()
        if _ingredient_matches(query, node.summary, t1)
    }
    if not matching:
        raise IngredientNotFound(f"no node mentions {ingredient!r}")

    results: list[tuple[list[int], bool]] = []
    seen: set[tuple[int, ...]] = set()
    for path in g.paths:
        if matching & set(path):
            results.append((path, False))
            seen.add(tuple(path))

    inverted = {
        pair: Fraction(1, w) for pair, w in hidden.edges.items() if pair[0] != pair[1]
    }
    ranked = k_shortest_paths(inverted, START, END, config.k_paths)
    kept = [
        (c, p) for c, p in ranked
        if matching & set(p) and len(p) - 2 >= g.min_len
    ]
    if not kept:
        kept = [(c, p) for c, p in ranked if matching & set(p)]
    scored = sorted((cost / (len(p) - 1), p) for cost, p in kept)
    for _, p in scored:
        if tuple(p) not in seen:
            results.append((list(p), True))
            seen.add(tuple(p))
        if len(results) >= config.display_paths:
            break

    if not any(matching & set(p) for p, _ in results):
        forced = _force_path_through(inverted, matching)
        if forced is not None:
            results.insert(0, (forced, True))
    return results[: config.display_paths] if results else results


def _force_path_through(
    inverted: dict[tuple[int, int], Fraction], matching: set[int]
) -> list[int] | None:
    """Cheapest simple START-to-END path through a matching node."""
    adjacency: dict[int, list[tuple[int, Fraction]]] = {}
    for (s, d), w in inverted.items():
        adjacency.setdefault(s, []).append((d, w))
    for lst in adjacency.values():
        lst.sort()

    best = None
    for node in sorted(matching):
        head = _dijkstra(adjacency, START, node)
        if head is None:
            continue
        tail = _dijkstra(
            adjacency, node, END, banned_nodes=set(head[1][:-1])
        )
        if tail is None:
            continue
        cost = head[0] + tail[0]
        path = head[1][:-1] + tail[1]
        if best is None or (cost, path) < best:
            best = (cost, path)
    return None if best is None else list(best[1])


# --- (de)serialization -----------------------------------------------------------


def _qty_out(q: Fraction | None) -> float | None:
    return None if q is None else float(q)


def node_to_json(node: Node) -> dict:
    return {
        "id": node.id,
        "weight": node.weight,
        "verb": node.summary.verb,
        "ingredients": [
            {
                "name": s.name,
                "freq": s.freq,
                "qty_min": _qty_out(s.qty_min),
                "qty_max": _qty_out(s.qty_max),
                "unit": s.unit,
            }
            for s in node.summary.ingredients
        ],
        "tools": [
            {"name": name, "count": count} for name, count in node.summary.tools
        ],
        "time_min_s": None if node.summary.time_range is None else node.summary.time_range[0],
        "time_max_s": None if node.summary.time_range is None else node.summary.time_range[1],
        "samples": list(node.summary.samples),
    }


def graph_to_json(g: SummaryGraph) -> dict:
    payload = {
        "dish": g.dish,
        "start": g.start,
        "end": g.end,
        "min_len": g.min_len,
        "nodes": [
            node_to_json(node)
            for node in sorted(g.nodes.values(), key=lambda n: n.id)
        ],
        "edges": [
            {"src": s, "dst": d, "weight": w}
            for (s, d), w in sorted(g.edges.items())
        ],
        "paths": [list(p) for p in g.paths],
        "rare_ingredients": [{"name": n, "count": c} for n, c in g.rare],
    }
    if g.warning:
        payload["warning"] = g.warning
    return payload


def graph_from_json(payload: dict) -> SummaryGraph:
    nodes = {}
    for entry in payload["nodes"]:
        ingredients = tuple(
            IngredientSummary(
                name=i["name"],
                freq=i["freq"],
                qty_min=None if i["qty_min"] is None else Fraction(i["qty_min"]).limit_denominator(10**6),
                qty_max=None if i["qty_max"] is None else Fraction(i["qty_max"]).limit_denominator(10**6),
                unit=i["unit"],
            )
            for i in entry["ingredients"]
        )
        summary = NodeSummary(
            verb=entry["verb"],
            ingredients=ingredients,
            tools=tuple((t["name"], t["count"]) for t in entry["tools"]),
            time_range=None
            if entry["time_min_s"] is None
            else (entry["time_min_s"], entry["time_max_s"]),
            samples=tuple(entry["samples"]),
        )
        nodes[entry["id"]] = Node(id=entry["id"], weight=entry["weight"], summary=summary)
    return SummaryGraph(
        dish=payload["dish"],
        nodes=nodes,
        edges={(e["src"], e["dst"]): e["weight"] for e in payload["edges"]},
        paths=[list(p) for p in payload.get("paths", [])],
        rare=[(r["name"], r["count"]) for r in payload.get("rare_ingredients", [])],
        min_len=payload.get("min_len", 0),
        warning=payload.get("warning"),
    )


def write_graph(g: SummaryGraph, path: str | Path, hidden_path: str | Path | None = None) -> None:
    Path(path).write_text(
        json.dumps(graph_to_json(g), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    if hidden_path is not None and g.hidden is not None:
        hidden = replace(g.hidden, rare=g.rare, min_len=g.min_len)
        Path(hidden_path).write_text(
            json.dumps(graph_to_json(hidden), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )


def read_graph(path: str | Path, hidden_path: str | Path | None = None) -> SummaryGraph:
    g = graph_from_json(json.loads(Path(path).read_text(encoding="utf-8")))
    if hidden_path is not None:
        g.hidden = graph_from_json(
            json.loads(Path(hidden_path).read_text(encoding="utf-8"))
        )
    return g
