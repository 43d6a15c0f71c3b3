"""Grouping of semantically equivalent instructions.

Two instructions are mergeable candidates when they share a canonical verb
and their ingredient sets agree under a frequency-weighted Jaccard score.
Candidates get a real distance (cosine distance of the instruction
embeddings); everything else is infinitely far apart. Complete-linkage
agglomerative clustering then merges until only infinite linkages remain.
"""
from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .corpus import IngredientFrequencyTable
from .embeddings import Word2Vec, cosine_distance
from .parser import IngredientObject, Instruction, Lexicons, ParsedRecipe


def canonicalize_verb(verb: str, lexicons: Lexicons) -> str:
    return lexicons.verb_clusters.get(verb, verb)


def _word_jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a and not b:
        return 1.0
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def ingredient_object_similarity(a: IngredientObject, b: IngredientObject) -> float:
    """Best word-set Jaccard across full-name/abbreviation combinations."""
    fa = frozenset(a.full_name.split())
    aa = frozenset(a.abbreviation.split())
    fb = frozenset(b.full_name.split())
    ab = frozenset(b.abbreviation.split())
    return max(
        _word_jaccard(fa, fb),
        _word_jaccard(fa, ab),
        _word_jaccard(aa, fb),
        _word_jaccard(aa, ab),
    )


def weighted_jaccard(
    set1: tuple[IngredientObject, ...],
    set2: tuple[IngredientObject, ...],
    freqs: IngredientFrequencyTable,
    t1: float = 0.35,
) -> float:
    """Frequency-weighted Jaccard over two ingredient sets.

    Similar ingredients (object similarity >= t1) are matched greedily,
    best pair first; a matched pair contributes min/max of the two
    frequencies, an unmatched ingredient its full frequency to the
    denominator. Two empty sets score 1.0; one empty set scores 0.0.
    """
    if not set1 and not set2:
        return 1.0
    if not set1 or not set2:
        return 0.0

    candidates = []
    for i, a in enumerate(set1):
        for j, b in enumerate(set2):
            sim = ingredient_object_similarity(a, b)
            if sim >= t1:
                na = freqs[a.full_name]
                nb = freqs[b.full_name]
                # deterministic and symmetric: similarity, then frequency,
                # then lexicographic on the name pair
                key = (
                    -sim,
                    -max(na, nb),
                    -min(na, nb),
                    tuple(sorted((a.full_name, b.full_name))),
                )
                candidates.append((key, i, j, na, nb))
    candidates.sort(key=lambda c: c[0])

    used1: set[int] = set()
    used2: set[int] = set()
    numerator = 0
    denominator = 0
    for _, i, j, na, nb in candidates:
        if i in used1 or j in used2:
            continue
        used1.add(i)
        used2.add(j)
        numerator += min(na, nb)
        denominator += max(na, nb)
    for i, a in enumerate(set1):
        if i not in used1:
            denominator += freqs[a.full_name]
    for j, b in enumerate(set2):
        if j not in used2:
            denominator += freqs[b.full_name]
    return numerator / denominator if denominator else 0.0


@dataclass(frozen=True)
class Item:
    """One instruction in the flattened corpus-wide list."""

    recipe_id: str
    position: int
    canonical_verb: str
    ingredients: tuple[IngredientObject, ...]
    tokens: tuple[str, ...]


def flatten_instructions(
    parsed: list[ParsedRecipe], lexicons: Lexicons
) -> list[Item]:
    """Corpus-wide instruction list in (recipe, position) order."""
    items = []
    for recipe in parsed:
        for instr in recipe.instructions:
            items.append(
                Item(
                    recipe_id=recipe.id,
                    position=instr.position,
                    canonical_verb=canonicalize_verb(instr.main_verb, lexicons),
                    ingredients=tuple(
                        recipe.ingredients[i] for i in sorted(instr.ingredients)
                    ),
                    tokens=tuple(lexicons.lemmas(instr.raw_text)),
                )
            )
    return items


def candidate_pair(
    a: Item,
    b: Item,
    freqs: IngredientFrequencyTable,
    t1: float = 0.35,
    t2: float = 0.325,
) -> bool:
    """Same canonical verb, and similar (or both absent) ingredient sets."""
    if a.canonical_verb != b.canonical_verb:
        return False
    if not a.ingredients and not b.ingredients:
        return True
    return weighted_jaccard(a.ingredients, b.ingredients, freqs, t1) > t2


def build_distance_matrix(
    items: list[Item],
    model: Word2Vec,
    freqs: IngredientFrequencyTable,
    t1: float = 0.35,
    t2: float = 0.325,
) -> dict[tuple[int, int], float]:
    """Sparse distances for candidate pairs only, keyed (i, j) with i < j.

    Only instructions sharing a canonical verb are compared, so the
    quadratic work happens within verb groups.
    """
    groups: dict[str, list[int]] = {}
    for idx, item in enumerate(items):
        groups.setdefault(item.canonical_verb, []).append(idx)

    vectors = [model.embed_tokens(list(item.tokens)) for item in items]

    distances: dict[tuple[int, int], float] = {}
    for members in groups.values():
        for a_pos in range(len(members)):
            i = members[a_pos]
            for b_pos in range(a_pos + 1, len(members)):
                j = members[b_pos]
                if candidate_pair(items[i], items[j], freqs, t1, t2):
                    distances[(i, j)] = cosine_distance(vectors[i], vectors[j])
    return distances


def hierarchical_cluster(
    n_items: int, distances: dict[tuple[int, int], float]
) -> list[list[int]]:
    """Complete-linkage agglomerative clustering over a sparse matrix.

    Non-candidate pairs are infinitely distant and never merge. Merging
    continues until every remaining linkage is infinite. Ties break on
    the pair of smallest member ids, so the result is deterministic.

    Returns clusters as sorted member lists, ordered by smallest member.
    """
    # cluster key = min member id; complete linkage via max updates
    members: dict[int, list[int]] = {i: [i] for i in range(n_items)}
    link: dict[int, dict[int, float]] = {i: {} for i in range(n_items)}
    for (i, j), d in distances.items():
        if math.isfinite(d):
            link[i][j] = d
            link[j][i] = d

    heap: list[tuple[float, int, int]] = [
        (d, *sorted((i, j))) for (i, j), d in distances.items() if math.isfinite(d)
    ]
    heapq.heapify(heap)

    while heap:
        d, lo, hi = heapq.heappop(heap)
        if lo not in members or hi not in members:
            continue  # stale: one side was merged away
        current = link[lo].get(hi)
        if current is None or current != d:
            continue  # stale: linkage grew since this entry was pushed

        # merge hi into lo (lo is the smaller key and stays the cluster id)
        members[lo].extend(members.pop(hi))
        link[lo].pop(hi)
        link[hi].pop(lo)
        neighbors = set(link[lo]) | set(link[hi])
        for k in neighbors:
            da = link[lo].get(k, math.inf)
            db = link[hi].get(k, math.inf)
            merged = max(da, db)  # complete linkage over sparse = inf
            link[k].pop(hi, None)
            if math.isfinite(merged):
                link[lo][k] = merged
                link[k][lo] = merged
                heapq.heappush(heap, (merged, *sorted((lo, k))))
            else:
                link[lo].pop(k, None)
                link[k].pop(lo, None)
        del link[hi]

    clusters = [sorted(m) for m in members.values()]
    clusters.sort(key=lambda c: c[0])
    return clusters


@dataclass(frozen=True)
class Clustering:
    items: tuple[Item, ...]
    clusters: tuple[tuple[int, ...], ...]
    t1: float
    t2: float

    def cluster_of(self) -> dict[tuple[str, int], int]:
        """(recipe_id, position) -> cluster index."""
        out = {}
        for ci, cluster in enumerate(self.clusters):
            for idx in cluster:
                item = self.items[idx]
                out[(item.recipe_id, item.position)] = ci
        return out


def cluster_corpus(
    parsed: list[ParsedRecipe],
    model: Word2Vec,
    freqs: IngredientFrequencyTable,
    lexicons: Lexicons,
    t1: float = 0.35,
    t2: float = 0.325,
) -> Clustering:
    items = flatten_instructions(parsed, lexicons)
    distances = build_distance_matrix(items, model, freqs, t1, t2)
    clusters = hierarchical_cluster(len(items), distances)
    return Clustering(
        items=tuple(items),
        clusters=tuple(tuple(c) for c in clusters),
        t1=t1,
        t2=t2,
    )


def write_clusters(clustering: Clustering, path: str | Path) -> None:
    payload = {
        "t1": clustering.t1,
        "t2": clustering.t2,
        "items": [
            {"recipe_id": it.recipe_id, "position": it.position}
            for it in clustering.items
        ],
        "clusters": [list(c) for c in clustering.clusters],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def read_clusters(path: str | Path, parsed: list[ParsedRecipe], lexicons: Lexicons) -> Clustering:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    items = flatten_instructions(parsed, lexicons)
    index = {(it.recipe_id, it.position): k for k, it in enumerate(items)}
    for k, entry in enumerate(payload["items"]):
        if index.get((entry["recipe_id"], entry["position"])) != k:
            raise ValueError("clusters file does not match the parsed corpus")
    return Clustering(
        items=tuple(items),
        clusters=tuple(tuple(c) for c in payload["clusters"]),
        t1=payload["t1"],
        t2=payload["t2"],
    )
