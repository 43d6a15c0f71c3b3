"""Similarity measures, candidate filtering, and hierarchical clustering."""
from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from procmap.clustering import (
    Item,
    build_distance_matrix,
    candidate_pair,
    canonicalize_verb,
    flatten_instructions,
    hierarchical_cluster,
    ingredient_object_similarity,
    weighted_jaccard,
)
from procmap.corpus import IngredientFrequencyTable
from procmap.embeddings import cosine_distance
from procmap.parser import IngredientObject


def ing(full_name, abbreviation=None):
    return IngredientObject(
        full_name=full_name,
        abbreviation=abbreviation or full_name,
        raw_line=full_name,
    )


WORKED_FREQS = IngredientFrequencyTable(
    {
        "apples": 180,
        "flour": 160,
        "sugar": 160,
        "cinnamon": 140,
        "baking powder": 90,
        "nutmeg": 35,
        "clove": 15,
        "allspice": 10,
    }
)

I1 = tuple(ing(n) for n in ("apples", "sugar", "cinnamon"))
I2 = tuple(ing(n) for n in ("apples", "sugar", "cinnamon", "allspice", "clove", "nutmeg"))
I3 = tuple(
    ing(n) for n in ("flour", "baking powder", "cinnamon", "clove", "allspice", "nutmeg")
)


# --- ingredient object similarity ------------------------------------------------


def test_similarity_abbreviation_bridges_names():
    a = ing("grand smith apple", "apple")
    b = ing("red apple", "apple")
    assert ingredient_object_similarity(a, b) == 1.0


def test_similarity_identical():
    assert ingredient_object_similarity(ing("sugar"), ing("sugar")) == 1.0


def test_similarity_partial_overlap():
    # a known approximation: distinct things with half their words shared
    assert ingredient_object_similarity(ing("bread crumbs"), ing("bread")) == 0.5


def test_similarity_disjoint():
    assert ingredient_object_similarity(ing("flour"), ing("butter")) == 0.0


def test_similarity_symmetric():
    pairs = [
        (ing("grand smith apple", "apple"), ing("red apple", "apple")),
        (ing("bread crumbs"), ing("bread")),
        (ing("ground cinnamon", "cinnamon"), ing("cinnamon stick")),
    ]
    for a, b in pairs:
        assert ingredient_object_similarity(a, b) == ingredient_object_similarity(b, a)


# --- weighted Jaccard --------------------------------------------------------------


def test_weighted_jaccard_worked_values():
    assert weighted_jaccard(I1, I2, WORKED_FREQS) == pytest.approx(480 / 540, abs=1e-12)
    assert weighted_jaccard(I2, I3, WORKED_FREQS) == pytest.approx(200 / 790, abs=1e-12)


def test_weighted_jaccard_rounds_to_published_decimals():
    assert round(weighted_jaccard(I1, I2, WORKED_FREQS), 2) == 0.89
    assert round(weighted_jaccard(I2, I3, WORKED_FREQS), 2) == 0.25


def test_weighted_jaccard_identical_sets():
    assert weighted_jaccard(I1, I1, WORKED_FREQS) == 1.0
    assert weighted_jaccard((), (), WORKED_FREQS) == 1.0


def test_weighted_jaccard_one_empty():
    assert weighted_jaccard(I1, (), WORKED_FREQS) == 0.0
    assert weighted_jaccard((), I1, WORKED_FREQS) == 0.0


def test_weighted_jaccard_disjoint_sets():
    left = (ing("flour"),)
    right = (ing("butter"),)
    assert weighted_jaccard(left, right, WORKED_FREQS) == 0.0


NAMES = ["apples", "flour", "sugar", "cinnamon", "baking powder", "nutmeg", "clove"]


@st.composite
def ingredient_sets(draw):
    names = draw(st.lists(st.sampled_from(NAMES), max_size=5, unique=True))
    return tuple(ing(n) for n in names)


@given(ingredient_sets(), ingredient_sets())
def test_weighted_jaccard_symmetric_and_bounded(set1, set2):
    forward = weighted_jaccard(set1, set2, WORKED_FREQS)
    backward = weighted_jaccard(set2, set1, WORKED_FREQS)
    assert forward == pytest.approx(backward, abs=1e-12)
    assert 0.0 <= forward <= 1.0


@given(ingredient_sets())
def test_weighted_jaccard_identity(set1):
    assert weighted_jaccard(set1, set1, WORKED_FREQS) == 1.0


# --- verbs and candidate pairs -------------------------------------------------------


def test_canonicalize_cluster_member(lexicons):
    assert canonicalize_verb("cream", lexicons) == "beat"
    assert canonicalize_verb("whip", lexicons) == "beat"
    assert canonicalize_verb("toss", lexicons) == "mix"


def test_canonicalize_fixed_point(lexicons):
    assert canonicalize_verb("beat", lexicons) == "beat"


def test_canonicalize_unknown_verb(lexicons):
    assert canonicalize_verb("spiralize", lexicons) == "spiralize"


def item(verb, ingredients, rid="r1", pos=0, lexicons=None):
    canonical = canonicalize_verb(verb, lexicons) if lexicons else verb
    return Item(
        recipe_id=rid,
        position=pos,
        canonical_verb=canonical,
        ingredients=tuple(ingredients),
        tokens=(verb,),
    )


def test_candidate_same_verb_high_overlap(lexicons):
    a = item("toss", I1, lexicons=lexicons)
    b = item("mix", I2, lexicons=lexicons)
    assert candidate_pair(a, b, WORKED_FREQS, 0.35, 0.325)


def test_candidate_same_verb_low_overlap(lexicons):
    a = item("mix", I2, lexicons=lexicons)
    b = item("mix", I3, lexicons=lexicons)
    assert not candidate_pair(a, b, WORKED_FREQS, 0.35, 0.325)


def test_candidate_different_verbs(lexicons):
    a = item("bake", I1, lexicons=lexicons)
    b = item("beat", I1, lexicons=lexicons)
    assert not candidate_pair(a, b, WORKED_FREQS, 0.35, 0.325)


def test_candidate_both_ingredientless(lexicons):
    a = item("preheat", (), lexicons=lexicons)
    b = item("preheat", (), lexicons=lexicons)
    assert candidate_pair(a, b, WORKED_FREQS, 0.35, 0.325)


def test_candidate_one_ingredientless(lexicons):
    a = item("mix", (), lexicons=lexicons)
    b = item("mix", I1, lexicons=lexicons)
    assert not candidate_pair(a, b, WORKED_FREQS, 0.35, 0.325)


def test_candidate_symmetric_and_reflexive(lexicons):
    items = [
        item("toss", I1, lexicons=lexicons),
        item("mix", I2, lexicons=lexicons),
        item("mix", I3, lexicons=lexicons),
        item("preheat", (), lexicons=lexicons),
    ]
    for a in items:
        assert candidate_pair(a, a, WORKED_FREQS, 0.35, 0.325)
        for b in items:
            assert candidate_pair(a, b, WORKED_FREQS, 0.35, 0.325) == candidate_pair(
                b, a, WORKED_FREQS, 0.35, 0.325
            )


# --- distance matrix ------------------------------------------------------------------


def test_distance_matrix_matches_bruteforce(parsed_mini, model_mini, freqs_mini, lexicons):
    items = flatten_instructions(parsed_mini, lexicons)[:12]
    matrix = build_distance_matrix(items, model_mini, freqs_mini, 0.35, 0.325)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            expected_candidate = candidate_pair(
                items[i], items[j], freqs_mini, 0.35, 0.325
            )
            if expected_candidate:
                expected = cosine_distance(
                    model_mini.embed_tokens(list(items[i].tokens)),
                    model_mini.embed_tokens(list(items[j].tokens)),
                )
                assert matrix[(i, j)] == pytest.approx(expected)
            else:
                assert (i, j) not in matrix


def test_distance_matrix_identical_instructions(parsed_mini, model_mini, freqs_mini, lexicons):
    items = flatten_instructions(parsed_mini, lexicons)
    twin = [items[0], items[0]]
    matrix = build_distance_matrix(twin, model_mini, freqs_mini, 0.35, 0.325)
    assert matrix[(0, 1)] == pytest.approx(0.0, abs=1e-6)


# --- hierarchical clustering -----------------------------------------------------------


def reference_complete_linkage(n, distances):
    """Exhaustive-agenda complete linkage: scan all cluster pairs each
    round, merge the closest, stop when only infinite linkages remain.
    Cluster ids are min member ids; ties break on (distance, id pair)."""
    clusters = {i: frozenset([i]) for i in range(n)}

    def linkage(a, b):
        worst = 0.0
        for x in clusters[a]:
            for y in clusters[b]:
                key = (min(x, y), max(x, y))
                if key not in distances:
                    return None
                worst = max(worst, distances[key])
        return worst

    while True:
        best = None
        ids = sorted(clusters)
        for i, a in enumerate(ids):
            for b in ids[i + 1 :]:
                d = linkage(a, b)
                if d is None:
                    continue
                if best is None or (d, a, b) < best:
                    best = (d, a, b)
        if best is None:
            break
        _, a, b = best
        clusters[a] = clusters[a] | clusters[b]
        del clusters[b]
    return sorted(sorted(members) for members in clusters.values())


def random_distances(rng, n):
    """Sparse symmetric matrix on a coarse grid, so ties are common."""
    distances = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                distances[(i, j)] = rng.choice([0.1, 0.2, 0.3, 0.4, 0.5])
    return distances


def test_cluster_all_infinite_gives_singletons():
    assert hierarchical_cluster(3, {}) == [[0], [1], [2]]


def test_cluster_single_finite_pair_merges():
    assert hierarchical_cluster(2, {(0, 1): 0.1}) == [[0, 1]]


def test_cluster_chain_respects_complete_linkage():
    # 0-1 close, 1-2 close, but 0-2 unrelated: complete linkage cannot
    # put all three together
    distances = {(0, 1): 0.1, (1, 2): 0.2}
    assert hierarchical_cluster(3, distances) == [[0, 1], [2]]


def test_cluster_matches_reference_implementation():
    rng = random.Random(42)
    for _ in range(100):
        n = rng.randint(2, 12)
        distances = random_distances(rng, n)
        assert hierarchical_cluster(n, distances) == reference_complete_linkage(
            n, distances
        ), (n, distances)


def test_corpus_clustering_is_a_partition(clustering_mini):
    seen = [idx for cluster in clustering_mini.clusters for idx in cluster]
    assert sorted(seen) == list(range(len(clustering_mini.items)))


def test_corpus_clusters_share_canonical_verb(clustering_mini):
    for cluster in clustering_mini.clusters:
        verbs = {clustering_mini.items[i].canonical_verb for i in cluster}
        assert len(verbs) == 1


def test_corpus_clusters_pairwise_finite(
    clustering_mini, parsed_mini, model_mini, freqs_mini, lexicons
):
    items = flatten_instructions(parsed_mini, lexicons)
    matrix = build_distance_matrix(
        items, model_mini, freqs_mini, clustering_mini.t1, clustering_mini.t2
    )
    for cluster in clustering_mini.clusters:
        for a in cluster:
            for b in cluster:
                if a < b:
                    assert (a, b) in matrix
