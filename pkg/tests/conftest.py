"""Shared fixtures: lexicons, the bundled mini corpus, and one pipeline
run over it that the graph, service, CLI and acceptance tests reuse."""
from __future__ import annotations

from pathlib import Path

import pytest

import procmap
from procmap.clustering import cluster_corpus
from procmap.corpus import ingredient_frequencies, load_corpus, reference_servings
from procmap.graph import PruneConfig, summarize_graph
from procmap.parser import load_lexicons, parse_corpus
from procmap.pipeline import EmbeddingConfig, PipelineConfig, train_model

FIXTURE_CORPUS = Path(procmap.__file__).parent / "fixtures" / "apple_cake_mini.json"

# the mini corpus is small, so lower the count floors or the vocabulary
# would be filtered away
MINI_EMBEDDING = EmbeddingConfig(min_count=2, bigram_min_count=3, seed=1)
MINI_PIPELINE = PipelineConfig(embedding=MINI_EMBEDDING)


@pytest.fixture(scope="session")
def lexicons():
    return load_lexicons()


@pytest.fixture(scope="session")
def mini_corpus():
    return load_corpus(FIXTURE_CORPUS)


@pytest.fixture(scope="session")
def parsed_mini(mini_corpus, lexicons):
    return parse_corpus(mini_corpus, lexicons)


@pytest.fixture(scope="session")
def freqs_mini(parsed_mini):
    return ingredient_frequencies(parsed_mini)


@pytest.fixture(scope="session")
def model_mini(parsed_mini, lexicons):
    return train_model(parsed_mini, lexicons, MINI_EMBEDDING)


@pytest.fixture(scope="session")
def clustering_mini(parsed_mini, model_mini, freqs_mini, lexicons):
    return cluster_corpus(parsed_mini, model_mini, freqs_mini, lexicons)


@pytest.fixture(scope="session")
def graph_mini(parsed_mini, clustering_mini, freqs_mini, mini_corpus):
    return summarize_graph(
        parsed_mini,
        clustering_mini,
        mini_corpus.dish,
        reference_servings(parsed_mini),
        freqs_mini,
        PruneConfig(),
    )
