"""End-to-end orchestration: corpus -> parsed -> model -> clusters -> graph."""
from __future__ import annotations

from dataclasses import dataclass, field

from .clustering import Clustering, cluster_corpus
from .corpus import Corpus, ingredient_frequencies, reference_servings
from .embeddings import Word2Vec, train_cbow
from .graph import PruneConfig, SummaryGraph, summarize_graph
from .parser import Lexicons, ParsedRecipe, load_lexicons, parse_corpus


@dataclass(frozen=True)
class EmbeddingConfig:
    dim: int = 100
    window: int = 5
    epochs: int = 15
    negative: int = 5
    min_count: int = 5
    bigram_min_count: int = 5
    bigram_threshold: float = 10.0
    lr: float = 0.025
    seed: int = 1


@dataclass(frozen=True)
class PipelineConfig:
    t1: float = 0.35
    t2: float = 0.325
    embedding: EmbeddingConfig = field(default_factory=EmbeddingConfig)
    prune: PruneConfig = field(default_factory=PruneConfig)


def training_sentences(
    parsed: list[ParsedRecipe], lexicons: Lexicons
) -> list[list[str]]:
    """One lemmatized sentence per instruction fragment."""
    return [
        list(lexicons.lemmas(ins.raw_text))
        for recipe in parsed
        for ins in recipe.instructions
    ]


def train_model(
    parsed: list[ParsedRecipe],
    lexicons: Lexicons,
    config: EmbeddingConfig = EmbeddingConfig(),
    extra_sentences: list[list[str]] | None = None,
) -> Word2Vec:
    sentences = training_sentences(parsed, lexicons)
    if extra_sentences:
        sentences = sentences + list(extra_sentences)
    return train_cbow(
        sentences,
        dim=config.dim,
        window=config.window,
        epochs=config.epochs,
        negative=config.negative,
        min_count=config.min_count,
        bigram_min_count=config.bigram_min_count,
        bigram_threshold=config.bigram_threshold,
        lr=config.lr,
        seed=config.seed,
    )


def run_pipeline(
    corpus: Corpus,
    lexicons: Lexicons | None = None,
    config: PipelineConfig = PipelineConfig(),
    extra_sentences: list[list[str]] | None = None,
) -> tuple[SummaryGraph, list[ParsedRecipe], Word2Vec, Clustering]:
    """Run every stage and return all intermediate artifacts."""
    lexicons = lexicons or load_lexicons()
    parsed = parse_corpus(corpus, lexicons)
    freqs = ingredient_frequencies(parsed)
    model = train_model(parsed, lexicons, config.embedding, extra_sentences)
    clustering = cluster_corpus(
        parsed, model, freqs, lexicons, t1=config.t1, t2=config.t2
    )
    graph = summarize_graph(
        parsed,
        clustering,
        dish=corpus.dish,
        reference_servings=reference_servings(parsed),
        freqs=freqs,
        config=config.prune,
    )
    return graph, parsed, model, clustering
