"""Command line interface.

Subcommands mirror the pipeline stages (stats, parse, embed, cluster,
graph), plus serve, report, pipeline and synth.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .corpus import (
    CorpusError,
    corpus_stats,
    ingredient_frequencies,
    load_corpus,
    reference_servings,
    write_corpus,
)
from .clustering import cluster_corpus, read_clusters, write_clusters
from .embeddings import EmbeddingError, load_model, save_model, train_cbow
from .graph import (
    GraphError,
    PruneConfig,
    read_graph,
    summarize_graph,
    write_graph,
)
from .parser import load_lexicons, parse_corpus, read_parsed, write_parsed
from .pipeline import EmbeddingConfig, PipelineConfig, run_pipeline, training_sentences


def _add_embedding_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int, default=100, help="embedding dimension")
    p.add_argument("--window", type=int, default=5, help="context window size")
    p.add_argument("--epochs", type=int, default=15)
    p.add_argument("--negative", type=int, default=5, help="negative samples")
    p.add_argument("--min-count", type=int, default=5, help="vocabulary cutoff")
    p.add_argument("--bigram-min-count", type=int, default=5)
    p.add_argument("--bigram-threshold", type=float, default=10.0)
    p.add_argument("--lr", type=float, default=0.025, help="initial learning rate")
    p.add_argument("--seed", type=int, default=1)


def _embedding_config(args) -> EmbeddingConfig:
    return EmbeddingConfig(
        dim=args.dim,
        window=args.window,
        epochs=args.epochs,
        negative=args.negative,
        min_count=args.min_count,
        bigram_min_count=args.bigram_min_count,
        bigram_threshold=args.bigram_threshold,
        lr=args.lr,
        seed=args.seed,
    )


def _add_prune_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=60, help="shortest paths to enumerate")
    p.add_argument("--display", type=int, default=20, help="paths to display")
    p.add_argument("--min-weight", type=int, default=2, help="prune weight cutoff")
    p.add_argument("--trim", type=float, default=0.10, help="length-bound trim fraction")


def _prune_config(args) -> PruneConfig:
    return PruneConfig(
        min_weight=args.min_weight,
        k_paths=args.k,
        display_paths=args.display,
        trim_fraction=args.trim,
    )


def _hidden_path(graph_path: Path) -> Path:
    return graph_path.with_suffix(".hidden.json")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="procmap",
        description="Summarize many recipes for one dish into a weighted graph of execution plans.",
    )
    parser.add_argument("--version", action="version", version=f"procmap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="corpus-level statistics")
    p.add_argument("corpus", help="corpus.json")

    p = sub.add_parser("parse", help="parse a corpus into structured recipes")
    p.add_argument("corpus", help="corpus.json")
    p.add_argument("-o", "--output", required=True, help="parsed.json")
    p.add_argument("--lexicons", default=None, help="lexicon directory override")

    p = sub.add_parser("embed", help="train instruction embeddings")
    p.add_argument("parsed", nargs="+", help="parsed.json files")
    p.add_argument("-o", "--output", required=True, help="model.bin")
    p.add_argument(
        "--extra-corpus",
        action="append",
        default=[],
        help="extra raw corpus.json to pad the training text (repeatable)",
    )
    p.add_argument("--lexicons", default=None)
    _add_embedding_flags(p)

    p = sub.add_parser("cluster", help="cluster equivalent instructions")
    p.add_argument("parsed", help="parsed.json")
    p.add_argument("--model", required=True, help="model.bin")
    p.add_argument("-o", "--output", required=True, help="clusters.json")
    p.add_argument("--t1", type=float, default=0.35, help="ingredient similarity threshold")
    p.add_argument("--t2", type=float, default=0.325, help="ingredient set threshold")
    p.add_argument("--lexicons", default=None)

    p = sub.add_parser("graph", help="build, prune and serialize the summary graph")
    p.add_argument("parsed", help="parsed.json")
    p.add_argument("clusters", help="clusters.json")
    p.add_argument("-o", "--output", required=True, help="graph.json")
    p.add_argument("--lexicons", default=None)
    _add_prune_flags(p)

    p = sub.add_parser("serve", help="serve a graph over HTTP")
    p.add_argument("graph", help="graph.json")
    p.add_argument("--hidden", default=None, help="graph.hidden.json")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8750)
    p.add_argument("--static", default=None, help="built UI assets to serve at /")

    p = sub.add_parser("report", help="render figures and CSV tables for a graph")
    p.add_argument("graph", help="graph.json")
    p.add_argument("-o", "--output", required=True, help="output directory")

    p = sub.add_parser("pipeline", help="run every stage from a corpus")
    p.add_argument("corpus", help="corpus.json")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.add_argument("--lexicons", default=None)
    p.add_argument("--t1", type=float, default=0.35)
    p.add_argument("--t2", type=float, default=0.325)
    p.add_argument("--extra-corpus", action="append", default=[])
    _add_embedding_flags(p)
    _add_prune_flags(p)

    p = sub.add_parser("synth", help="generate a synthetic corpus")
    p.add_argument("-o", "--output", required=True, help="corpus.json")
    p.add_argument("-n", "--recipes", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--dish", default="apple cake")

    return parser


def _extra_sentences(paths: list[str], lexicons) -> list[list[str]]:
    sentences = []
    for path in paths:
        corpus = load_corpus(path)
        parsed = parse_corpus(corpus, lexicons)
        sentences.extend(training_sentences(parsed, lexicons))
    return sentences


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (CorpusError, EmbeddingError, GraphError, ValueError, OSError) as exc:
        print(f"procmap: error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "stats":
        stats = corpus_stats(load_corpus(args.corpus))
        print(json.dumps(stats, indent=2))
        return 0

    if args.command == "parse":
        lexicons = load_lexicons(args.lexicons)
        corpus = load_corpus(args.corpus)
        parsed = parse_corpus(corpus, lexicons)
        write_parsed(parsed, corpus.dish, args.output)
        n_instr = sum(len(r.instructions) for r in parsed)
        print(f"parsed {len(parsed)} recipes, {n_instr} instructions -> {args.output}")
        return 0

    if args.command == "embed":
        lexicons = load_lexicons(args.lexicons)
        sentences = []
        for path in args.parsed:
            parsed, _ = read_parsed(path)
            sentences.extend(training_sentences(parsed, lexicons))
        sentences.extend(_extra_sentences(args.extra_corpus, lexicons))
        cfg = _embedding_config(args)
        model = train_cbow(
            sentences,
            dim=cfg.dim,
            window=cfg.window,
            epochs=cfg.epochs,
            negative=cfg.negative,
            min_count=cfg.min_count,
            bigram_min_count=cfg.bigram_min_count,
            bigram_threshold=cfg.bigram_threshold,
            lr=cfg.lr,
            seed=cfg.seed,
        )
        save_model(model, args.output)
        print(
            f"trained {model.dim}-d vectors for {len(model.vocab)} tokens "
            f"({len(model.bigrams)} bigrams) -> {args.output}"
        )
        return 0

    if args.command == "cluster":
        lexicons = load_lexicons(args.lexicons)
        parsed, _ = read_parsed(args.parsed)
        model = load_model(args.model)
        freqs = ingredient_frequencies(parsed)
        clustering = cluster_corpus(parsed, model, freqs, lexicons, args.t1, args.t2)
        write_clusters(clustering, args.output)
        sizes = sorted((len(c) for c in clustering.clusters), reverse=True)
        print(
            f"{len(clustering.items)} instructions -> {len(clustering.clusters)} "
            f"clusters (largest {sizes[0] if sizes else 0}) -> {args.output}"
        )
        return 0

    if args.command == "graph":
        lexicons = load_lexicons(args.lexicons)
        parsed, dish = read_parsed(args.parsed)
        clustering = read_clusters(args.clusters, parsed, lexicons)
        freqs = ingredient_frequencies(parsed)
        graph = summarize_graph(
            parsed,
            clustering,
            dish=dish,
            reference_servings=reference_servings(parsed),
            freqs=freqs,
            config=_prune_config(args),
        )
        out = Path(args.output)
        write_graph(graph, out, _hidden_path(out))
        print(
            f"graph: {len(graph.nodes)} nodes, {len(graph.edges)} edges, "
            f"{len(graph.paths)} paths -> {out} (+ {_hidden_path(out).name})"
        )
        if graph.warning:
            print(f"warning: {graph.warning}", file=sys.stderr)
        return 0

    if args.command == "serve":
        from .service import run_server

        graph = read_graph(args.graph, args.hidden)
        run_server(graph, host=args.host, port=args.port, static_dir=args.static)
        return 0

    if args.command == "report":
        from .report import write_report

        graph = read_graph(args.graph)
        written = write_report(graph, args.output)
        for path in written:
            print(path)
        return 0

    if args.command == "pipeline":
        lexicons = load_lexicons(args.lexicons)
        corpus = load_corpus(args.corpus)
        config = PipelineConfig(
            t1=args.t1,
            t2=args.t2,
            embedding=_embedding_config(args),
            prune=_prune_config(args),
        )
        extra = _extra_sentences(args.extra_corpus, lexicons)
        graph, parsed, model, clustering = run_pipeline(
            corpus, lexicons, config, extra_sentences=extra or None
        )
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        write_parsed(parsed, corpus.dish, out / "parsed.json")
        save_model(model, out / "model.bin")
        write_clusters(clustering, out / "clusters.json")
        write_graph(graph, out / "graph.json", out / "graph.hidden.json")
        print(
            f"{len(parsed)} recipes -> {len(clustering.clusters)} clusters -> "
            f"{len(graph.nodes)} nodes, {len(graph.paths)} paths -> {out}/"
        )
        if graph.warning:
            print(f"warning: {graph.warning}", file=sys.stderr)
        return 0

    if args.command == "synth":
        from .synth import synth_corpus

        corpus = synth_corpus(args.recipes, seed=args.seed, dish=args.dish)
        write_corpus(corpus, args.output)
        print(f"wrote {len(corpus)} synthetic recipes -> {args.output}")
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
