"""End-to-end CLI runs: stage by stage, one-shot pipeline, and reporting."""
from __future__ import annotations

import csv
import json

import pytest

from procmap.cli import main
from procmap.corpus import load_corpus
from procmap.graph import read_graph

from conftest import FIXTURE_CORPUS

MINI_FLAGS = ["--min-count", "2", "--bigram-min-count", "3", "--epochs", "4"]


@pytest.fixture(scope="module")
def staged(tmp_path_factory):
    """Run parse/embed/cluster/graph as separate invocations."""
    out = tmp_path_factory.mktemp("staged")
    corpus = str(FIXTURE_CORPUS)
    parsed = str(out / "parsed.json")
    model = str(out / "model.bin")
    clusters = str(out / "clusters.json")
    graph = str(out / "graph.json")
    assert main(["parse", corpus, "-o", parsed]) == 0
    assert main(["embed", parsed, "-o", model] + MINI_FLAGS) == 0
    assert main(["cluster", parsed, "--model", model, "-o", clusters]) == 0
    assert main(["graph", parsed, clusters, "-o", graph]) == 0
    return out


@pytest.fixture(scope="module")
def piped(tmp_path_factory):
    """Run the same settings through the one-shot pipeline command."""
    out = tmp_path_factory.mktemp("piped")
    assert main(["pipeline", str(FIXTURE_CORPUS), "-o", str(out)] + MINI_FLAGS) == 0
    return out


def test_stats_prints_json(capsys):
    assert main(["stats", str(FIXTURE_CORPUS)]) == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats["recipes"] == 36
    assert stats["vocabulary_size"] > 0


def test_stage_outputs_exist(staged):
    for name in ("parsed.json", "model.bin", "clusters.json", "graph.json", "graph.hidden.json"):
        assert (staged / name).exists(), name


def test_staged_equals_pipeline(staged, piped):
    assert (staged / "graph.json").read_bytes() == (piped / "graph.json").read_bytes()
    assert (
        staged / "graph.hidden.json"
    ).read_bytes() == (piped / "graph.hidden.json").read_bytes()


def test_pipeline_reruns_byte_identical(piped, tmp_path):
    again = tmp_path / "again"
    assert main(["pipeline", str(FIXTURE_CORPUS), "-o", str(again)] + MINI_FLAGS) == 0
    assert (again / "graph.json").read_bytes() == (piped / "graph.json").read_bytes()


def test_graph_output_loads(staged):
    g = read_graph(staged / "graph.json", staged / "graph.hidden.json")
    assert g.dish == "apple cake"
    assert g.nodes and g.paths
    assert g.hidden is not None


def test_report_writes_figures_and_tables(piped, tmp_path, capsys):
    report = tmp_path / "report"
    assert main(["report", str(piped / "graph.json"), "-o", str(report)]) == 0
    listed = capsys.readouterr().out.splitlines()
    expected = {
        "nodes.csv",
        "edges.csv",
        "paths.csv",
        "rare_ingredients.csv",
        "graph.png",
        "rare_ingredients.png",
    }
    assert {p.split("/")[-1] for p in listed} == expected
    for name in expected:
        assert (report / name).stat().st_size > 0
    with (report / "edges.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    g = read_graph(piped / "graph.json")
    assert len(rows) == len(g.edges)
    assert all(int(r["weight"]) > 0 for r in rows)


def test_synth_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["synth", "-o", str(a), "-n", "8", "--seed", "3"]) == 0
    assert main(["synth", "-o", str(b), "-n", "8", "--seed", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()
    corpus = load_corpus(a)
    assert len(corpus) == 8
    assert corpus.dish == "apple cake"
    capsys.readouterr()


def test_synth_seed_changes_output(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["synth", "-o", str(a), "-n", "8", "--seed", "3"]) == 0
    assert main(["synth", "-o", str(b), "-n", "8", "--seed", "4"]) == 0
    assert a.read_bytes() != b.read_bytes()


def test_missing_corpus_is_reported(tmp_path, capsys):
    assert main(["stats", str(tmp_path / "nope.json")]) == 1
    assert "procmap: error:" in capsys.readouterr().err


def test_version_flag():
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0


def test_embed_accepts_extra_corpus(tmp_path, capsys):
    extra = tmp_path / "extra.json"
    assert main(["synth", "-o", str(extra), "-n", "6", "--seed", "9"]) == 0
    parsed = tmp_path / "parsed.json"
    assert main(["parse", str(FIXTURE_CORPUS), "-o", str(parsed)]) == 0
    model = tmp_path / "model.bin"
    rc = main(
        ["embed", str(parsed), "-o", str(model), "--extra-corpus", str(extra)]
        + MINI_FLAGS
    )
    assert rc == 0
    assert model.stat().st_size > 0
    capsys.readouterr()
