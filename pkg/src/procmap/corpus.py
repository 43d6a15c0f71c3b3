"""Corpus loading, validation and corpus-level frequency tables.

A corpus is a single JSON document holding every recipe for one dish:

    {"dish": str, "source_note": str,
     "recipes": [{"id": str, "servings": int?,
                  "ingredients": [str], "instructions": [str]}]}
"""
from __future__ import annotations

import json
import math
from collections import Counter
from fractions import Fraction
from dataclasses import dataclass, field
from pathlib import Path


class CorpusError(Exception):
    pass


class MalformedFile(CorpusError):
    pass


class DuplicateId(CorpusError):
    pass


class EmptyRecipe(CorpusError):
    pass


class EmptyCorpus(CorpusError):
    pass


@dataclass(frozen=True)
class RawRecipe:
    id: str
    dish: str
    ingredient_lines: tuple[str, ...]
    instruction_lines: tuple[str, ...]
    servings: int | None = None


@dataclass(frozen=True)
class Corpus:
    dish: str
    recipes: tuple[RawRecipe, ...]
    source_note: str = ""

    def __len__(self) -> int:
        return len(self.recipes)


def _require(payload: dict, key: str, kind: type, where: str):
    if key not in payload:
        raise MalformedFile(f"{where}: missing key {key!r}")
    value = payload[key]
    if not isinstance(value, kind):
        raise MalformedFile(f"{where}: key {key!r} must be {kind.__name__}")
    return value


def load_corpus(path: str | Path) -> Corpus:
    """Load and validate a corpus file, preserving recipe and line order."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise MalformedFile(f"cannot read {path}: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFile(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(payload, dict):
        raise MalformedFile(f"{path}: top level must be an object")

    dish = _require(payload, "dish", str, str(path))
    source_note = payload.get("source_note", "")
    if not isinstance(source_note, str):
        raise MalformedFile(f"{path}: source_note must be a string")
    raw_recipes = _require(payload, "recipes", list, str(path))

    recipes = []
    seen: set[str] = set()
    for i, entry in enumerate(raw_recipes):
        where = f"{path}: recipes[{i}]"
        if not isinstance(entry, dict):
            raise MalformedFile(f"{where}: must be an object")
        rid = _require(entry, "id", str, where)
        if not rid:
            raise MalformedFile(f"{where}: empty id")
        if rid in seen:
            raise DuplicateId(f"duplicate recipe id {rid!r}")
        seen.add(rid)
        servings = entry.get("servings")
        if servings is not None and (not isinstance(servings, int) or servings <= 0):
            raise MalformedFile(f"{where}: servings must be a positive integer")
        ingredients = _require(entry, "ingredients", list, where)
        instructions = _require(entry, "instructions", list, where)
        if not all(isinstance(s, str) for s in ingredients + instructions):
            raise MalformedFile(f"{where}: ingredient/instruction lines must be strings")
        if not ingredients or not instructions:
            raise EmptyRecipe(f"recipe {rid!r} has no ingredients or no instructions")
        recipes.append(
            RawRecipe(
                id=rid,
                dish=dish,
                servings=servings,
                ingredient_lines=tuple(ingredients),
                instruction_lines=tuple(instructions),
            )
        )
    return Corpus(dish=dish, recipes=tuple(recipes), source_note=source_note)


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    payload = {
        "dish": corpus.dish,
        "source_note": corpus.source_note,
        "recipes": [
            {
                "id": r.id,
                **({"servings": r.servings} if r.servings is not None else {}),
                "ingredients": list(r.ingredient_lines),
                "instructions": list(r.instruction_lines),
            }
            for r in corpus.recipes
        ],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _mean_std(values: list[int]) -> tuple[float, float]:
    # exact rational mean/variance, so recipe order cannot perturb ulps
    n = len(values)
    mean = Fraction(sum(values), n)
    var = sum((Fraction(v) - mean) ** 2 for v in values) / n
    return float(mean), math.sqrt(var)


def corpus_stats(corpus: Corpus) -> dict:
    """Per-recipe means and population standard deviations, plus vocabulary size.

    Word counts cover both ingredient and instruction lines, using the
    parser module's tokenizer.
    """
    from .parser import tokenize

    if not corpus.recipes:
        raise EmptyCorpus("corpus has no recipes")

    n_ingredients = [len(r.ingredient_lines) for r in corpus.recipes]
    n_lines = [len(r.instruction_lines) for r in corpus.recipes]
    vocabulary: set[str] = set()
    n_words = []
    for r in corpus.recipes:
        tokens = []
        for line in r.ingredient_lines + r.instruction_lines:
            tokens.extend(tokenize(line))
        n_words.append(len(tokens))
        vocabulary.update(tokens)

    avg_ing, std_ing = _mean_std(n_ingredients)
    avg_lines, std_lines = _mean_std(n_lines)
    avg_words, std_words = _mean_std(n_words)
    return {
        "recipes": len(corpus.recipes),
        "avg_ingredients": avg_ing,
        "std_ingredients": std_ing,
        "avg_instruction_lines": avg_lines,
        "std_instruction_lines": std_lines,
        "avg_words": avg_words,
        "std_words": std_words,
        "vocabulary_size": len(vocabulary),
    }


@dataclass(frozen=True)
class IngredientFrequencyTable:
    """Recipe counts per canonical ingredient key (n_x).

    An ingredient appearing twice in one recipe still counts once.
    Missing keys count as 1, so a never-seen ingredient has the weight
    of a unique one.
    """

    counts: dict[str, int] = field(default_factory=dict)

    def __getitem__(self, key: str) -> int:
        return self.counts.get(key, 1)

    def __contains__(self, key: str) -> bool:
        return key in self.counts

    def items(self):
        return self.counts.items()


def ingredient_frequencies(parsed) -> IngredientFrequencyTable:
    """Count, per lemmatized full ingredient name, the recipes that list it."""
    counter: Counter[str] = Counter()
    for recipe in parsed:
        counter.update({ing.full_name for ing in recipe.ingredients})
    return IngredientFrequencyTable(dict(counter))


def reference_servings(parsed) -> int:
    """Corpus-wide most frequent servings value (ties: smallest).

    Recipes without servings fall back to this value downstream, so they
    scale by 1.
    """
    counter: Counter[int] = Counter(
        r.servings for r in parsed if r.servings is not None
    )
    if not counter:
        return 1
    best = max(counter.items(), key=lambda kv: (kv[1], -kv[0]))
    return best[0]
