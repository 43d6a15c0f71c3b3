"""Unsupervised recipe parser.

Turns raw recipes into structured ingredient objects and instructions:
quantities/units, ingredient abbreviations ("apple" for "Granny Smith
apples") and generalizations ("spice" for "ground cinnamon"), instruction
splitting, main verbs, tools and time ranges.

All ingredient/abbreviation matching happens over lemmatized word
sequences, so the same lemmatizer must be used end to end.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path

# Words never treated as nouns by the abbreviation/generalization noun test.
STOPWORDS = frozenset(
    """a an the and or but nor so then than of in on at to into onto from with
    without for by until till over under about around each every all any some
    no not very more most less least few much many this that these those it its
    is are was were be been being as if when while where after before during
    again once together well just only also out up down off back remaining
    rest other another same both half large small medium big little how what
    your you they them their his her he she we us our i me my do does did
    done can could should would may might must will own""".split()
)

_VOWELS = "aeiouy"

# Unicode vulgar fractions -> exact rationals.
_UNICODE_FRACTIONS = {
    "¼": Fraction(1, 4), "½": Fraction(1, 2), "¾": Fraction(3, 4),
    "⅐": Fraction(1, 7), "⅑": Fraction(1, 9), "⅒": Fraction(1, 10),
    "⅓": Fraction(1, 3), "⅔": Fraction(2, 3),
    "⅕": Fraction(1, 5), "⅖": Fraction(2, 5), "⅗": Fraction(3, 5), "⅘": Fraction(4, 5),
    "⅙": Fraction(1, 6), "⅚": Fraction(5, 6),
    "⅛": Fraction(1, 8), "⅜": Fraction(3, 8), "⅝": Fraction(5, 8), "⅞": Fraction(7, 8),
}

_WORD_RE = re.compile(r"[a-z0-9]+(?:'[a-z]+)?")


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens; punctuation dropped, numbers kept."""
    return _WORD_RE.findall(text.lower())


def _has_vowel(s: str) -> bool:
    return any(c in _VOWELS for c in s)


def _vowel_groups(s: str) -> int:
    return len(re.findall(r"[aeiouy]+", s))


def _restore_stem(stem: str, known: frozenset[str]) -> str:
    # A known word wins outright ("simmer", "grill"); otherwise try
    # undoubling ("chopp" -> "chop") and e-restoration ("combin" ->
    # "combine") against the word list before falling back to heuristics.
    if stem in known:
        return stem
    doubled = (
        len(stem) >= 4 and stem[-1] == stem[-2] and stem[-1] not in _VOWELS
    )
    if doubled and stem[:-1] in known:
        return stem[:-1]
    if stem + "e" in known:
        return stem + "e"
    if doubled and stem[-1] not in "ls":
        return stem[:-1]
    if (
        len(stem) >= 3
        and stem[-1] not in _VOWELS + "wx"
        and stem[-2] in "aeiou"
        and stem[-3] not in "aeiou"
        and _vowel_groups(stem) == 1
    ):
        return stem + "e"
    return stem


def lemmatize(
    word: str,
    exceptions: dict[str, str] | None = None,
    known: frozenset[str] = frozenset(),
) -> str:
    """Rule-based lemma: exception table first, then suffix stripping.

    Handles plural -s/-es/-ies, -ing and -ed. Stem repair after -ed/-ing
    prefers words from `known` (the lexicon vocabulary). Falls back to
    the word itself, so the result is never empty.
    """
    w = word.lower()
    if exceptions and w in exceptions:
        return exceptions[w]
    if len(w) > 4 and w.endswith("ies"):
        return w[:-3] + "y"
    if len(w) > 4 and w.endswith("sses"):
        return w[:-2]
    if len(w) > 4 and w.endswith(("ches", "shes", "xes", "zzes")):
        return w[:-2]
    if len(w) > 3 and w.endswith("s") and not w.endswith(("ss", "us", "is")):
        return w[:-1]
    if len(w) > 4 and w.endswith("ied"):
        return w[:-3] + "y"
    if len(w) >= 6 and w.endswith("ing") and _has_vowel(w[:-3]) and w not in known:
        return _restore_stem(w[:-3], known)
    if len(w) >= 4 and w.endswith("ed") and _has_vowel(w[:-2]) and w not in known:
        return _restore_stem(w[:-2], known)
    return w


@dataclass(frozen=True)
class Lexicons:
    """Immutable bundle of the parser's lexicon files."""

    cooking_verbs: frozenset[str]
    verb_clusters: dict[str, str]
    units: dict[str, str]  # alias -> canonical
    tools: tuple[str, ...]
    hypernyms: dict[str, frozenset[str]]
    lemma_exceptions: dict[str, str]
    vocabulary: frozenset[str] = frozenset()  # known lemmas for stem repair

    def lemmatize(self, word: str) -> str:
        return lemmatize(word, self.lemma_exceptions, self.vocabulary)

    def lemmas(self, text: str) -> list[str]:
        return [self.lemmatize(t) for t in tokenize(text)]

    def is_cooking_verb(self, token: str) -> bool:
        return self.lemmatize(token) in self.cooking_verbs


def _read_lines(path: Path) -> list[str]:
    lines = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    return lines


def default_lexicon_dir() -> Path:
    return Path(str(resources.files("procmap") / "lexicons"))


def load_lexicons(directory: str | Path | None = None) -> Lexicons:
    """Load lexicon files from `directory` (bundled defaults when None)."""
    base = Path(directory) if directory is not None else default_lexicon_dir()

    verbs = frozenset(_read_lines(base / "verbs.txt"))

    clusters: dict[str, str] = {}
    for line in _read_lines(base / "verb_clusters.tsv"):
        member, rep = line.split("\t")
        clusters[member] = rep
    for rep in set(clusters.values()):
        if clusters.get(rep, rep) != rep:
            raise ValueError(f"verb cluster representative {rep!r} is not a fixed point")
        clusters.setdefault(rep, rep)

    units: dict[str, str] = {}
    for line in _read_lines(base / "units.tsv"):
        canonical, aliases = line.split("\t")
        for alias in aliases.split(","):
            units[alias.strip().lower()] = canonical

    tools = tuple(_read_lines(base / "tools.txt"))

    hypernyms: dict[str, set[str]] = {}
    for line in _read_lines(base / "hypernyms.tsv"):
        noun, hyps = line.split("\t")
        hypernyms[noun] = {h.strip() for h in hyps.split(",") if h.strip()}
    # close transitively in case a file lists only direct parents
    changed = True
    while changed:
        changed = False
        for noun, hyps in hypernyms.items():
            extra = set()
            for h in hyps:
                extra |= hypernyms.get(h, set())
            if not extra <= hyps:
                hyps |= extra
                changed = True

    exceptions: dict[str, str] = {}
    for line in _read_lines(base / "lemma_exceptions.tsv"):
        word, lemma = line.split("\t")
        exceptions[word] = lemma

    vocabulary = set(verbs)
    vocabulary.update(hypernyms)
    for hyps in hypernyms.values():
        vocabulary.update(hyps)
    vocabulary.update(units.values())
    for tool in tools:
        vocabulary.update(tool.split())

    return Lexicons(
        cooking_verbs=verbs,
        verb_clusters=clusters,
        units=units,
        tools=tools,
        hypernyms={k: frozenset(v) for k, v in hypernyms.items()},
        lemma_exceptions=exceptions,
        vocabulary=frozenset(vocabulary),
    )


@dataclass(frozen=True)
class IngredientObject:
    full_name: str
    abbreviation: str
    raw_line: str
    quantity: Fraction | None = None
    unit: str | None = None
    generalization: str | None = None


@dataclass(frozen=True)
class Instruction:
    recipe_id: str
    position: int
    raw_text: str
    main_verb: str
    ingredients: frozenset[int]  # indices into ParsedRecipe.ingredients
    tools: frozenset[str]
    time_range: tuple[float, float] | None = None


@dataclass(frozen=True)
class ParsedRecipe:
    id: str
    dish: str
    servings: int | None
    ingredients: tuple[IngredientObject, ...]
    instructions: tuple[Instruction, ...]


# --- quantities -------------------------------------------------------------

_QTY_RE = re.compile(
    r"^\s*(?:"
    r"(?P<whole>\d+)\s+(?P<num>\d+)\s*/\s*(?P<den>\d+)"  # 1 1/2
    r"|(?P<num2>\d+)\s*/\s*(?P<den2>\d+)"                # 1/2
    r"|(?P<int3>\d+)?\s*(?P<uni>[" + "".join(_UNICODE_FRACTIONS) + r"])"  # 1½ or ½
    r"|(?P<dec>\d+\.\d+)"
    r"|(?P<int>\d+)"
    r")"
)


def parse_quantity(text: str) -> tuple[Fraction | None, str]:
    """Parse a leading quantity; returns (quantity, remainder-of-text)."""
    m = _QTY_RE.match(text)
    if not m:
        return None, text
    try:
        if m.group("whole"):
            qty = Fraction(int(m.group("whole"))) + Fraction(
                int(m.group("num")), int(m.group("den"))
            )
        elif m.group("num2"):
            qty = Fraction(int(m.group("num2")), int(m.group("den2")))
        elif m.group("uni"):
            qty = _UNICODE_FRACTIONS[m.group("uni")]
            if m.group("int3"):
                qty += int(m.group("int3"))
        elif m.group("dec"):
            qty = Fraction(m.group("dec"))
        else:
            qty = Fraction(int(m.group("int")))
    except ZeroDivisionError:
        return None, text
    if qty <= 0:
        return None, text
    return qty, text[m.end():]


_PAREN_RE = re.compile(r"\([^)]*\)")


def parse_ingredient_line(line: str, lexicons: Lexicons) -> IngredientObject:
    """Extract quantity, unit and lemmatized full name from one line.

    Parenthetical notes are stripped; text after the first comma is
    treated as preparation notes. Unparseable quantity/unit simply stay
    absent, with the whole line as the name.
    """
    text = _PAREN_RE.sub(" ", line)
    qty, rest = parse_quantity(text)

    unit = None
    if qty is not None:
        # longest alias first, matched at a word boundary
        rest_lower = rest.lstrip().lower()
        stripped = rest.lstrip()
        for alias in sorted(lexicons.units, key=len, reverse=True):
            if rest_lower.startswith(alias) and (
                len(rest_lower) == len(alias) or not rest_lower[len(alias)].isalnum()
            ):
                unit = lexicons.units[alias]
                rest = stripped[len(alias):]
                break

    name_part = rest.split(",", 1)[0]
    words = [w for w in lexicons.lemmas(name_part) if not w.isdigit()]
    if not words:
        words = [w for w in lexicons.lemmas(line) if not w.isdigit()]
    full_name = " ".join(words) if words else line.strip().lower()

    return IngredientObject(
        full_name=full_name,
        abbreviation=full_name,
        raw_line=line,
        quantity=qty,
        unit=unit,
    )


# --- abbreviation & generalization ------------------------------------------


def _is_nounish(word: str, lexicons: Lexicons) -> bool:
    # Approximation standing in for a POS tagger.
    return (
        word not in STOPWORDS
        and word not in lexicons.cooking_verbs
        and not word.endswith("ly")
        and not word.isdigit()
    )


def _shared_runs(name_words: list[str], text_words: list[str]):
    """Maximal runs of consecutive words shared by name and text.

    Yields (length, text_pos, name_pos) for every maximal match.
    """
    for j in range(len(text_words)):
        for i in range(len(name_words)):
            if name_words[i] != text_words[j]:
                continue
            if i > 0 and j > 0 and name_words[i - 1] == text_words[j - 1]:
                continue  # not maximal: covered by an earlier start
            k = 0
            while (
                i + k < len(name_words)
                and j + k < len(text_words)
                and name_words[i + k] == text_words[j + k]
            ):
                k += 1
            yield k, j, i


def _best_run(
    name_words: list[str], text_words: list[str], lexicons: Lexicons
) -> list[str] | None:
    best = None
    best_key = None
    for length, j, i in _shared_runs(name_words, text_words):
        seq = name_words[i : i + length]
        ends_noun = _is_nounish(seq[-1], lexicons)
        # longest first; ties prefer a sequence ending with a noun, then
        # the earliest occurrence in the text
        key = (-length, not ends_noun, j, i)
        if best_key is None or key < best_key:
            best_key = key
            best = seq
    return best


def derive_abbreviation(
    ingredient: IngredientObject, instruction_text: str, lexicons: Lexicons
) -> str | None:
    """Longest run of consecutive words shared by the name and the text."""
    name_words = ingredient.full_name.split()
    text_words = lexicons.lemmas(instruction_text)
    seq = _best_run(name_words, text_words, lexicons)
    return " ".join(seq) if seq else None


def _remove_sequences(words: list[str], sequences: set[tuple[str, ...]]) -> list[str]:
    out = []
    i = 0
    ordered = sorted(sequences, key=len, reverse=True)
    while i < len(words):
        for seq in ordered:
            if tuple(words[i : i + len(seq)]) == seq:
                i += len(seq)
                break
        else:
            out.append(words[i])
            i += 1
    return out


def derive_generalization(
    missing: IngredientObject,
    instruction_text: str,
    found_abbrevs: set[str],
    lexicons: Lexicons,
) -> str | None:
    """A hypernym of the missing ingredient mentioned in the text.

    Already-found abbreviations are removed first; a candidate noun must
    sit under food/fruit and be a (transitive) hypernym of the missing
    ingredient's head noun.
    """
    text_words = lexicons.lemmas(instruction_text)
    sequences = {tuple(a.split()) for a in found_abbrevs if a}
    remaining = _remove_sequences(text_words, sequences)

    head = missing.full_name.split()[-1]
    head_hyps = lexicons.hypernyms.get(head, frozenset())
    for word in remaining:
        if not _is_nounish(word, lexicons):
            continue
        word_hyps = lexicons.hypernyms.get(word)
        if not word_hyps or not ({"food", "fruit"} & word_hyps):
            continue
        if word in head_hyps:
            return word
    return None


# --- instruction splitting ---------------------------------------------------

_SENTENCE_SPLIT_RE = re.compile(r"(?<=[.;])\s+(?=[A-Z0-9])")
_ALPHA_RE = re.compile(r"[A-Za-z]+")


def _split_clauses(sentence: str, lexicons: Lexicons) -> list[str]:
    words = list(_ALPHA_RE.finditer(sentence))
    fragments: list[str] = []
    frag_start = 0
    commas: list[int] = []  # pending ", and" insertions, sentence offsets

    def flush(end: int, next_start: int | None):
        nonlocal frag_start
        text = sentence[frag_start:end].rstrip(" \t,;")
        offset = frag_start
        for pos in sorted(commas, reverse=True):
            rel = pos - offset
            if 0 <= rel <= len(text):
                text = text[:rel] + "," + text[rel:]
        commas.clear()
        if text.strip():
            fragments.append(text.strip())
        if next_start is not None:
            frag_start = next_start

    k = 0
    while k < len(words):
        w = words[k]
        token = w.group().lower()
        if token in ("and", "then") and w.start() > frag_start:
            m = k + 1
            if token == "and" and m < len(words) and words[m].group().lower() == "then":
                m += 1
            next_start_idx = m
            # allow a single adverbial before the verb ("and slowly cook")
            if (
                m < len(words)
                and words[m].group().lower().endswith("ly")
                and not lexicons.is_cooking_verb(words[m].group())
            ):
                m += 1
            if m < len(words) and lexicons.is_cooking_verb(words[m].group()):
                flush(w.start(), words[next_start_idx].start())
                k = m + 1
                continue
            if token == "and":
                # close an enumeration with a comma: "a, b and c" ->
                # "a, b, and c", but only when the stretch since the last
                # comma is short and verb-free (a real list item)
                segment = sentence[frag_start : w.start()]
                before = segment.rstrip()
                last_comma = segment.rfind(",")
                if last_comma >= 0 and before and not before.endswith(","):
                    between = _WORD_RE.findall(segment[last_comma + 1 :].lower())
                    if (
                        1 <= len(between) <= 4
                        and not any(
                            lexicons.lemmatize(t) in lexicons.cooking_verbs
                            for t in between
                        )
                    ):
                        commas.append(frag_start + len(before))
        k += 1
    flush(len(sentence), None)
    return fragments


def split_instruction_line(line: str, lexicons: Lexicons) -> list[str]:
    """Split a raw instruction line into simple single-action fragments.

    Sentences are split on ./; followed by a capital or digit, then on
    and/then conjunctions whose following clause starts with a cooking
    verb. A comma is inserted before an unsplit "and" that closes an
    enumeration, which is the only way fragment text deviates from the
    source characters.
    """
    fragments = []
    for sentence in _SENTENCE_SPLIT_RE.split(line):
        if sentence.strip():
            fragments.extend(_split_clauses(sentence, lexicons))
    return fragments


# --- per-fragment extraction --------------------------------------------------


def extract_main_verb(instruction_text: str, lexicons: Lexicons) -> str:
    """Imperative heuristic: first token if it is a cooking verb, else the
    first cooking verb anywhere, else the first token's lemma."""
    tokens = tokenize(instruction_text)
    if not tokens:
        return ""
    lemmas = [lexicons.lemmatize(t) for t in tokens]
    if lemmas[0] in lexicons.cooking_verbs:
        return lemmas[0]
    for lemma in lemmas[1:]:
        if lemma in lexicons.cooking_verbs:
            return lemma
    return lemmas[0]


_TOOL_PATTERN = re.compile(
    r"\b(?:in|into|with|using|on)\s+(?:a|an|the)\s+((?:[a-z]+\s+){0,2}[a-z]+)",
    re.IGNORECASE,
)


def extract_tools(instruction_text: str, lexicons: Lexicons) -> frozenset[str]:
    lemmas = lexicons.lemmas(instruction_text)
    found = set()
    entries = [tuple(t.split()) for t in lexicons.tools]
    entries.sort(key=len, reverse=True)
    for i in range(len(lemmas)):
        for entry in entries:
            if tuple(lemmas[i : i + len(entry)]) == entry:
                # an imperative leading verb is not a tool mention
                # ("Whisk the flour" vs "stir with a whisk")
                if i == 0 and len(entry) == 1 and entry[0] in lexicons.cooking_verbs:
                    break
                found.add(" ".join(entry))
                break
    # "in/with a <tool>" phrases; the head noun must still be a known tool
    for m in _TOOL_PATTERN.finditer(instruction_text):
        phrase = lexicons.lemmas(m.group(1))
        for entry in entries:
            if len(entry) <= len(phrase) and tuple(phrase[-len(entry):]) == entry:
                found.add(" ".join(entry))
                break
    return frozenset(found)


_TIME_UNIT_SECONDS = {
    "second": 1, "seconds": 1, "sec": 1, "secs": 1,
    "minute": 60, "minutes": 60, "min": 60, "mins": 60,
    "hour": 3600, "hours": 3600, "hr": 3600, "hrs": 3600,
}

_NUM = r"\d+(?:\.\d+)?(?:\s+\d+/\d+)?|\d+/\d+"
_TIME_RE = re.compile(
    rf"(?P<a>{_NUM})\s*(?:(?:-|–|\bto\b)\s*(?P<b>{_NUM})\s*)?"
    rf"(?P<unit>{'|'.join(sorted(_TIME_UNIT_SECONDS, key=len, reverse=True))})\b",
    re.IGNORECASE,
)


def _num_value(text: str) -> float:
    qty, rest = parse_quantity(text)
    return float(qty) if qty is not None else 0.0


def extract_time_range(instruction_text: str) -> tuple[float, float] | None:
    """Duration span in seconds; several mentions widen to their envelope."""
    spans = []
    for m in _TIME_RE.finditer(instruction_text):
        unit = _TIME_UNIT_SECONDS[m.group("unit").lower()]
        lo = _num_value(m.group("a")) * unit
        hi = _num_value(m.group("b")) * unit if m.group("b") else lo
        if hi < lo:
            lo, hi = hi, lo
        spans.append((lo, hi))
    if not spans:
        return None
    lo = min(s[0] for s in spans)
    hi = max(s[1] for s in spans)
    return (lo, hi)


# --- whole-recipe parsing ------------------------------------------------------


def _contains_sequence(words: list[str], seq: tuple[str, ...]) -> bool:
    n = len(seq)
    return any(tuple(words[i : i + n]) == seq for i in range(len(words) - n + 1))


def parse_recipe(raw, lexicons: Lexicons) -> ParsedRecipe:
    """Parse one raw recipe into ingredient objects and instructions.

    Abbreviations are derived against each instruction fragment (falling
    back to the concatenated instruction text), generalizations against
    fragments with found abbreviations removed; linking searches within
    each fragment.
    """
    drafts = [parse_ingredient_line(line, lexicons) for line in raw.ingredient_lines]

    fragments: list[str] = []
    for line in raw.instruction_lines:
        fragments.extend(split_instruction_line(line, lexicons))
    fragment_lemmas = [lexicons.lemmas(f) for f in fragments]
    all_lemmas = [w for lem in fragment_lemmas for w in lem]

    # abbreviation: best shared run over any fragment, then concatenated text
    abbrevs: list[str | None] = []
    for draft in drafts:
        name_words = draft.full_name.split()
        best, best_key = None, None
        for fi, lemmas in enumerate(fragment_lemmas):
            for length, j, i in _shared_runs(name_words, lemmas):
                seq = name_words[i : i + length]
                key = (-length, not _is_nounish(seq[-1], lexicons), fi, j, i)
                if best_key is None or key < best_key:
                    best_key, best = key, seq
        if best is None:
            run = _best_run(name_words, all_lemmas, lexicons)
            best = run if run else None
        abbrevs.append(" ".join(best) if best else None)

    found_abbrevs = {a for a in abbrevs if a}

    ingredients = []
    for draft, abbrev in zip(drafts, abbrevs):
        if abbrev is not None:
            ingredients.append(replace(draft, abbreviation=abbrev))
            continue
        generalization = None
        for fragment in fragments:
            generalization = derive_generalization(
                draft, fragment, found_abbrevs, lexicons
            )
            if generalization:
                break
        ingredients.append(replace(draft, generalization=generalization))

    instructions = []
    for position, (fragment, lemmas) in enumerate(zip(fragments, fragment_lemmas)):
        linked = set()
        for idx, (ing, abbrev) in enumerate(zip(ingredients, abbrevs)):
            if abbrev and _contains_sequence(lemmas, tuple(abbrev.split())):
                linked.add(idx)
            elif ing.generalization and ing.generalization in lemmas:
                linked.add(idx)
        instructions.append(
            Instruction(
                recipe_id=raw.id,
                position=position,
                raw_text=fragment,
                main_verb=extract_main_verb(fragment, lexicons),
                ingredients=frozenset(linked),
                tools=extract_tools(fragment, lexicons),
                time_range=extract_time_range(fragment),
            )
        )

    return ParsedRecipe(
        id=raw.id,
        dish=raw.dish,
        servings=raw.servings,
        ingredients=tuple(ingredients),
        instructions=tuple(instructions),
    )


def parse_corpus(corpus, lexicons: Lexicons) -> list[ParsedRecipe]:
    return [parse_recipe(r, lexicons) for r in corpus.recipes]


# --- (de)serialization ----------------------------------------------------------


def _qty_str(q: Fraction | None) -> str | None:
    return None if q is None else str(q)


def parsed_to_json(parsed: list[ParsedRecipe], dish: str) -> dict:
    return {
        "dish": dish,
        "recipes": [
            {
                "id": r.id,
                "servings": r.servings,
                "ingredients": [
                    {
                        "full_name": ing.full_name,
                        "abbreviation": ing.abbreviation,
                        "generalization": ing.generalization,
                        "quantity": _qty_str(ing.quantity),
                        "unit": ing.unit,
                        "raw_line": ing.raw_line,
                    }
                    for ing in r.ingredients
                ],
                "instructions": [
                    {
                        "position": ins.position,
                        "raw_text": ins.raw_text,
                        "main_verb": ins.main_verb,
                        "ingredients": sorted(ins.ingredients),
                        "tools": sorted(ins.tools),
                        "time_min_s": None if ins.time_range is None else ins.time_range[0],
                        "time_max_s": None if ins.time_range is None else ins.time_range[1],
                    }
                    for ins in r.instructions
                ],
            }
            for r in parsed
        ],
    }


def parsed_from_json(payload: dict) -> tuple[list[ParsedRecipe], str]:
    dish = payload["dish"]
    recipes = []
    for r in payload["recipes"]:
        ingredients = tuple(
            IngredientObject(
                full_name=i["full_name"],
                abbreviation=i["abbreviation"],
                generalization=i.get("generalization"),
                quantity=None if i.get("quantity") is None else Fraction(i["quantity"]),
                unit=i.get("unit"),
                raw_line=i.get("raw_line", ""),
            )
            for i in r["ingredients"]
        )
        instructions = tuple(
            Instruction(
                recipe_id=r["id"],
                position=ins["position"],
                raw_text=ins["raw_text"],
                main_verb=ins["main_verb"],
                ingredients=frozenset(ins["ingredients"]),
                tools=frozenset(ins["tools"]),
                time_range=None
                if ins.get("time_min_s") is None
                else (ins["time_min_s"], ins["time_max_s"]),
            )
            for ins in r["instructions"]
        )
        recipes.append(
            ParsedRecipe(
                id=r["id"],
                dish=dish,
                servings=r.get("servings"),
                ingredients=ingredients,
                instructions=instructions,
            )
        )
    return recipes, dish


def write_parsed(parsed: list[ParsedRecipe], dish: str, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(parsed_to_json(parsed, dish), indent=2) + "\n", encoding="utf-8"
    )


def read_parsed(path: str | Path) -> tuple[list[ParsedRecipe], str]:
    return parsed_from_json(json.loads(Path(path).read_text(encoding="utf-8")))
