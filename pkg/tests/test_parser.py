"""Parser: worked examples for every operation, plus corpus-wide invariants."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from procmap.corpus import RawRecipe
from procmap.parser import (
    derive_abbreviation,
    derive_generalization,
    extract_main_verb,
    extract_time_range,
    extract_tools,
    parse_corpus,
    parse_ingredient_line,
    parse_quantity,
    parse_recipe,
    parsed_to_json,
    split_instruction_line,
    tokenize,
)

GOLDEN_R001 = Path(__file__).parent / "data" / "r001_parsed.json"


# --- lemmatization -----------------------------------------------------------


def test_lemmatize_plurals(lexicons):
    assert lexicons.lemmatize("apples") == "apple"
    assert lexicons.lemmatize("slices") == "slice"
    assert lexicons.lemmatize("dishes") == "dish"
    assert lexicons.lemmatize("boxes") == "box"


def test_lemmatize_exception_table(lexicons):
    # irregular plural, resolved by the exception file
    assert lexicons.lemmatize("leaves") == "leaf"
    assert lexicons.lemmatize("knives") == "knife"
    assert lexicons.lemmatize("tomatoes") == "tomato"


def test_lemmatize_verb_inflections(lexicons):
    assert lexicons.lemmatize("mixed") == "mix"
    assert lexicons.lemmatize("stirring") == "stir"
    assert lexicons.lemmatize("bakes") == "bake"
    assert lexicons.lemmatize("combined") == "combine"
    assert lexicons.lemmatize("glazes") == "glaze"


def test_lemmatize_keeps_ing_nouns(lexicons):
    # these name things, not actions: whipping cream, rolling pin, icing
    assert lexicons.lemmatize("baking") == "baking"
    assert lexicons.lemmatize("whipping") == "whipping"
    assert lexicons.lemmatize("icing") == "icing"


# --- quantities and ingredient lines ------------------------------------------


@pytest.mark.parametrize(
    "text,expected",
    [
        ("2 apples", Fraction(2)),
        ("1/2 cup", Fraction(1, 2)),
        ("1 1/2 cups", Fraction(3, 2)),
        ("1½ cups", Fraction(3, 2)),
        ("½ cup", Fraction(1, 2)),
        ("2.5 cups", Fraction(5, 2)),
        ("salt", None),
    ],
)
def test_parse_quantity_forms(text, expected):
    value, _rest = parse_quantity(text)
    assert value == expected


def test_ingredient_line_quantity_unit_name(lexicons):
    obj = parse_ingredient_line("1/2 cup sugar", lexicons)
    assert obj.quantity == Fraction(1, 2)
    assert obj.unit == "cup"
    assert obj.full_name == "sugar"


def test_ingredient_line_bare_name(lexicons):
    obj = parse_ingredient_line("salt", lexicons)
    assert obj.quantity is None
    assert obj.unit is None
    assert obj.full_name == "salt"


def test_ingredient_line_preparation_notes_cut(lexicons):
    obj = parse_ingredient_line("2 Granny Smith apples, peeled and cored", lexicons)
    assert obj.quantity == Fraction(2)
    assert obj.unit is None
    assert obj.full_name == "granny smith apple"


def test_ingredient_line_unit_alias_and_hyphens(lexicons):
    obj = parse_ingredient_line("1½ cups all-purpose flour", lexicons)
    assert obj.quantity == Fraction(3, 2)
    assert obj.unit == "cup"
    assert obj.full_name == "all purpose flour"


def test_ingredient_line_fresh_abbreviation_defaults_to_name(lexicons):
    obj = parse_ingredient_line("1 cup milk", lexicons)
    assert obj.abbreviation == obj.full_name


@given(
    whole=st.integers(min_value=1, max_value=9),
    den=st.integers(min_value=2, max_value=9),
    num_offset=st.integers(min_value=1, max_value=8),
)
def test_mixed_fraction_quantities_are_exact(lexicons, whole, den, num_offset):
    num = num_offset % den
    if num == 0:
        num = 1
    if num >= den:
        num = den - 1
    obj = parse_ingredient_line(f"{whole} {num}/{den} cups sugar", lexicons)
    assert obj.quantity == whole + Fraction(num, den)
    assert obj.quantity > 0


# --- abbreviation and generalization -------------------------------------------


def test_abbreviation_longest_shared_run(lexicons):
    apples = parse_ingredient_line("2 Granny Smith apples", lexicons)
    assert derive_abbreviation(apples, "peel the apples and slice", lexicons) == "apple"


def test_abbreviation_identity(lexicons):
    sugar = parse_ingredient_line("1 cup sugar", lexicons)
    assert derive_abbreviation(sugar, "stir in sugar", lexicons) == "sugar"


def test_abbreviation_absent_when_unmentioned(lexicons):
    cinnamon = parse_ingredient_line("ground cinnamon", lexicons)
    assert derive_abbreviation(cinnamon, "sift sugar and spices", lexicons) is None


def test_generalization_hypernym_found(lexicons):
    cinnamon = parse_ingredient_line("ground cinnamon", lexicons)
    gen = derive_generalization(cinnamon, "sift sugar and spices", {"sugar"}, lexicons)
    assert gen == "spice"


def test_generalization_absent_without_candidate_noun(lexicons):
    flour = parse_ingredient_line("flour", lexicons)
    assert derive_generalization(flour, "bake until golden", set(), lexicons) is None


def test_generalization_requires_hypernym_relation(lexicons):
    # "sugar" is food-rooted but is not a hypernym of "flour"
    flour = parse_ingredient_line("flour", lexicons)
    assert derive_generalization(flour, "stir in sugar", set(), lexicons) is None


# --- instruction splitting ------------------------------------------------------


def test_split_inserts_serial_comma_and_divides(lexicons):
    line = (
        "Combine the water, 1/2 cup sugar and chocolate in a saucepan "
        "and cook over low heat just until the chocolate melts"
    )
    assert split_instruction_line(line, lexicons) == [
        "Combine the water, 1/2 cup sugar, and chocolate in a saucepan",
        "cook over low heat just until the chocolate melts",
    ]


def test_split_single_clause(lexicons):
    assert split_instruction_line("Serve.", lexicons) == ["Serve."]


def test_split_only_before_cooking_verbs(lexicons):
    # "sugar" is not a cooking verb, so the first "and" does not split
    assert split_instruction_line(
        "Peel apples and sugar them and bake 10 minutes", lexicons
    ) == ["Peel apples and sugar them", "bake 10 minutes"]


def test_split_sentence_boundaries(lexicons):
    assert split_instruction_line(
        "Preheat oven to 350 degrees F. Grease a bundt pan.", lexicons
    ) == ["Preheat oven to 350 degrees F.", "Grease a bundt pan."]


def test_split_on_then(lexicons):
    assert split_instruction_line("Mix the flour and then stir in the milk", lexicons) == [
        "Mix the flour",
        "stir in the milk",
    ]


def test_split_fragments_cover_source(mini_corpus, lexicons):
    # each fragment, commas removed, appears in order in the source line
    for recipe in mini_corpus.recipes:
        for line in recipe.instruction_lines:
            fragments = split_instruction_line(line, lexicons)
            assert fragments
            stripped_line = line.replace(",", "")
            cursor = 0
            for fragment in fragments:
                assert fragment.strip()
                probe = fragment.replace(",", "")
                found = stripped_line.find(probe, cursor)
                assert found >= 0, (line, fragment)
                cursor = found + len(probe)


# --- verbs, tools, time ----------------------------------------------------------


def test_main_verb_first_token(lexicons):
    assert extract_main_verb("Beat butter and sugar until creamy", lexicons) == "beat"


def test_main_verb_after_adverbial(lexicons):
    assert extract_main_verb("In a large bowl, mix flour and sugar", lexicons) == "mix"


def test_main_verb_skips_adverb(lexicons):
    assert extract_main_verb("Slowly add the eggs", lexicons) == "add"


def test_main_verb_fallback_first_lemma(lexicons):
    assert extract_main_verb("Oven racks matter", lexicons) == "oven"


def test_tools_noun_match(lexicons):
    assert extract_tools("mix in a large bowl", lexicons) == {"bowl"}


def test_tools_pattern_match(lexicons):
    assert extract_tools("beat with an electric mixer", lexicons) == {"mixer"}


def test_tools_multiple(lexicons):
    assert extract_tools("bake in preheated oven in a greased pan", lexicons) == {
        "oven",
        "pan",
    }


def test_tools_leading_imperative_is_not_a_tool(lexicons):
    # "whisk" heads the sentence as a verb, not an instrument
    assert "whisk" not in extract_tools("Whisk the flour and milk", lexicons)


def test_time_single_value():
    assert extract_time_range("about 2 minutes") == (120, 120)


def test_time_range_to():
    assert extract_time_range("bake 30 to 35 minutes") == (1800, 2100)


def test_time_widest_span():
    assert extract_time_range("let stand 1 hour, stirring every 10 minutes") == (
        600,
        3600,
    )


def test_time_absent():
    assert extract_time_range("serve warm") is None


def test_time_hyphen_range():
    assert extract_time_range("simmer 5-7 min") == (300, 420)


# --- whole recipes ----------------------------------------------------------------


def test_recipe_links_by_generalization(lexicons):
    raw = RawRecipe(
        id="t1",
        dish="apple cake",
        ingredient_lines=(
            "1 cup sugar",
            "1 teaspoon ground cinnamon",
            "1/2 teaspoon clove",
            "1/4 teaspoon allspice",
        ),
        instruction_lines=("Sift sugar and spices.",),
        servings=None,
    )
    parsed = parse_recipe(raw, lexicons)
    instruction = parsed.instructions[0]
    linked = {parsed.ingredients[i].full_name for i in instruction.ingredients}
    assert linked == {"sugar", "ground cinnamon", "clove", "allspice"}
    assert parsed.ingredients[1].generalization == "spice"
    assert parsed.ingredients[2].generalization == "spice"
    assert parsed.ingredients[3].generalization == "spice"


def test_recipe_single_line(lexicons):
    raw = RawRecipe(
        id="t2",
        dish="apple cake",
        ingredient_lines=("salt",),
        instruction_lines=("Serve.",),
        servings=None,
    )
    parsed = parse_recipe(raw, lexicons)
    assert len(parsed.instructions) == 1
    assert parsed.instructions[0].main_verb == "serve"
    assert parsed.instructions[0].ingredients == frozenset()


def test_recipe_r001_matches_golden_file(mini_corpus, lexicons):
    parsed = parse_recipe(mini_corpus.recipes[0], lexicons)
    produced = parsed_to_json([parsed], mini_corpus.dish)
    golden = json.loads(GOLDEN_R001.read_text(encoding="utf-8"))
    assert produced == golden


# --- corpus-wide invariants ---------------------------------------------------------


def test_positions_consecutive_from_zero(parsed_mini):
    for recipe in parsed_mini:
        positions = [ins.position for ins in recipe.instructions]
        assert positions == list(range(len(positions)))


def test_main_verbs_are_single_lemmas(parsed_mini):
    for recipe in parsed_mini:
        for ins in recipe.instructions:
            assert ins.main_verb
            assert ins.main_verb == ins.main_verb.lower()
            assert " " not in ins.main_verb


def test_abbreviation_is_contiguous_run_of_name(parsed_mini):
    for recipe in parsed_mini:
        for ing in recipe.ingredients:
            name_words = ing.full_name.split()
            ab_words = ing.abbreviation.split()
            assert ab_words
            runs = [
                name_words[i : i + len(ab_words)]
                for i in range(len(name_words) - len(ab_words) + 1)
            ]
            assert ab_words in runs


def test_quantities_positive(parsed_mini):
    for recipe in parsed_mini:
        for ing in recipe.ingredients:
            if ing.quantity is not None:
                assert ing.quantity > 0


def test_time_ranges_ordered(parsed_mini):
    for recipe in parsed_mini:
        for ins in recipe.instructions:
            if ins.time_range is not None:
                lo, hi = ins.time_range
                assert lo <= hi


def test_ingredient_references_resolve(parsed_mini):
    for recipe in parsed_mini:
        for ins in recipe.instructions:
            for idx in ins.ingredients:
                assert 0 <= idx < len(recipe.ingredients)


def test_parsing_is_deterministic(mini_corpus, lexicons, parsed_mini):
    assert parse_corpus(mini_corpus, lexicons) == parsed_mini


@given(st.text(max_size=80))
def test_tokenize_yields_lowercase_word_tokens(text):
    for token in tokenize(text):
        assert token == token.lower()
        assert token
        assert all(c.isalnum() or c == "'" for c in token)
