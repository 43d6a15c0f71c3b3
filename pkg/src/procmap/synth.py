"""Synthetic recipe corpora for demos, fixtures and performance checks.

Recipes are assembled phase by phase (prep, dry mix, creaming, combining,
baking, cooling) from phrasing variants, with quantities, servings, rare
add-ins and optional phases randomized under a fixed seed. The output is
noisy the way scraped recipes are: abbreviated ingredient mentions,
collective nouns ("spices"), conjoined clauses, missing steps.
"""
from __future__ import annotations

import random

from .corpus import Corpus, RawRecipe

APPLES = [
    "2 Granny Smith apples, peeled and cored",
    "3 red apples, peeled",
    "4 cups chopped apples",
    "2 1/2 cups peeled and diced apples",
    "3 large baking apples",
    "5 tart apples, cored",
]
FLOUR = [
    "2 cups all-purpose flour",
    "1 3/4 cups flour",
    "2 1/4 cups sifted flour",
    "2 cups whole wheat flour",
]
SUGAR = [
    "1 cup white sugar",
    "3/4 cup sugar",
    "1 1/2 cups sugar",
    "1 cup packed brown sugar",
]
FAT = [
    "1/2 cup butter, softened",
    "3/4 cup vegetable oil",
    "1/2 cup margarine, melted",
]
EGGS = ["2 eggs", "3 eggs", "2 large eggs, beaten"]
LEAVEN = [
    "1 teaspoon baking powder",
    "2 teaspoons baking powder",
    "1 teaspoon baking soda",
]
SPICES = [
    "1 teaspoon ground cinnamon",
    "1/2 teaspoon nutmeg",
    "1/4 teaspoon allspice",
    "1/4 teaspoon ground cloves",
]
EXTRAS = {
    "salt": "1/2 teaspoon salt",
    "vanilla": "1 teaspoon vanilla extract",
    "walnuts": "1/2 cup chopped walnuts",
    "raisins": "1/2 cup raisins",
}
RARE = [
    "2 tablespoons rum",
    "1/2 teaspoon ground cardamom",
    "1 teaspoon instant yeast",
    "1/2 cup dried cranberries",
    "3 tablespoons apricot jam",
]

PREHEAT = [
    "Preheat oven to 350 degrees F (175 degrees C).",
    "Preheat the oven to 375 degrees.",
    "Heat oven to 350 degrees and grease a 9x13 inch pan.",
]
PREP = [
    "Peel the apples and chop them into cubes.",
    "Peel, core and slice the apples.",
    "Chop the apples into small pieces.",
    "Toss the apples with a little flour.",
]
MIX_DRY = [
    "In a large bowl, mix the flour, baking powder, and cinnamon.",
    "Sift together the flour, baking soda and salt.",
    "Whisk the flour with the spices in a medium bowl.",
    "Combine flour, salt and spices in a bowl.",
]
CREAM = [
    "In a large bowl, cream the butter and sugar until light and fluffy.",
    "Beat the eggs with the sugar until smooth.",
    "Cream butter, sugar and eggs in a mixing bowl.",
    "Whisk together the oil, sugar and eggs.",
]
COMBINE = [
    "Combine the wet and dry ingredients and stir until just blended.",
    "Add the flour mixture to the egg mixture and mix well.",
    "Gradually stir the dry ingredients into the sugar mixture.",
    "Add flour to the creamed mixture and beat until smooth.",
]
FOLD = [
    "Fold in the apples and walnuts.",
    "Stir in the apples, raisins and cinnamon.",
    "Fold the apples into the batter.",
    "Stir in apples and nuts.",
]
POUR = [
    "Pour the batter into a greased 9x13 inch pan.",
    "Spread the batter in a greased and floured tube pan.",
    "Pour batter into the prepared pan.",
    "Spoon the batter into a bundt pan.",
]
BAKE = [
    "Bake for 40 to 45 minutes, or until a toothpick inserted in the center comes out clean.",
    "Bake at 350 degrees F for 1 hour.",
    "Bake in the preheated oven for 50 minutes.",
    "Bake 35-40 minutes until golden.",
]
COOL = [
    "Cool in the pan for 10 minutes, then remove to a wire rack.",
    "Let cool completely before serving.",
    "Cool the cake on a rack.",
]
SERVE = [
    "Serve warm with whipped cream.",
    "Dust with confectioners' sugar and serve.",
    "Drizzle with caramel sauce before serving.",
]
RARE_STEPS = {
    "rum": "Stir in the rum.",
    "cardamom": "Sprinkle the cardamom over the batter.",
    "yeast": "Dissolve the yeast in warm water and let rest for 10 minutes.",
    "cranberries": "Fold in the dried cranberries.",
    "jam": "Brush the top with apricot jam.",
}
RARE_KEYS = ["rum", "cardamom", "yeast", "cranberries", "jam"]


def synth_recipe(rng: random.Random, rid: str, dish: str) -> RawRecipe:
    ingredients = [rng.choice(APPLES), rng.choice(FLOUR), rng.choice(SUGAR)]
    ingredients.append(rng.choice(FAT))
    ingredients.append(rng.choice(EGGS))
    ingredients.append(rng.choice(LEAVEN))
    for spice in rng.sample(SPICES, k=rng.randint(1, 3)):
        ingredients.append(spice)
    if rng.random() < 0.6:
        ingredients.append(EXTRAS["salt"])
    if rng.random() < 0.4:
        ingredients.append(EXTRAS["vanilla"])
    if rng.random() < 0.4:
        ingredients.append(EXTRAS["walnuts"])
    if rng.random() < 0.25:
        ingredients.append(EXTRAS["raisins"])

    rare_lines = []
    for key, line in zip(RARE_KEYS, RARE):
        if rng.random() < 0.03:
            ingredients.append(line)
            rare_lines.append(RARE_STEPS[key])

    instructions = []
    if rng.random() < 0.85:
        instructions.append(rng.choice(PREHEAT))
    instructions.append(rng.choice(PREP))
    if rng.random() < 0.9:
        instructions.append(rng.choice(MIX_DRY))
    if rng.random() < 0.9:
        instructions.append(rng.choice(CREAM))
    if rng.random() < 0.95:
        instructions.append(rng.choice(COMBINE))
    if rng.random() < 0.95:
        instructions.append(rng.choice(FOLD))
    instructions.extend(rare_lines)
    if rng.random() < 0.9:
        instructions.append(rng.choice(POUR))
    instructions.append(rng.choice(BAKE))
    if rng.random() < 0.8:
        instructions.append(rng.choice(COOL))
    if rng.random() < 0.35:
        instructions.append(rng.choice(SERVE))

    servings = rng.choice([8, 8, 8, 8, 8, 10, 10, 10, 12, 12])
    return RawRecipe(
        id=rid,
        dish=dish,
        servings=servings,
        ingredient_lines=tuple(ingredients),
        instruction_lines=tuple(instructions),
    )


def synth_corpus(n: int, seed: int = 1, dish: str = "apple cake") -> Corpus:
    """A reproducible corpus of n same-dish recipes."""
    rng = random.Random(seed)
    width = max(3, len(str(n)))
    recipes = tuple(
        synth_recipe(rng, f"r{str(i + 1).zfill(width)}", dish) for i in range(n)
    )
    return Corpus(
        dish=dish,
        recipes=recipes,
        source_note=f"synthetic corpus, seed {seed}",
    )
