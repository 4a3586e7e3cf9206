from .generate import InfeasibleRecipeError, generate_dataset
from .recipes import DatasetRecipe, Setting, default_recipe
from .samples import (
    ReasoningSample,
    equivalence_set,
    random_predictor,
    read_dataset,
    score_predictions,
    write_dataset,
)

__all__ = [
    "DatasetRecipe",
    "InfeasibleRecipeError",
    "ReasoningSample",
    "Setting",
    "default_recipe",
    "equivalence_set",
    "generate_dataset",
    "random_predictor",
    "read_dataset",
    "score_predictions",
    "write_dataset",
]
