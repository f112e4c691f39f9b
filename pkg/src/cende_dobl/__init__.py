"""Differential-evolution trainer for small MLP classifiers.

The optimiser combines three ingredients on top of a classic DE loop:
centroid-of-best injection, quasi-opposition jumps over dynamically
shrinking bounds, and a local-to-best mutation strategy. The package also
ships a cross-validation benchmark harness with a command line front end.
"""

from .core import (
    Bounds,
    EvaluationBudget,
    Individual,
    Objective,
    Population,
    best_k,
    evaluate_individual,
    evaluate_population,
    init_population,
    make_rng,
    spawn_seed,
)

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "EvaluationBudget",
    "Individual",
    "Objective",
    "Population",
    "best_k",
    "evaluate_individual",
    "evaluate_population",
    "init_population",
    "make_rng",
    "spawn_seed",
    "__version__",
]
