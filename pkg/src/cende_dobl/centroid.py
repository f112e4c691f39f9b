"""Centroid exploitation: average the N best members and overwrite one slot.

The slot is literally the last population index by default (a config switch
retargets the current worst member instead). Injection charges one objective
evaluation for the centroid's fitness; when the budget is already spent the
population is returned untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EvaluationBudget, Individual, Population, best_k

INJECTION_SLOTS = ("last", "worst")


@dataclass(frozen=True)
class CentroidConfig:
    """How many of the best members to average, and which slot to overwrite."""

    n_best: int = 3
    slot: str = "last"

    def __post_init__(self):
        if self.n_best < 1:
            raise ValueError(f"n_best must be positive, got {self.n_best}")
        if self.slot not in INJECTION_SLOTS:
            raise ValueError(f"slot must be one of {INJECTION_SLOTS}, got {self.slot!r}")


def centroid_of_best(pop: Population, cfg: CentroidConfig) -> np.ndarray:
    """Coordinate-wise mean of the ``cfg.n_best`` lowest-fitness members."""
    if cfg.n_best > pop.size:
        raise ValueError(f"n_best={cfg.n_best} exceeds population size {pop.size}")
    top = best_k(pop, cfg.n_best)
    return np.mean([m.position for m in top], axis=0)


def inject_centroid(
    pop: Population,
    cfg: CentroidConfig,
    objective,
    budget: EvaluationBudget,
) -> Population:
    """Overwrite the designated slot with the evaluated centroid, in place.

    One evaluation is spent on the centroid's fitness. If none remains the
    injection is skipped entirely (``budget.exhausted`` tells the caller).
    The previous occupant is replaced unconditionally, even if it was the
    population best; historical-best tracking is the caller's concern.
    """
    center = centroid_of_best(pop, cfg)
    if not budget.try_spend():
        return pop
    ind = Individual(center, fitness=float(objective(center)))
    slot = pop.size - 1 if cfg.slot == "last" else int(np.argmax(pop.fitness_values()))
    pop.members[slot] = ind
    return pop
