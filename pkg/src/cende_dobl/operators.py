"""Differential-evolution variation operators.

Two mutation strategies (rand/1 and local-to-best/1), binomial crossover,
and greedy one-to-one selection. The formula helpers ``rand1`` and
``local_to_best1`` are pure arithmetic over explicit donor vectors; the
``mutate_*`` wrappers add donor sampling from a population and the
configured out-of-bounds repair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Individual, Population


@dataclass(frozen=True)
class DEParams:
    """Scaling factor ``f`` in (0, 2] and crossover rate ``cr`` in [0, 1]."""

    f: float = 0.5
    cr: float = 0.9

    def __post_init__(self):
        if not 0.0 < self.f <= 2.0:
            raise ValueError(f"scaling factor must lie in (0, 2], got {self.f}")
        if not 0.0 <= self.cr <= 1.0:
            raise ValueError(f"crossover rate must lie in [0, 1], got {self.cr}")


def rand1(x_r1: np.ndarray, x_r2: np.ndarray, x_r3: np.ndarray, f: float) -> np.ndarray:
    """v = x_r1 + f * (x_r2 - x_r3)."""
    return x_r1 + f * (x_r2 - x_r3)


def local_to_best1(
    x_i: np.ndarray, x_best: np.ndarray, x_r2: np.ndarray, x_r3: np.ndarray, f: float
) -> np.ndarray:
    """v = x_i + f * (x_best - x_i) + f * (x_r2 - x_r3)."""
    return x_i + f * (x_best - x_i) + f * (x_r2 - x_r3)


def draw_distinct_indices(
    n: int, exclude: int, count: int, rng: np.random.Generator
) -> list[int]:
    """Rejection-sample ``count`` distinct indices from ``range(n)``, all
    different from ``exclude`` and from each other."""
    if n - 1 < count:
        raise ValueError(
            f"cannot draw {count} distinct donors from {n} members excluding the target"
        )
    chosen: list[int] = []
    while len(chosen) < count:
        idx = int(rng.integers(n))
        if idx == exclude or idx in chosen:
            continue
        chosen.append(idx)
    return chosen


def mutate_rand1(
    pop: Population,
    target_index: int,
    params: DEParams,
    rng: np.random.Generator,
    repair: str = "clamp",
) -> np.ndarray:
    """rand/1 mutant for one target: three distinct random non-target donors."""
    r1, r2, r3 = draw_distinct_indices(pop.size, target_index, 3, rng)
    v = rand1(
        pop.members[r1].position,
        pop.members[r2].position,
        pop.members[r3].position,
        params.f,
    )
    return pop.bounds.repair(v, repair)


def mutate_local_to_best1(
    pop: Population,
    target_index: int,
    best: Individual,
    params: DEParams,
    rng: np.random.Generator,
    repair: str = "clamp",
) -> np.ndarray:
    """local-to-best/1 mutant: the target pulled toward ``best`` plus one
    scaled difference of two distinct random non-target donors."""
    r2, r3 = draw_distinct_indices(pop.size, target_index, 2, rng)
    v = local_to_best1(
        pop.members[target_index].position,
        best.position,
        pop.members[r2].position,
        pop.members[r3].position,
        params.f,
    )
    return pop.bounds.repair(v, repair)


def crossover_binomial(
    target: np.ndarray,
    mutant: np.ndarray,
    params: DEParams,
    rng: np.random.Generator,
) -> np.ndarray:
    """Binomial trial vector.

    Coordinate j takes the mutant value when rand_j <= cr or j equals the
    forced index j_rand (drawn once, uniform over dimensions), so at least
    one coordinate always comes from the mutant.
    """
    if target.shape != mutant.shape:
        raise ValueError(f"length mismatch: target {target.shape} vs mutant {mutant.shape}")
    d = target.shape[0]
    rand_values = rng.random(d)
    j_rand = int(rng.integers(d))
    take_mutant = rand_values <= params.cr
    take_mutant[j_rand] = True
    return np.where(take_mutant, mutant, target)


def select_greedy(target: Individual, trial: Individual) -> Individual:
    """One-to-one survivor selection: the trial replaces the target only on
    strict improvement; equal fitness keeps the target."""
    if not target.evaluated or not trial.evaluated:
        raise ValueError("greedy selection requires both individuals evaluated")
    return trial if trial.fitness < target.fitness else target
