"""Opposition-based learning: opposite and quasi-opposite points, the
population-level opposition step, and dynamic per-dimension bounds.

``opposite`` and ``quasi_opposite`` accept scalars or arrays; bounds
broadcast against ``x``, so one call handles a whole population block and
consumes a single uniform draw per element.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Bounds,
    EvaluationBudget,
    Individual,
    Population,
    evaluate_individual,
    evaluate_population,
)

OPPOSITION_MODES = ("quasi", "plain")


@dataclass(frozen=True)
class OppositionConfig:
    """Jump probability per generation and the flavour of opposition used."""

    jumping_rate: float = 0.3
    mode: str = "quasi"

    def __post_init__(self):
        if not 0.0 <= self.jumping_rate <= 0.4:
            raise ValueError(
                f"jumping rate must lie in [0, 0.4], got {self.jumping_rate}"
            )
        if self.mode not in OPPOSITION_MODES:
            raise ValueError(f"mode must be one of {OPPOSITION_MODES}, got {self.mode!r}")


def _check_interval(x, a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.any(a > b):
        raise ValueError("interval endpoints out of order (a > b)")
    if np.any(x < a) or np.any(x > b):
        raise ValueError("point lies outside the interval [a, b]")
    return x, a, b


def opposite(x, a, b):
    """Mirror of ``x`` across the interval [a, b]: a + b - x."""
    x, a, b = _check_interval(x, a, b)
    result = a + b - x
    return result if result.ndim else float(result)


def quasi_opposite(x, a, b, rng: np.random.Generator):
    """Uniform sample between the interval midpoint and the opposite point.

    With c = (a+b)/2 and o = a+b-x, the sample is uniform on
    [min(c, o), max(c, o)]; when x sits exactly at the midpoint the interval
    degenerates and c is returned. One uniform is drawn per element of ``x``.
    """
    x, a, b = _check_interval(x, a, b)
    c = (a + b) / 2.0
    o = a + b - x
    lo = np.minimum(c, o)
    hi = np.maximum(c, o)
    u = rng.random(x.shape) if x.ndim else rng.random()
    result = lo + u * (hi - lo)
    return result if np.ndim(result) else float(result)


def dynamic_bounds(pop: Population) -> Bounds:
    """Tightest box around the current population: per-dimension min and max."""
    if pop.size == 0:
        raise ValueError("cannot take bounds of an empty population")
    positions = pop.positions()
    return Bounds(positions.min(axis=0), positions.max(axis=0))


def obl_select(
    pop: Population,
    bounds: Bounds,
    objective,
    budget: EvaluationBudget,
    rng: np.random.Generator,
    mode: str = "quasi",
) -> Population:
    """Opposition step over a whole population.

    Builds the opposite population against ``bounds`` (positions clamped into
    the interval first, so dynamically shrunken bounds stay valid), evaluates
    it while the budget lasts, and keeps the ``pop.size`` best of the union.
    Ties prefer original members, then lower index. If the budget dies before
    enough members are evaluated, unevaluated originals pad the tail so the
    output size is always ``pop.size``.
    """
    evaluate_population(pop, objective, budget)
    x = np.clip(pop.positions(), bounds.lower, bounds.upper)
    if mode == "quasi":
        opp = quasi_opposite(x, bounds.lower, bounds.upper, rng)
    elif mode == "plain":
        opp = opposite(x, bounds.lower, bounds.upper)
    else:
        raise ValueError(f"mode must be one of {OPPOSITION_MODES}, got {mode!r}")

    opop = [Individual(opp[i]) for i in range(pop.size)]
    for ind in opop:
        if not evaluate_individual(ind, objective, budget):
            break

    candidates = [m for m in pop.members if m.evaluated]
    candidates += [m for m in opop if m.evaluated]
    candidates.sort(key=lambda m: m.fitness)  # stable: pop-first, then index
    selected = candidates[: pop.size]
    if len(selected) < pop.size:
        leftovers = (m for m in pop.members if not m.evaluated)
        while len(selected) < pop.size:
            selected.append(next(leftovers))
    return Population(members=selected, bounds=pop.bounds, generation=pop.generation)
