"""The full optimisation loop and its plain-DE ablation baseline.

One internal engine drives both entry points. ``run_cende_dobl`` uses the
config as given (local-to-best mutation, initial opposition step, and a
per-generation coin flip between a dynamic-bounds opposition jump and a
centroid injection). ``run_de_baseline`` reuses the same engine with the
opposition and centroid slots cleared and rand/1 mutation, which is what
makes ablation comparisons bit-exact rather than merely statistical.

Randomness is consumed in a fixed documented order per run:

1. initialisation: one uniform block of shape (pop_size, dim);
2. initial opposition step, when enabled: one block of the same shape;
3. per generation, for each member that still fits in the budget: donor
   indices by rejection sampling, one uniform block of shape (dim,) for
   crossover, one integer for the forced coordinate;
4. after each full sweep, when opposition is enabled with a positive
   jumping rate: a single uniform for the jump/centroid decision, plus one
   (pop_size, dim) block when the jump fires in quasi mode.

A generation counts as completed when everything due in it actually ran;
the trailing generation cut short by budget exhaustion is recorded in the
fitness curve but not counted.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .centroid import CentroidConfig, inject_centroid
from .core import (
    Bounds,
    EvaluationBudget,
    Individual,
    Population,
    evaluate_individual,
    evaluate_population,
    init_population,
    make_rng,
)
from .operators import (
    DEParams,
    crossover_binomial,
    mutate_local_to_best1,
    mutate_rand1,
    select_greedy,
)
from .opposition import OppositionConfig, dynamic_bounds, obl_select

MUTATIONS = ("local_to_best", "rand1")


@dataclass(frozen=True)
class OptimizerConfig:
    """Everything one run needs; ``opposition``/``centroid`` set to None
    switch those mechanisms off entirely."""

    bounds: Bounds
    pop_size: int = 50
    max_evals: int = 25000
    de: DEParams = DEParams(f=0.5, cr=0.9)
    opposition: OppositionConfig | None = OppositionConfig(jumping_rate=0.3, mode="quasi")
    centroid: CentroidConfig | None = CentroidConfig(n_best=3)
    mutation: str = "local_to_best"
    repair: str = "clamp"
    seed: int = 0

    def __post_init__(self):
        if self.pop_size < 4:
            raise ValueError("population size must be at least 4")
        if self.max_evals < self.pop_size:
            raise ValueError("budget must cover at least the initial population")
        if self.mutation not in MUTATIONS:
            raise ValueError(f"mutation must be one of {MUTATIONS}, got {self.mutation!r}")
        if self.centroid is not None and self.centroid.n_best > self.pop_size:
            raise ValueError("centroid n_best cannot exceed the population size")


@dataclass(frozen=True)
class RunTrace:
    """What one run produced: the per-generation best curve (historical
    best, entry 0 taken right after initialisation), the best individual
    ever evaluated, and exact usage counters."""

    best_fitness_by_generation: list[float]
    final_best: Individual
    evaluations_used: int
    jump_count: int
    centroid_injection_count: int
    generations: int


def _better(a: Individual, b: Individual) -> Individual:
    return b if b.fitness < a.fitness else a


def _sweep(
    pop: Population,
    objective,
    budget: EvaluationBudget,
    cfg: OptimizerConfig,
    rng: np.random.Generator,
) -> tuple[Population, bool]:
    """One synchronous generation: donors and the frozen best come from the
    old population, survivors form the new one. Members whose trial no
    longer fits in the budget carry over unchanged; returns whether every
    member got its trial."""
    best = pop.best()
    new_members: list[Individual] = []
    complete = True
    for i in range(pop.size):
        if budget.exhausted:
            new_members.extend(pop.members[i:])
            complete = False
            break
        if cfg.mutation == "local_to_best":
            mutant = mutate_local_to_best1(pop, i, best, cfg.de, rng, cfg.repair)
        else:
            mutant = mutate_rand1(pop, i, cfg.de, rng, cfg.repair)
        trial = Individual(crossover_binomial(pop.members[i].position, mutant, cfg.de, rng))
        if not evaluate_individual(trial, objective, budget):
            new_members.extend(pop.members[i:])
            complete = False
            break
        new_members.append(select_greedy(pop.members[i], trial))
    return (
        Population(members=new_members, bounds=pop.bounds, generation=pop.generation + 1),
        complete,
    )


def _run(objective, cfg: OptimizerConfig) -> RunTrace:
    obj_dim = getattr(objective, "dim", None)
    if obj_dim is not None and obj_dim != cfg.bounds.dim:
        raise ValueError(
            f"objective dimensionality {obj_dim} != bounds dimensionality {cfg.bounds.dim}"
        )

    rng = make_rng(cfg.seed)
    budget = EvaluationBudget(cfg.max_evals)
    pop = init_population(cfg.bounds.dim, cfg.pop_size, cfg.bounds, rng)
    evaluate_population(pop, objective, budget)
    hist = pop.best().copy()

    if cfg.opposition is not None:
        pop = obl_select(pop, cfg.bounds, objective, budget, rng, cfg.opposition.mode)
        hist = _better(hist, pop.best())

    curve = [hist.fitness]
    jump_count = 0
    centroid_count = 0
    generations = 0

    while not budget.exhausted:
        pop, sweep_complete = _sweep(pop, objective, budget, cfg, rng)
        hist = _better(hist, pop.best())
        if budget.exhausted:
            if sweep_complete and cfg.opposition is None and cfg.centroid is None:
                generations += 1
            curve.append(hist.fitness)
            break
        if cfg.opposition is not None and cfg.opposition.jumping_rate > 0:
            jump = rng.random() < cfg.opposition.jumping_rate
        else:
            jump = False
        if jump:
            pop = obl_select(
                pop, dynamic_bounds(pop), objective, budget, rng, cfg.opposition.mode
            )
            jump_count += 1
        elif cfg.centroid is not None:
            inject_centroid(pop, cfg.centroid, objective, budget)
            centroid_count += 1
        hist = _better(hist, pop.best())
        generations += 1
        curve.append(hist.fitness)

    return RunTrace(
        best_fitness_by_generation=curve,
        final_best=hist,
        evaluations_used=budget.used,
        jump_count=jump_count,
        centroid_injection_count=centroid_count,
        generations=generations,
    )


def run_cende_dobl(objective, cfg: OptimizerConfig) -> RunTrace:
    """Run the full algorithm exactly as configured."""
    return _run(objective, cfg)


def run_de_baseline(objective, cfg: OptimizerConfig, mutation: str = "rand1") -> RunTrace:
    """Classic DE/rand/1/bin under the same budget accounting.

    Takes the same config as :func:`run_cende_dobl` and clears the
    opposition and centroid mechanisms; ``mutation`` can swap the
    local-to-best strategy back in for ablation studies.
    """
    return _run(objective, replace(cfg, opposition=None, centroid=None, mutation=mutation))
