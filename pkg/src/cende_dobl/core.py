"""Shared optimisation primitives: bounds, individuals, populations, budgets, RNG.

Everything downstream (variation operators, opposition sampling, the full
optimiser loop, the benchmark harness) builds on the types in this module.
All randomness flows through explicitly passed ``numpy.random.Generator``
instances so that runs are reproducible bit-for-bit from a single seed.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

REPAIR_POLICIES = ("clamp", "reflect", "none")


def _freeze(values) -> np.ndarray:
    """Return a read-only 1-D float64 copy of ``values``."""
    arr = np.array(values, dtype=float, copy=True).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Bounds:
    """Per-dimension box constraints ``lower[j] <= x[j] <= upper[j]``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lower", _freeze(self.lower))
        object.__setattr__(self, "upper", _freeze(self.upper))
        if self.lower.shape != self.upper.shape:
            raise ValueError(
                f"bound length mismatch: {self.lower.shape[0]} vs {self.upper.shape[0]}"
            )
        if self.lower.shape[0] == 0:
            raise ValueError("bounds must cover at least one dimension")
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound exceeds upper bound in some dimension")

    @classmethod
    def cube(cls, low: float, high: float, dim: int) -> "Bounds":
        """Identical ``[low, high]`` interval in every one of ``dim`` dimensions."""
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def clip(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)

    def reflect(self, x: np.ndarray) -> np.ndarray:
        """Fold out-of-range coordinates back into the box by mirroring at the
        violated bound (repeatedly, for overshoots beyond one box width)."""
        width = self.width
        # Zero-width dimensions collapse to the single feasible value.
        safe = np.where(width > 0, width, 1.0)
        y = np.mod(x - self.lower, 2.0 * safe)
        y = np.where(y > safe, 2.0 * safe - y, y)
        return np.where(width > 0, self.lower + y, self.lower)

    def repair(self, x: np.ndarray, policy: str = "clamp") -> np.ndarray:
        """Apply the configured out-of-bounds repair. ``none`` passes through."""
        if policy == "clamp":
            return self.clip(x)
        if policy == "reflect":
            return self.reflect(x)
        if policy == "none":
            return x
        raise ValueError(f"unknown repair policy {policy!r}, expected one of {REPAIR_POLICIES}")


class Individual:
    """A candidate solution: a real vector plus a cached objective value.

    The position array is stored read-only and any assignment to ``position``
    drops the cached fitness, so a stale cache cannot be observed.
    """

    __slots__ = ("_position", "_fitness")

    def __init__(self, position, fitness: float | None = None):
        self._position = _freeze(position)
        self._fitness = None if fitness is None else float(fitness)

    @property
    def position(self) -> np.ndarray:
        return self._position

    @position.setter
    def position(self, value):
        self._position = _freeze(value)
        self._fitness = None

    @property
    def fitness(self) -> float | None:
        return self._fitness

    @fitness.setter
    def fitness(self, value: float | None):
        self._fitness = None if value is None else float(value)

    @property
    def evaluated(self) -> bool:
        return self._fitness is not None

    @property
    def dim(self) -> int:
        return self._position.shape[0]

    def copy(self) -> "Individual":
        ind = Individual.__new__(Individual)
        ind._position = self._position  # read-only, safe to share
        ind._fitness = self._fitness
        return ind

    def __eq__(self, other) -> bool:
        if not isinstance(other, Individual):
            return NotImplemented
        return self._fitness == other._fitness and np.array_equal(self._position, other._position)

    def __repr__(self) -> str:
        fit = "unevaluated" if self._fitness is None else f"{self._fitness:.6g}"
        return f"Individual(dim={self.dim}, fitness={fit})"


@dataclass
class Population:
    """Fixed-size collection of individuals plus its search-space metadata."""

    members: list[Individual]
    bounds: Bounds
    generation: int = 0

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def dim(self) -> int:
        return self.bounds.dim

    @property
    def all_evaluated(self) -> bool:
        return all(m.evaluated for m in self.members)

    def positions(self) -> np.ndarray:
        """Stack member positions into a ``(size, dim)`` matrix."""
        return np.stack([m.position for m in self.members])

    def fitness_values(self) -> np.ndarray:
        if not self.all_evaluated:
            raise ValueError("population contains unevaluated members")
        return np.array([m.fitness for m in self.members])

    def best_index(self) -> int:
        """Index of the minimum-fitness member; ties go to the lowest index."""
        return int(np.argmin(self.fitness_values()))

    def best(self) -> Individual:
        return self.members[self.best_index()]

    def __iter__(self) -> Iterator[Individual]:
        return iter(self.members)


class EvaluationBudget:
    """Counts objective evaluations against a hard cap.

    ``used`` only ever grows; once it reaches ``max_evals`` further spend
    attempts are refused and ``exhausted`` turns true.
    """

    __slots__ = ("max_evals", "_used")

    def __init__(self, max_evals: int, used: int = 0):
        if max_evals < 1:
            raise ValueError("max_evals must be positive")
        if used < 0 or used > max_evals:
            raise ValueError("used must lie in [0, max_evals]")
        self.max_evals = int(max_evals)
        self._used = int(used)

    @property
    def used(self) -> int:
        return self._used

    @property
    def remaining(self) -> int:
        return self.max_evals - self._used

    @property
    def exhausted(self) -> bool:
        return self._used >= self.max_evals

    def try_spend(self) -> bool:
        """Reserve one evaluation; returns False (and changes nothing) if none remain."""
        if self._used >= self.max_evals:
            return False
        self._used += 1
        return True

    def __repr__(self) -> str:
        return f"EvaluationBudget(used={self._used}, max_evals={self.max_evals})"


@dataclass(frozen=True)
class Objective:
    """A minimisation objective over real vectors of fixed dimensionality."""

    dim: int
    fn: Callable[[np.ndarray], float]
    name: str = ""

    def __call__(self, x: np.ndarray) -> float:
        return float(self.fn(x))


def spawn_seed(root_seed: int, *keys: int | str) -> np.random.SeedSequence:
    """Derive an independent child seed sequence from a root seed and key path.

    String keys are hashed (SHA-256, first 4 bytes) so that dataset and
    algorithm names can participate in the path; integer keys (fold index,
    repetition, ...) are used as-is. The same ``(root_seed, keys)`` always
    yields the same stream, and sibling streams are statistically independent.
    """
    spawn_key = tuple(
        int.from_bytes(hashlib.sha256(k.encode()).digest()[:4], "little")
        if isinstance(k, str)
        else int(k)
        for k in keys
    )
    return np.random.SeedSequence(int(root_seed), spawn_key=spawn_key)


def make_rng(root_seed: int, *keys: int | str) -> np.random.Generator:
    """Generator seeded by :func:`spawn_seed` over the given key path."""
    return np.random.default_rng(spawn_seed(root_seed, *keys))


def init_population(
    dim: int, size: int, bounds: Bounds, rng: np.random.Generator
) -> Population:
    """Sample ``size`` individuals coordinate-wise uniform inside ``bounds``.

    Fitness values are left unevaluated. A population needs at least 4
    members so that rand/1 mutation can draw three donors distinct from
    the target.
    """
    if bounds.dim != dim:
        raise ValueError(f"bounds cover {bounds.dim} dimensions, expected {dim}")
    if size < 4:
        raise ValueError("population size must be at least 4")
    samples = bounds.lower + rng.random((size, dim)) * bounds.width
    members = [Individual(samples[i]) for i in range(size)]
    return Population(members=members, bounds=bounds)


def evaluate_individual(ind: Individual, objective, budget: EvaluationBudget) -> bool:
    """Ensure ``ind`` carries a fitness, charging the budget for a fresh call.

    Returns True when the individual ends up evaluated (cached values are
    free); False when the budget refused the evaluation.
    """
    if ind.evaluated:
        return True
    if not budget.try_spend():
        return False
    ind.fitness = float(objective(ind.position))
    return True


def evaluate_population(pop: Population, objective, budget: EvaluationBudget) -> Population:
    """Fill missing fitness caches until done or the budget runs dry.

    Members are visited in index order; on exhaustion the remaining members
    stay unevaluated and ``budget.exhausted`` signals the partial result.
    """
    for member in pop.members:
        if not evaluate_individual(member, objective, budget):
            break
    return pop


def best_k(pop: Population, k: int) -> list[Individual]:
    """The ``k`` lowest-fitness members, ascending, ties broken by member index."""
    if k < 1 or k > pop.size:
        raise ValueError(f"k={k} out of range for population of {pop.size}")
    fits = pop.fitness_values()
    order = np.argsort(fits, kind="stable")
    return [pop.members[i] for i in order[:k]]
