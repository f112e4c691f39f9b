import numpy as np
import pytest

from cende_dobl.core import (
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
from conftest import sphere


class TestBounds:
    def test_cube_shape(self):
        b = Bounds.cube(-1.0, 1.0, 5)
        assert b.dim == 5
        assert np.all(b.lower == -1.0)
        assert np.all(b.upper == 1.0)

    def test_mismatched_lengths_rejected(self):
        with pytest.raises(ValueError):
            Bounds(np.zeros(3), np.ones(4))

    def test_inverted_interval_rejected(self):
        with pytest.raises(ValueError):
            Bounds(np.array([0.0, 2.0]), np.array([1.0, 1.0]))

    def test_contains(self):
        b = Bounds.cube(0.0, 1.0, 3)
        assert b.contains(np.array([0.0, 0.5, 1.0]))
        assert not b.contains(np.array([0.0, 0.5, 1.0 + 1e-9]))

    def test_clip(self):
        b = Bounds.cube(-1.0, 1.0, 3)
        out = b.clip(np.array([-2.0, 0.3, 5.0]))
        assert np.array_equal(out, [-1.0, 0.3, 1.0])

    def test_reflect_simple(self):
        b = Bounds.cube(0.0, 1.0, 1)
        assert b.reflect(np.array([1.2]))[0] == pytest.approx(0.8)
        assert b.reflect(np.array([-0.3]))[0] == pytest.approx(0.3)
        assert b.reflect(np.array([0.4]))[0] == pytest.approx(0.4)

    def test_reflect_stays_inside_far_overshoot(self, rng):
        b = Bounds.cube(-1.0, 2.0, 4)
        for _ in range(200):
            x = rng.uniform(-50, 50, size=4)
            assert b.contains(b.reflect(x))

    def test_repair_policies(self):
        b = Bounds.cube(0.0, 1.0, 2)
        x = np.array([-0.5, 1.5])
        assert np.array_equal(b.repair(x, "clamp"), [0.0, 1.0])
        assert b.contains(b.repair(x, "reflect"))
        assert np.array_equal(b.repair(x, "none"), x)
        with pytest.raises(ValueError):
            b.repair(x, "wrap")

    def test_degenerate_interval(self):
        b = Bounds.cube(0.5, 0.5, 3)
        assert np.array_equal(b.reflect(np.array([9.0, -9.0, 0.5])), [0.5, 0.5, 0.5])
        assert b.width.sum() == 0.0

    def test_immutable(self):
        b = Bounds.cube(0.0, 1.0, 2)
        with pytest.raises(ValueError):
            b.lower[0] = -1.0


class TestIndividual:
    def test_starts_unevaluated(self):
        ind = Individual([1.0, 2.0])
        assert not ind.evaluated
        assert ind.fitness is None
        assert ind.dim == 2

    def test_position_is_read_only(self):
        ind = Individual([1.0, 2.0])
        with pytest.raises(ValueError):
            ind.position[0] = 5.0

    def test_position_assignment_clears_fitness(self):
        ind = Individual([1.0], fitness=3.0)
        assert ind.evaluated
        ind.position = [2.0]
        assert not ind.evaluated

    def test_source_mutation_does_not_leak(self):
        src = np.array([1.0, 2.0])
        ind = Individual(src)
        src[0] = 99.0
        assert ind.position[0] == 1.0

    def test_copy_is_independent(self):
        a = Individual([1.0], fitness=2.0)
        b = a.copy()
        b.position = [5.0]
        assert a.position[0] == 1.0
        assert a.fitness == 2.0
        assert b.fitness is None

    def test_equality(self):
        assert Individual([1.0, 2.0], 3.0) == Individual([1.0, 2.0], 3.0)
        assert Individual([1.0], 3.0) != Individual([1.0], 4.0)
        assert Individual([1.0]) != Individual([2.0])


class TestBudget:
    def test_exact_accounting(self):
        budget = EvaluationBudget(3)
        spent = [budget.try_spend() for _ in range(5)]
        assert spent == [True, True, True, False, False]
        assert budget.used == 3
        assert budget.exhausted

    def test_remaining(self):
        budget = EvaluationBudget(10, used=4)
        assert budget.remaining == 6
        assert not budget.exhausted

    def test_validation(self):
        with pytest.raises(ValueError):
            EvaluationBudget(0)
        with pytest.raises(ValueError):
            EvaluationBudget(5, used=6)


class TestInitPopulation:
    def test_within_bounds_small(self):
        bounds = Bounds.cube(-5.0, 5.0, 2)
        pop = init_population(2, 5, bounds, make_rng(42))
        assert pop.size == 5
        for m in pop:
            assert bounds.contains(m.position)
            assert not m.evaluated

    def test_degenerate_bounds_collapse(self):
        bounds = Bounds.cube(0.5, 0.5, 3)
        pop = init_population(3, 6, bounds, make_rng(0))
        for m in pop:
            assert np.array_equal(m.position, [0.5, 0.5, 0.5])

    def test_large_shape(self):
        bounds = Bounds.cube(-1.0, 1.0, 43)
        pop = init_population(43, 50, bounds, make_rng(7))
        assert pop.positions().shape == (50, 43)
        assert pop.dim == 43

    def test_dim_mismatch_rejected(self):
        with pytest.raises(ValueError):
            init_population(3, 10, Bounds.cube(0, 1, 2), make_rng(0))

    def test_too_small_rejected(self):
        with pytest.raises(ValueError):
            init_population(2, 3, Bounds.cube(0, 1, 2), make_rng(0))

    def test_reproducible(self):
        bounds = Bounds.cube(-2.0, 2.0, 4)
        a = init_population(4, 8, bounds, make_rng(123))
        b = init_population(4, 8, bounds, make_rng(123))
        assert np.array_equal(a.positions(), b.positions())

    def test_seed_changes_sample(self):
        bounds = Bounds.cube(-2.0, 2.0, 4)
        a = init_population(4, 8, bounds, make_rng(123))
        b = init_population(4, 8, bounds, make_rng(124))
        assert not np.array_equal(a.positions(), b.positions())


class TestEvaluation:
    def test_counts_and_caches(self):
        pop = init_population(3, 5, Bounds.cube(-1, 1, 3), make_rng(1))
        budget = EvaluationBudget(100)
        evaluate_population(pop, sphere, budget)
        assert budget.used == 5
        assert pop.all_evaluated
        evaluate_population(pop, sphere, budget)  # cached: free
        assert budget.used == 5

    def test_partial_budget_prefix(self):
        pop = init_population(3, 10, Bounds.cube(-1, 1, 3), make_rng(2))
        budget = EvaluationBudget(7)
        evaluate_population(pop, sphere, budget)
        assert budget.used == 7
        assert budget.exhausted
        assert [m.evaluated for m in pop] == [True] * 7 + [False] * 3

    def test_individual_refused_when_exhausted(self):
        ind = Individual([1.0, 1.0])
        budget = EvaluationBudget(1, used=1)
        assert not evaluate_individual(ind, sphere, budget)
        assert not ind.evaluated

    def test_sphere_at_origin(self):
        ind = Individual(np.zeros(4))
        budget = EvaluationBudget(1)
        assert evaluate_individual(ind, sphere, budget)
        assert ind.fitness == 0.0

    def test_objective_wrapper(self):
        obj = Objective(dim=3, fn=sphere, name="sphere")
        assert obj(np.array([1.0, 2.0, 2.0])) == 9.0


class TestBestK:
    def _pop(self, fits):
        members = [Individual([float(i)], fitness=f) for i, f in enumerate(fits)]
        return Population(members=members, bounds=Bounds.cube(-100, 100, 1))

    def test_sorted_ascending(self):
        pop = self._pop([5.0, 1.0, 3.0, 2.0, 4.0])
        top = best_k(pop, 3)
        assert [m.fitness for m in top] == [1.0, 2.0, 3.0]

    def test_ties_break_by_index(self):
        pop = self._pop([2.0, 1.0, 1.0, 2.0])
        top = best_k(pop, 3)
        assert [m.position[0] for m in top] == [1.0, 2.0, 0.0]

    def test_against_brute_force(self, rng):
        for _ in range(50):
            fits = rng.integers(0, 5, size=12).astype(float)  # many ties
            pop = self._pop(fits)
            k = int(rng.integers(1, 13))
            got = [m.position[0] for m in best_k(pop, k)]
            want = [i for _, i in sorted((f, i) for i, f in enumerate(fits))[:k]]
            assert got == [float(i) for i in want]

    def test_best_index_tie_goes_low(self):
        pop = self._pop([3.0, 1.0, 1.0])
        assert pop.best_index() == 1
        assert pop.best() is pop.members[1]

    def test_k_out_of_range(self):
        pop = self._pop([1.0, 2.0])
        with pytest.raises(ValueError):
            best_k(pop, 0)
        with pytest.raises(ValueError):
            best_k(pop, 3)

    def test_unevaluated_rejected(self):
        pop = self._pop([1.0, 2.0])
        pop.members[0].position = [9.0]  # clears cache
        with pytest.raises(ValueError):
            best_k(pop, 1)


class TestSeedDerivation:
    def test_stable_across_calls(self):
        a = make_rng(42, "pima", 3, 0).random(5)
        b = make_rng(42, "pima", 3, 0).random(5)
        assert np.array_equal(a, b)

    def test_distinct_paths_differ(self):
        a = make_rng(42, "pima", 3).random(5)
        b = make_rng(42, "pima", 4).random(5)
        c = make_rng(42, "iris", 3).random(5)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_string_hashing_is_stable(self):
        s1 = spawn_seed(7, "cancer").spawn_key
        s2 = spawn_seed(7, "cancer").spawn_key
        assert s1 == s2
