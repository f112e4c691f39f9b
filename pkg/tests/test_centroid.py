import numpy as np
import pytest

from cende_dobl.centroid import CentroidConfig, centroid_of_best, inject_centroid
from cende_dobl.core import (
    Bounds,
    EvaluationBudget,
    Individual,
    Population,
    init_population,
    make_rng,
)
from conftest import sphere
from oracles import oracle_centroid


def _pop_1d(positions, fitnesses, low=-100.0, high=100.0):
    members = [Individual([p], f) for p, f in zip(positions, fitnesses)]
    return Population(members=members, bounds=Bounds.cube(low, high, 1))


class TestCentroidConfig:
    def test_defaults(self):
        cfg = CentroidConfig()
        assert cfg.n_best == 3
        assert cfg.slot == "last"

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            CentroidConfig(n_best=0)

    def test_invalid_slot(self):
        with pytest.raises(ValueError):
            CentroidConfig(slot="best")


class TestCentroidOfBest:
    def test_three_point_mean(self):
        pop = _pop_1d([3.0, 5.0, 8.0, 20.0, 30.0, 40.0], [1, 2, 3, 10, 11, 12])
        c = centroid_of_best(pop, CentroidConfig(n_best=3))
        assert abs(c[0] - 16.0 / 3.0) < 1e-9

    def test_n_one_is_best_member(self):
        pop = _pop_1d([4.0, 7.0, 1.0], [2.0, 3.0, 0.5])
        c = centroid_of_best(pop, CentroidConfig(n_best=1))
        assert np.array_equal(c, [1.0])

    def test_identical_best_members(self):
        pop = _pop_1d([2.5, 2.5, 2.5, 9.0], [1, 1, 1, 5])
        c = centroid_of_best(pop, CentroidConfig(n_best=3))
        assert np.array_equal(c, [2.5])

    def test_n_out_of_range(self):
        pop = _pop_1d([1.0, 2.0, 3.0, 4.0], [1, 2, 3, 4])
        with pytest.raises(ValueError):
            centroid_of_best(pop, CentroidConfig(n_best=5))

    def test_unevaluated_rejected(self):
        pop = Population(
            members=[Individual([1.0]), Individual([2.0])],
            bounds=Bounds.cube(0, 10, 1),
        )
        with pytest.raises(ValueError):
            centroid_of_best(pop, CentroidConfig(n_best=1))

    def test_against_oracle(self, rng):
        bounds = Bounds.cube(-5.0, 5.0, 6)
        for seed in range(100):
            pop = init_population(6, 10, bounds, make_rng(seed))
            for m in pop:
                m.fitness = sphere(m.position)
            n = int(rng.integers(1, 11))
            got = centroid_of_best(pop, CentroidConfig(n_best=n))
            order = sorted(range(10), key=lambda i: (pop.members[i].fitness, i))
            want = oracle_centroid([pop.members[i].position for i in order[:n]])
            assert np.max(np.abs(got - want)) < 1e-12

    def test_within_hull_of_best(self, rng):
        bounds = Bounds.cube(-2.0, 2.0, 4)
        for seed in range(50):
            pop = init_population(4, 8, bounds, make_rng(seed))
            for m in pop:
                m.fitness = sphere(m.position)
            c = centroid_of_best(pop, CentroidConfig(n_best=3))
            from cende_dobl.core import best_k

            tops = np.stack([m.position for m in best_k(pop, 3)])
            assert np.all(c >= tops.min(axis=0) - 1e-15)
            assert np.all(c <= tops.max(axis=0) + 1e-15)


class TestInjectCentroid:
    def test_replaces_last_slot(self):
        pop = _pop_1d([3.0, 5.0, 8.0, 20.0, 30.0, 40.0], [1, 2, 3, 10, 11, 12])
        budget = EvaluationBudget(10)
        out = inject_centroid(pop, CentroidConfig(n_best=3), sphere, budget)
        assert out is pop
        assert abs(pop.members[-1].position[0] - 16.0 / 3.0) < 1e-9
        assert pop.members[-1].evaluated
        assert [m.position[0] for m in pop.members[:-1]] == [3.0, 5.0, 8.0, 20.0, 30.0]
        assert budget.used == 1

    def test_full_population_mean(self):
        pop = _pop_1d([1.0, 2.0, 3.0, 6.0], [1, 2, 3, 4])
        inject_centroid(pop, CentroidConfig(n_best=4), sphere, EvaluationBudget(5))
        assert pop.members[-1].position[0] == pytest.approx((1 + 2 + 3 + 6) / 4)

    def test_idempotent_when_slot_not_among_best(self):
        pop = _pop_1d([3.0, 5.0, 8.0, 20.0, 30.0, 40.0], [1, 2, 3, 10, 11, 12])
        budget = EvaluationBudget(10)
        inject_centroid(pop, CentroidConfig(n_best=3), sphere, budget)
        first = pop.positions().copy()
        first_fit = [m.fitness for m in pop.members]
        inject_centroid(pop, CentroidConfig(n_best=3), sphere, budget)
        assert np.array_equal(pop.positions(), first)
        assert [m.fitness for m in pop.members] == first_fit

    def test_skipped_when_exhausted(self):
        pop = _pop_1d([3.0, 5.0, 8.0, 40.0], [1, 2, 3, 12])
        budget = EvaluationBudget(1, used=1)
        before = pop.positions().copy()
        inject_centroid(pop, CentroidConfig(n_best=3), sphere, budget)
        assert np.array_equal(pop.positions(), before)
        assert budget.used == 1

    def test_worst_slot_variant(self):
        pop = _pop_1d([3.0, 40.0, 5.0, 8.0], [1, 12, 2, 3])
        inject_centroid(
            pop, CentroidConfig(n_best=3, slot="worst"), sphere, EvaluationBudget(5)
        )
        assert pop.members[1].position[0] == pytest.approx(16.0 / 3.0)
        assert [pop.members[i].position[0] for i in (0, 2, 3)] == [3.0, 5.0, 8.0]

    def test_exactly_one_member_changes(self, rng):
        bounds = Bounds.cube(-3.0, 3.0, 3)
        for seed in range(20):
            pop = init_population(3, 7, bounds, make_rng(seed))
            for m in pop:
                m.fitness = sphere(m.position)
            before = pop.positions().copy()
            inject_centroid(pop, CentroidConfig(), sphere, EvaluationBudget(5))
            after = pop.positions()
            changed = [
                i for i in range(7) if not np.array_equal(before[i], after[i])
            ]
            assert changed == [6]
            assert pop.size == 7

    def test_replaces_even_the_global_best_occupant(self):
        # best member sits in the last slot; injection overwrites it anyway
        pop = _pop_1d([20.0, 30.0, 5.0, 3.0], [10, 11, 2, 1])
        inject_centroid(pop, CentroidConfig(n_best=2), sphere, EvaluationBudget(5))
        assert pop.members[-1].position[0] == pytest.approx(4.0)
