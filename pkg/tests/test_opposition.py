import numpy as np
import pytest
from scipy import stats

from cende_dobl.core import (
    Bounds,
    EvaluationBudget,
    Individual,
    Population,
    init_population,
    make_rng,
)
from cende_dobl.opposition import (
    OppositionConfig,
    dynamic_bounds,
    obl_select,
    opposite,
    quasi_opposite,
)
from conftest import sphere
from oracles import oracle_opposite, oracle_quasi_opposite


class TestOppositionConfig:
    def test_defaults(self):
        cfg = OppositionConfig()
        assert cfg.jumping_rate == 0.3
        assert cfg.mode == "quasi"

    @pytest.mark.parametrize("jr", [-0.01, 0.41, 1.0])
    def test_rate_range(self, jr):
        with pytest.raises(ValueError):
            OppositionConfig(jumping_rate=jr)

    def test_rate_endpoints_ok(self):
        OppositionConfig(jumping_rate=0.0)
        OppositionConfig(jumping_rate=0.4)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            OppositionConfig(mode="antithetic")


class TestOpposite:
    def test_direct(self):
        assert opposite(0.3, 0.0, 1.0) == pytest.approx(0.7)

    def test_symmetry_fixed_point(self):
        assert opposite(0.0, -1.0, 1.0) == 0.0

    def test_involution(self, rng):
        for _ in range(300):
            a, w = rng.normal(), rng.uniform(0.1, 5)
            b = a + w
            x = rng.uniform(a, b)
            assert opposite(opposite(x, a, b), a, b) == pytest.approx(x, abs=1e-12)

    def test_outside_interval_rejected(self):
        with pytest.raises(ValueError):
            opposite(1.5, 0.0, 1.0)
        with pytest.raises(ValueError):
            opposite(0.5, 1.0, 0.0)

    def test_vectorised_matches_oracle(self, rng):
        for _ in range(300):
            d = int(rng.integers(1, 21))
            a = rng.normal(size=d)
            b = a + rng.uniform(0.1, 4, size=d)
            x = a + rng.random(d) * (b - a)
            assert np.max(np.abs(opposite(x, a, b) - oracle_opposite(x, a, b))) < 1e-12


class TestQuasiOpposite:
    def test_interval_below_midpoint(self, rng):
        for _ in range(100):
            q = quasi_opposite(0.3, 0.0, 1.0, rng)
            assert 0.5 <= q <= 0.7

    def test_interval_above_midpoint(self, rng):
        for _ in range(100):
            q = quasi_opposite(0.8, 0.0, 1.0, rng)
            assert 0.2 <= q <= 0.5

    def test_midpoint_degenerate(self, rng):
        assert quasi_opposite(0.5, 0.0, 1.0, rng) == 0.5

    def test_output_within_bounds(self, rng):
        for _ in range(500):
            a, w = rng.normal(), rng.uniform(0.1, 5)
            b = a + w
            x = rng.uniform(a, b)
            q = quasi_opposite(x, a, b, rng)
            assert a <= q <= b

    def test_outside_interval_rejected(self, rng):
        with pytest.raises(ValueError):
            quasi_opposite(-0.1, 0.0, 1.0, rng)

    def test_matrix_matches_oracle(self):
        for seed in range(100):
            rng_impl = make_rng(seed)
            rng_ref = make_rng(seed)
            gen = np.random.default_rng(1000 + seed)
            d = int(gen.integers(1, 21))
            n = int(gen.integers(1, 9))
            a = gen.normal(size=d)
            b = a + gen.uniform(0.1, 4, size=d)
            x = a + gen.random((n, d)) * (b - a)
            got = quasi_opposite(x, a, b, rng_impl)
            u = rng_ref.random((n, d))
            want = np.stack(
                [oracle_quasi_opposite(x[i], a, b, u[i]) for i in range(n)]
            )
            assert np.max(np.abs(got - want)) < 1e-12

    def test_uniform_on_interval(self):
        # quick distribution check; the full three-triple pass lives in the
        # acceptance suite
        rng = make_rng(7)
        n = 20000
        samples = np.array([quasi_opposite(0.3, 0.0, 1.0, rng) for _ in range(n)])
        stat = stats.kstest(samples, "uniform", args=(0.5, 0.2)).statistic
        assert stat < 1.6277 / np.sqrt(n)


class TestDynamicBounds:
    def test_coordinate_min_max(self):
        members = [Individual(p, 0.0) for p in ([1.0, 5.0], [3.0, 2.0], [2.0, 9.0])]
        pop = Population(members=members, bounds=Bounds.cube(-100, 100, 2))
        db = dynamic_bounds(pop)
        assert np.array_equal(db.lower, [1.0, 2.0])
        assert np.array_equal(db.upper, [3.0, 9.0])

    def test_single_member(self):
        pop = Population(
            members=[Individual([4.0, -2.0], 0.0)], bounds=Bounds.cube(-10, 10, 2)
        )
        db = dynamic_bounds(pop)
        assert np.array_equal(db.lower, db.upper)
        assert np.array_equal(db.lower, [4.0, -2.0])

    def test_identical_population_propagates_midpoint(self, rng):
        members = [Individual([0.7, 0.7], 0.0) for _ in range(4)]
        pop = Population(members=members, bounds=Bounds.cube(0, 1, 2))
        db = dynamic_bounds(pop)
        q = quasi_opposite(np.array([0.7, 0.7]), db.lower, db.upper, rng)
        assert np.array_equal(q, [0.7, 0.7])

    def test_empty_rejected(self):
        pop = Population(members=[], bounds=Bounds.cube(0, 1, 2))
        with pytest.raises(ValueError):
            dynamic_bounds(pop)


def _make_pop(positions, bounds, fitnesses=None):
    members = [
        Individual(p, None if fitnesses is None else fitnesses[i])
        for i, p in enumerate(positions)
    ]
    return Population(members=members, bounds=bounds)


class TestOblSelect:
    def test_opop_uniformly_worse_keeps_pop(self):
        # objective favours points near 0.1; opposites land near 0.9
        bounds = Bounds.cube(0.0, 1.0, 2)
        pop = _make_pop(np.full((5, 2), 0.1), bounds)
        budget = EvaluationBudget(100)
        out = obl_select(pop, bounds, lambda x: float(np.sum(np.abs(x - 0.1))), budget, make_rng(1))
        assert out.size == 5
        assert all(np.array_equal(m.position, [0.1, 0.1]) for m in out)

    def test_opop_uniformly_better_takes_opop(self):
        bounds = Bounds.cube(0.0, 1.0, 2)
        pop = _make_pop(np.full((5, 2), 0.1), bounds)
        budget = EvaluationBudget(100)
        out = obl_select(pop, bounds, lambda x: float(np.sum(np.abs(x - 0.85))), budget, make_rng(1))
        assert all(not np.array_equal(m.position, [0.1, 0.1]) for m in out)

    def test_mixed_union_matches_brute_force(self):
        bounds = Bounds.cube(-2.0, 2.0, 3)
        for seed in range(30):
            pop = init_population(3, 6, bounds, make_rng(seed))
            budget = EvaluationBudget(1000)
            rng_impl = make_rng(seed, 1)
            rng_ref = make_rng(seed, 1)
            out = obl_select(pop, bounds, sphere, budget, rng_impl)

            # oracle: rebuild the union by hand, stable sort, take best 6
            pop_ref = init_population(3, 6, bounds, make_rng(seed))
            x = np.clip(pop_ref.positions(), bounds.lower, bounds.upper)
            u = rng_ref.random(x.shape)
            c = (bounds.lower + bounds.upper) / 2.0
            o = bounds.lower + bounds.upper - x
            lo, hi = np.minimum(c, o), np.maximum(c, o)
            opp = lo + u * (hi - lo)
            union = [(sphere(p), 0, i, p) for i, p in enumerate(pop_ref.positions())]
            union += [(sphere(opp[i]), 1, i, opp[i]) for i in range(6)]
            union.sort(key=lambda t: (t[0], t[1], t[2]))
            want = np.stack([t[3] for t in union[:6]])
            assert np.allclose(out.positions(), want)

    def test_budget_charged_up_to_pop_size(self):
        bounds = Bounds.cube(0.0, 1.0, 2)
        pop = _make_pop(np.full((5, 2), 0.2), bounds, fitnesses=[1.0] * 5)
        budget = EvaluationBudget(100)
        obl_select(pop, bounds, sphere, budget, make_rng(0))
        assert budget.used == 5  # originals cached, only opposites cost

    def test_partial_budget_prefix(self):
        bounds = Bounds.cube(0.0, 1.0, 1)
        # originals all bad (fitness 10); opposites of 0.9 are near 0.1, good
        pop = _make_pop(np.full((4, 1), 0.9), bounds, fitnesses=[10.0] * 4)
        budget = EvaluationBudget(2)
        out = obl_select(pop, bounds, sphere, budget, make_rng(3))
        assert budget.exhausted
        assert out.size == 4
        evaluated_opposites = sum(
            1 for m in out if not np.array_equal(m.position, [0.9])
        )
        assert evaluated_opposites == 2  # only the affordable prefix competed

    def test_never_worsens_best(self):
        bounds = Bounds.cube(-3.0, 3.0, 4)
        for seed in range(20):
            pop = init_population(4, 8, bounds, make_rng(seed))
            budget = EvaluationBudget(1000)
            out = obl_select(pop, bounds, sphere, budget, make_rng(seed, 7))
            best_in = min(m.fitness for m in pop if m.evaluated)
            assert out.best().fitness <= best_in

    def test_tie_prefers_original(self):
        # symmetric objective makes each opposite tie its original exactly;
        # within every tied fitness value the original must come first
        bounds = Bounds.cube(-1.0, 1.0, 1)
        pop = _make_pop([[0.5], [-0.25], [0.75], [-0.6]], bounds)
        budget = EvaluationBudget(100)
        out = obl_select(pop, bounds, sphere, budget, make_rng(0), mode="plain")
        assert np.array_equal(out.positions(), [[-0.25], [0.25], [0.5], [-0.5]])

    def test_plain_mode_consumes_no_randomness(self):
        bounds = Bounds.cube(0.0, 1.0, 2)
        pop = _make_pop(np.full((4, 2), 0.3), bounds)
        rng = make_rng(42)
        obl_select(pop, bounds, sphere, EvaluationBudget(100), rng, mode="plain")
        follow_up = rng.random()
        assert follow_up == make_rng(42).random()
