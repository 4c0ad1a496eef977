import pytest

from altascent.harness import brute_force, generate_instance
from altascent.qubo import QuboInstance, QuboProvider
from altascent.tabu import TabuConfig, TabuSearch, run_tabu
from audit import TABU_TABU_PATHS, audit_trace, result_is_valid


def search(inst, **kw):
    kw.setdefault("trace", True)
    return TabuSearch(QuboProvider(inst), TabuConfig(**kw))


class TestConfig:
    def test_tenure_order(self):
        with pytest.raises(ValueError):
            TabuConfig(tenure_low=5, tenure_high=4)
        with pytest.raises(ValueError):
            TabuConfig(tenure_low=0)

    def test_range_must_exceed_tenure(self):
        with pytest.raises(ValueError):
            TabuConfig(tabu_free=True, tenure_high=12, tabu_range=12)
        TabuConfig(tabu_free=False, tenure_high=12, tabu_range=12)


class TestBaseline:
    def test_zero_instance(self):
        assert run_tabu(QuboProvider(QuboInstance(4, {})), TabuConfig(max_iter=30)).best_objective == 0

    @pytest.mark.parametrize("seed", range(5))
    def test_against_brute_force(self, seed):
        inst = generate_instance(12, 0.5, 100, seed)
        opt, _ = brute_force(inst)
        res = search(inst, max_iter=2000, seed=seed).run()
        assert res.best_objective <= opt
        assert result_is_valid(inst, res)
        assert not audit_trace(res.trace, TABU_TABU_PATHS)

    def test_fixed_tenure_blocks_reflips(self):
        inst = generate_instance(20, 0.5, 100, 1)
        t = 6
        res = search(inst, tenure_low=t, tenure_high=t, max_iter=3000).run()
        last = {}
        for rec in res.trace:
            if rec.k:
                if rec.k in last and rec.iter - last[rec.k] <= t:
                    assert rec.path == "aspiration"
                last[rec.k] = rec.iter

    def test_tenures_drawn_in_range(self):
        inst = generate_instance(20, 0.5, 100, 2)
        s = search(inst, tenure_low=3, tenure_high=5, max_iter=0)
        for _ in range(500):
            s.step()
            rec = s.trace[-1]
            if rec.k:
                assert 3 <= s.tabu_iter[rec.k] - rec.iter <= 5

    def test_ties_lowest_index(self):
        inst = QuboInstance(3, {(1, 1): 4, (2, 2): 4, (3, 3): 4})
        s = search(inst, max_iter=0)
        s.step()
        assert s.trace[-1].k == 1

    def test_deterministic_per_seed(self):
        inst = generate_instance(20, 0.5, 100, 3)
        a = [r.k for r in search(inst, seed=4, max_iter=500).run().trace]
        b = [r.k for r in search(inst, seed=4, max_iter=500).run().trace]
        c = [r.k for r in search(inst, seed=5, max_iter=500).run().trace]
        assert a == b and a != c


class TestTabuFree:
    def test_first_local_optimum_is_tabu_free(self):
        inst = generate_instance(15, 0.5, 100, 4)
        s = search(inst, tabu_free=True, max_iter=0)
        while s.local_optima == 0:
            s.step()
        assert s.tabu_free_solutions == 1

    def test_zero_tolerance_matches_aspiration_after_first_optimum(self):
        # with tolerance 0 a suspension needs x_o > x_o*, which is impossible,
        # so after the first optimum the run is the plain baseline
        inst = generate_instance(20, 0.5, 100, 5)
        a = search(inst, tabu_free=True, xo_tolerance=0, max_iter=1500, seed=1).run()
        b = search(inst, tabu_free=False, max_iter=1500, seed=1).run()
        assert [r.k for r in a.trace] == [r.k for r in b.trace]
        assert a.ascents_launched == 1

    def test_suspensions_happen_with_tolerance(self):
        inst = generate_instance(25, 0.5, 100, 6)
        s = search(inst, tabu_free=True, xo_tolerance=500, tabu_range=50, max_iter=4000)
        res = s.run()
        assert res.ascents_launched > 1
        assert result_is_valid(inst, res)
        assert not audit_trace(res.trace, TABU_TABU_PATHS)

    def test_residual_tenure_survives_suspension(self):
        inst = generate_instance(25, 0.5, 100, 7)
        s = search(inst, tabu_free=True, xo_tolerance=500, tabu_range=50, max_iter=0)
        for _ in range(4000):
            before = list(s.tabu_iter)
            was = s.suspended
            s.step()
            rec = s.trace[-1]
            if was or s.suspended:
                # only the flipped variable's mark may change
                changed = [j for j in range(len(before)) if before[j] != s.tabu_iter[j]]
                assert changed in ([], [rec.k])
