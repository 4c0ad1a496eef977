import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altascent.choice import (
    CandidateTracker,
    ChoiceConfig,
    Rule,
    condition1_choice,
    condition2_choice,
    primary_dominates,
    tradeoff_dominates,
    weighted_eval,
)
from oracles import multiplier_dominates


def tracker(best_eval, best_ee, max_ee=None, k=1, eebase=100.0, w=0.1):
    t = CandidateTracker()
    t.admit(k, best_eval, best_ee, weighted_eval(best_eval, best_ee, w, eebase))
    t.max_ee = best_ee if max_ee is None else max_ee
    return t


class TestConfig:
    def test_f_strictly_inside(self):
        for F in (0, 1, 1.5):
            with pytest.raises(ValueError):
                ChoiceConfig(F=F)

    def test_negative_weights(self):
        with pytest.raises(ValueError):
            ChoiceConfig(W1=-1)


class TestPrimaryDominance:
    def test_empty_tracker(self):
        assert primary_dominates(-100, 0, CandidateTracker())

    def test_ties_count(self):
        assert primary_dominates(5, 10, tracker(5, 10))

    def test_one_axis_worse(self):
        assert not primary_dominates(6, 9, tracker(5, 10))


class TestCondition1:
    def test_simple_cutoff_boundary_admits(self):
        cfg = ChoiceConfig(rule=Rule.SIMPLE_CUTOFF, F=0.8)
        t = tracker(5, 12, max_ee=10)
        assert condition1_choice(2, 7, 8, t, cfg, s1_active=False, threshold_r=0, eebase=100)
        assert (t.k, t.best_eval, t.best_ee) == (2, 7, 8)

    def test_simple_cutoff_below_cutoff(self):
        cfg = ChoiceConfig(rule=Rule.SIMPLE_CUTOFF, F=0.8)
        t = tracker(5, 12, max_ee=10)
        assert not condition1_choice(2, 7, 7.9, t, cfg, s1_active=False, threshold_r=0, eebase=100)

    def test_cutoff_raised_to_threshold_under_s1(self):
        cfg = ChoiceConfig(rule=Rule.SIMPLE_CUTOFF, F=0.8)
        t = tracker(5, 12, max_ee=10)
        assert not condition1_choice(2, 7, 8, t, cfg, s1_active=True, threshold_r=9, eebase=100)
        off = ChoiceConfig(rule=Rule.SIMPLE_CUTOFF, F=0.8, cutoff_uses_threshold=False)
        t = tracker(5, 12, max_ee=10)
        assert condition1_choice(2, 7, 8, t, off, s1_active=True, threshold_r=9, eebase=100)

    def test_advanced_cutoff_product(self):
        cfg = ChoiceConfig(rule=Rule.ADVANCED_CUTOFF, F=0.8)
        t = tracker(2, 5, max_ee=5)
        # 3 * 4 = 12 > 2 * 5 = 10 and 4 >= .8 * 5
        assert condition1_choice(2, 3, 4, t, cfg, s1_active=False, threshold_r=0, eebase=100)
        assert t.k == 2 and t.max_ee == 5

    def test_secondary_dominance_admits(self):
        cfg = ChoiceConfig(rule=Rule.ADVANCED_CUTOFF)
        t = tracker(2, 5, max_ee=50)
        assert condition1_choice(2, 3, 6, t, cfg, s1_active=False, threshold_r=0, eebase=100)
        assert (t.best_eval, t.best_ee, t.max_ee) == (3, 6, 50)

    def test_weighted_zero_weight_is_best_eval(self):
        cfg = ChoiceConfig(W1=0)
        t = tracker(5, 10, w=0)
        assert not condition1_choice(2, 5, 1, t, cfg, s1_active=False, threshold_r=0, eebase=100)
        assert condition1_choice(3, 6, 1, t, cfg, s1_active=False, threshold_r=0, eebase=100)
        assert t.k == 3

    def test_weighted_is_normalized(self):
        cfg = ChoiceConfig(W1=1.0)
        t = tracker(5, 0, w=1.0, eebase=10)
        # 4.5 + 1 * 10 / 10 = 5.5 > 5
        assert condition1_choice(2, 4.5, 10, t, cfg, s1_active=False, threshold_r=0, eebase=10)

    def test_rejects_non_improving(self):
        with pytest.raises(ValueError):
            condition1_choice(1, 0, 1, CandidateTracker(), ChoiceConfig(), s1_active=False, threshold_r=0, eebase=1)


class TestCondition2:
    def test_advanced_cutoff_cross_product(self):
        cfg = ChoiceConfig(rule=Rule.ADVANCED_CUTOFF, F=0.5)
        t = tracker(-2, 3, max_ee=3)
        # (-1)*3 = -3 > (-2)*6 = -12, and 6 >= 3 / .5
        assert condition2_choice(2, -1, 6, t, cfg, eebase=100)
        assert t.k == 2

    def test_equal_pair_not_admitted(self):
        cfg = ChoiceConfig()
        t = tracker(-2, 3, w=cfg.W2)
        assert not condition2_choice(2, -2, 3, t, cfg, eebase=100)
        # the cross-product test itself is strict
        assert not tradeoff_dominates(-2, 3, -2, 3, 2)

    def test_large_w2_prefers_ee(self):
        cfg = ChoiceConfig(W2=1e6)
        eebase = 100.0
        t = tracker(-1, 10, eebase=eebase, w=cfg.W2)
        assert condition2_choice(2, -50, 11, t, cfg, eebase=eebase)

    def test_rejects_improving(self):
        with pytest.raises(ValueError):
            condition2_choice(1, 1, 1, CandidateTracker(), ChoiceConfig(), eebase=1)


class TestTradeoff:
    def test_examples(self):
        assert tradeoff_dominates(3, 4, 2, 5, 1)
        assert tradeoff_dominates(-1, 6, -2, 3, 2)
        assert not tradeoff_dominates(3, 4, 3, 4, 1)
        assert not tradeoff_dominates(-1, 6, -1, 6, 2)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            tradeoff_dominates(-1, 1, 1, 1, 1)
        with pytest.raises(ValueError):
            tradeoff_dominates(1, 1, -1, 1, 2)
        with pytest.raises(ValueError):
            tradeoff_dominates(1, -1, 1, 1, 1)
        with pytest.raises(ValueError):
            tradeoff_dominates(1, 1, 1, 1, 3)

    def test_oracle_agreement(self):
        rng = np.random.default_rng(4)
        n = 100_000
        vals = rng.integers(1, 30, size=(n, 4))
        disagreements = 0
        for i, (a1, a2, b1, b2) in enumerate(vals.tolist()):
            cond = 1 + (i & 1)
            if cond == 2:
                a1, b1 = -a1, -b1
            if tradeoff_dominates(a1, a2, b1, b2, cond) != multiplier_dominates(a1, a2, b1, b2, cond):
                disagreements += 1
        assert disagreements == 0

    @given(st.floats(0.01, 100), st.floats(0.01, 100), st.floats(0.01, 100), st.floats(0.01, 100), st.floats(0.1, 10))
    @settings(max_examples=200)
    def test_scale_invariance(self, a1, a2, b1, b2, c):
        # scaling both evaluations by c > 0 keeps the verdict
        for cond, sign in ((1, 1), (2, -1)):
            base = tradeoff_dominates(sign * a1, a2, sign * b1, b2, cond)
            x, y = sign * a1 * c, sign * b1 * c
            lhs, rhs = (x * a2, y * b2) if cond == 1 else (x * b2, a2 * y)
            if abs(lhs - rhs) > 1e-9 * max(abs(lhs), abs(rhs)):
                assert tradeoff_dominates(x, a2, y, b2, cond) == base


class TestSelectionScaleInvariance:
    def run_rule(self, rule, evals, ees, w=0.1, eebase=100.0, cond=1):
        cfg = ChoiceConfig(rule=rule, W1=w, W2=w)
        t = CandidateTracker()
        for j, (e, ee) in enumerate(zip(evals, ees), 1):
            if primary_dominates(e, ee, t):
                t.admit(j, e, ee, weighted_eval(e, ee, w, eebase))
            elif cond == 1:
                condition1_choice(j, e, ee, t, cfg, s1_active=False, threshold_r=0, eebase=eebase)
            else:
                condition2_choice(j, e, ee, t, cfg, eebase=eebase)
        return t.k

    def test_cutoff_rules(self):
        rng = np.random.default_rng(1)
        for _ in range(500):
            m = int(rng.integers(2, 12))
            evals = rng.integers(1, 40, size=m).astype(float)
            ees = rng.integers(1, 64, size=m).astype(float)
            c = float(rng.integers(2, 9))
            for rule in (Rule.SIMPLE_CUTOFF, Rule.ADVANCED_CUTOFF):
                assert self.run_rule(rule, evals, ees) == self.run_rule(rule, evals * c, ees)
                assert self.run_rule(rule, -evals, ees, cond=2) == self.run_rule(rule, -evals * c, ees, cond=2)

    def test_weighted_sum_with_scaled_weight(self):
        rng = np.random.default_rng(2)
        for _ in range(500):
            m = int(rng.integers(2, 12))
            evals = rng.integers(1, 40, size=m).astype(float)
            ees = rng.integers(1, 64, size=m).astype(float)
            c = 4.0
            assert self.run_rule(Rule.WEIGHTED_SUM, evals, ees, w=3) == self.run_rule(
                Rule.WEIGHTED_SUM, evals * c, ees, w=3 * c
            )
