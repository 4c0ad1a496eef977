import numpy as np
import pytest

from altascent.double_pass import DoublePassAscent, DoublePassConfig, PassStats, interpolate_cutoff
from altascent.engine import AAConfig, AlternatingAscent, ScanResult
from altascent.harness import brute_force, generate_instance
from altascent.memory import EEConfig
from altascent.qubo import QuboInstance, QuboProvider
from audit import AA_TABU_PATHS, Auditor, audit_trace, result_is_valid


def dp_engine(inst, version=1, F=0.8, use_list=True, auditor=None, **kw):
    kw.setdefault("trace", True)
    kw.setdefault("ee", EEConfig(Q=10, r=3))
    return DoublePassAscent(
        QuboProvider(inst), AAConfig(**kw), DoublePassConfig(version, F, use_list), on_event=auditor
    )


class TestInterpolate:
    def test_anchor_points(self):
        assert interpolate_cutoff(0.5, 1, 4, 9) == 4
        assert interpolate_cutoff(1.0, 1, 4, 9) == 9
        assert interpolate_cutoff(0.0, 1, 4, 9) == 1
        assert interpolate_cutoff(0.75, 0, 10, 20) == 15
        assert interpolate_cutoff(0.25, 0, 10, 20) == 5

    def test_order_violation(self):
        with pytest.raises(ValueError):
            interpolate_cutoff(0.5, 3, 2, 5)

    def test_monotone_in_f(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            lo, mean, hi = sorted(rng.normal(size=3))
            fs = np.linspace(0, 1, 21)
            cuts = [interpolate_cutoff(F, lo, mean, hi) for F in fs]
            assert all(a <= b + 1e-12 for a, b in zip(cuts, cuts[1:]))


class TestSecondPass:
    def _scripted(self, cands, version, F=0.5):
        """Second pass over hand-built candidates given as {j: (eval, ee)}."""
        n = max(cands)
        eng = dp_engine(QuboInstance(n, {}), version=version, F=F)
        st = eng.state
        ps = PassStats()
        for j, (e, ee) in sorted(cands.items()):
            st.evals[j], st.ee[j] = e, ee
            ps.extend(j, e, ee, eng.link, eng.last_link)
        eng.stats = ps
        return eng, ps

    def test_version_one_example(self):
        cands = {1: (5, 3), 2: (4, 9), 3: (1, 15)}
        eng, ps = self._scripted(cands, 1)
        # cutoff pinned to 4: Eval >= 4 leaves x1 and x2, x2 has the larger EE
        eng.cutoff = lambda ps: 4
        assert eng.second_pass(ScanResult(k=3, condition1=True), ps) == 2

    def test_single_candidate(self):
        for v in (1, 2):
            eng, ps = self._scripted({1: (3, 7)}, v, F=0.9)
            assert eng.second_pass(ScanResult(k=1, condition1=True), ps) == 1

    def test_list_order_is_reverse_insertion(self):
        eng, ps = self._scripted({1: (1, 1), 3: (2, 2), 4: (3, 3)}, 1)
        assert eng.list_members() == [4, 3, 1]
        assert ps.j_first == 1 and ps.j_last == 4

    def test_ties_go_to_highest_index(self):
        cands = {1: (5, 9), 2: (5, 9), 3: (5, 9)}
        for use_list in (True, False):
            eng, ps = self._scripted(cands, 1)
            eng.dp = DoublePassConfig(1, 0.5, use_list)
            eng.is_candidate = lambda j, res: True
            assert eng.second_pass(ScanResult(k=3, condition1=True), ps) == 3

    def test_identical_values(self):
        ps = PassStats()
        link = [0] * 6
        for j in (1, 2, 3):
            ps.extend(j, 4, 7, link, 5)
        assert ps.min_eval == ps.mean_eval == ps.max_eval == 4


class TestRuns:
    @pytest.mark.parametrize("version", [1, 2])
    def test_against_brute_force(self, version):
        for seed in range(4):
            inst = generate_instance(12, 0.5, 100, seed)
            opt, _ = brute_force(inst)
            aud = Auditor(r=3)
            res = dp_engine(inst, version, auditor=aud, max_iter=1500, check=True).run()
            assert res.best_objective <= opt
            assert result_is_valid(inst, res)
            assert not aud.violations
            assert not audit_trace(res.trace, AA_TABU_PATHS)

    def test_zero_instance_matches_single_pass(self):
        inst = QuboInstance(6, {})
        a = dp_engine(inst, max_iter=200).run()
        b = AlternatingAscent(QuboProvider(inst), AAConfig(ee=EEConfig(Q=10, r=3), max_iter=200, trace=True)).run()
        assert [t.k for t in a.trace] == [t.k for t in b.trace]
        assert a.best_objective == b.best_objective == 0

    @pytest.mark.parametrize("q", [5, -5])
    def test_single_candidate_runs_match_single_pass(self, q):
        # one variable: every iteration has at most one admissible move
        inst = QuboInstance(1, {(1, 1): q})
        a = dp_engine(inst, max_iter=300).run()
        b = AlternatingAscent(QuboProvider(inst), AAConfig(ee=EEConfig(Q=10, r=3), max_iter=300, trace=True)).run()
        assert [(t.k, t.status_event) for t in a.trace] == [(t.k, t.status_event) for t in b.trace]

    def test_cutoff_equals_mean_at_half(self):
        inst = generate_instance(20, 0.5, 100, 8)
        res = dp_engine(inst, 1, F=0.5, max_iter=800).run()
        rows = [t.extra for t in res.trace if t.extra]
        assert rows
        for ex in rows:
            assert ex["cutoff"] == pytest.approx(min(max(ex["mean"], ex["min"]), ex["max"]))

    def test_s1_restart_keeps_only_s1_members(self):
        inst = generate_instance(25, 0.5, 100, 9)
        eng = probed(inst, 2)
        checked = []

        def probe(res, ps):
            if res.s1 and not res.aspiration:
                thr = eng.state.memory.threshold_r
                assert all(eng.state.evals[j] > 0 and eng.state.ee[j] >= thr for j in ps.members)
                checked.append(len(ps.members))

        eng.probe = probe
        eng.run(3000)
        assert checked

    def test_raising_f_shrinks_feasible_set(self):
        inst = generate_instance(25, 0.5, 100, 10)
        eng = probed(inst, 1)
        checked = []

        def probe(res, ps):
            if not res.k or res.aspiration:
                return
            saved = eng.dp
            sizes = []
            for F in (0.1, 0.3, 0.5, 0.7, 0.9, 1.0):
                eng.dp = DoublePassConfig(1, F, True)
                cut = eng.cutoff(ps)
                sizes.append(sum(eng.state.evals[j] >= cut for j in ps.members))
            eng.dp = saved
            assert sizes == sorted(sizes, reverse=True)
            assert sizes[-1] >= 1
            checked.append(sizes)

        eng.probe = probe
        eng.run(1000)
        assert checked


class Probed(DoublePassAscent):
    """Calls ``self.probe(res, stats)`` after every first pass."""

    probe = None

    def first_pass(self):
        res, ps = super().first_pass()
        if self.probe is not None:
            self.probe(res, ps)
        return res, ps


def probed(inst, version):
    return Probed(QuboProvider(inst), AAConfig(ee=EEConfig(Q=10, r=3)), DoublePassConfig(version))
