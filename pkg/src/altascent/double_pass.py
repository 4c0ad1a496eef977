"""Double-pass variant: gather candidate statistics, then choose against a cutoff.

The first pass classifies variables exactly like the single-pass scan
(aspiration, Condition 1, S1, S2 and Condition 2).  It also keeps running
min / mean / max statistics of the candidates' evaluations and EE views,
plus a singly linked list of the candidates themselves.

The second pass turns F into a percentile-style cutoff and picks a move:

* version 1 (Eval cutoff) takes the largest EE view among candidates with
  Eval >= cutoff;
* version 2 (EE cutoff) takes the largest Eval among candidates with
  EE >= cutoff.

Ties go to the highest variable index, whether the candidates are walked
along the list or over the index range [j_first, j_last].
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import AAConfig, AlternatingAscent, ScanResult

NEG_INF = float("-inf")
POS_INF = float("inf")


@dataclass(frozen=True)
class DoublePassConfig:
    version: int = 1
    F: float = 0.8
    use_list: bool = True

    def __post_init__(self) -> None:
        if self.version not in (1, 2):
            raise ValueError(f"version must be 1 or 2, got {self.version}")
        if not 0 <= self.F <= 1:
            raise ValueError(f"F must lie in [0, 1], got {self.F}")


@dataclass
class PassStats:
    """Running statistics over the candidates of the governing class."""

    min_eval: float = POS_INF
    max_eval: float = NEG_INF
    sum_eval: float = 0
    min_ee: float = POS_INF
    max_ee: float = NEG_INF
    sum_ee: float = 0
    count: int = 0
    j_first: int = 0
    j_last: int = 0
    first_link: int = 0
    members: list[int] = field(default_factory=list)

    def restart(self, j: int, e: float, ee: float, link: list[int], last_link: int) -> None:
        self.min_eval = self.max_eval = self.sum_eval = e
        self.min_ee = self.max_ee = self.sum_ee = ee
        self.count = 1
        self.j_first = self.j_last = j
        self.first_link = j
        link[j] = last_link
        self.members = [j]

    def extend(self, j: int, e: float, ee: float, link: list[int], last_link: int) -> None:
        if self.count == 0:
            self.restart(j, e, ee, link, last_link)
            return
        self.min_eval = min(self.min_eval, e)
        self.max_eval = max(self.max_eval, e)
        self.sum_eval += e
        self.min_ee = min(self.min_ee, ee)
        self.max_ee = max(self.max_ee, ee)
        self.sum_ee += ee
        self.count += 1
        self.j_last = j
        link[j] = self.first_link
        self.first_link = j
        self.members.append(j)

    @property
    def mean_eval(self) -> float:
        return self.sum_eval / self.count

    @property
    def mean_ee(self) -> float:
        return self.sum_ee / self.count


def interpolate_cutoff(F: float, lo: float, mean: float, hi: float) -> float:
    """Percentile-style cutoff: F=0 -> lo, F=.5 -> mean, F=1 -> hi, linear in between."""
    if not 0 <= F <= 1:
        raise ValueError(f"F must lie in [0, 1], got {F}")
    if not lo <= mean <= hi:
        raise ValueError(f"need min <= mean <= max, got {lo}, {mean}, {hi}")
    if F >= 0.5:
        return mean + 2 * (F - 0.5) * (hi - mean)
    return lo + 2 * F * (mean - lo)


def _clamped_mean(total: float, count: int, lo: float, hi: float) -> float:
    return min(max(total / count, lo), hi)


class DoublePassAscent(AlternatingAscent):
    def __init__(self, provider, config: AAConfig | None = None, dp: DoublePassConfig | None = None, **kw):
        super().__init__(provider, config, **kw)
        self.dp = dp or DoublePassConfig()
        self.last_link = provider.n + 1
        self.link = [0] * (provider.n + 2)
        self.stats: PassStats | None = None

    # first pass -------------------------------------------------------

    def first_pass(self) -> tuple[ScanResult, PassStats]:
        st = self.state
        mem = st.memory
        evals, ee, tabu, locked = st.evals, st.ee, st.tabu_iter, st.locked
        it = st.iter
        thr = mem.threshold_r if mem.s else POS_INF
        s2_cut = mem.eebase - thr
        xo = st.xo_hash
        target = st.xo_star
        post = not st.ascent
        link, last = self.link, self.last_link
        res = ScanResult()
        ps = PassStats()
        cond1 = s1 = aspiration = False
        k = 0
        for j in range(1, st.n + 1):
            e = evals[j]
            if xo + e > target:
                aspiration = True
                k = j
                target = xo + e
            if aspiration:
                continue
            ej = ee[j]
            if e > 0:
                if not (tabu[j] < it or ej >= thr):
                    continue
                if not cond1:
                    cond1 = True
                    s1 = ej >= thr
                    ps.restart(j, e, ej, link, last)
                elif not s1 and ej >= thr:
                    s1 = True
                    ps.restart(j, e, ej, link, last)
                elif s1 and ej < thr:
                    continue
                else:
                    ps.extend(j, e, ej, link, last)
                k = j
            elif post and not cond1:
                if ej <= s2_cut:
                    if not locked[j]:
                        res.status_count2 += 1
                        res.s2_vars.append(j)
                        st.last_vbl = j
                elif tabu[j] < it:
                    res.condition2 = True
                    ps.extend(j, e, ej, link, last)
                    k = j
        res.aspiration = aspiration
        res.condition1 = cond1
        res.s1 = s1 and not aspiration
        res.k = k
        res.target = target
        return res, ps

    # second pass ------------------------------------------------------

    def is_candidate(self, j: int, res: ScanResult) -> bool:
        """Membership test for the candidate class that governs this iteration."""
        st = self.state
        mem = st.memory
        e, ej = st.evals[j], st.ee[j]
        thr = mem.threshold_r if mem.s else POS_INF
        if res.s1:
            return e > 0 and ej >= thr
        if res.condition1:
            return e > 0 and (st.tabu_iter[j] < st.iter or ej >= thr)
        return (
            not st.ascent
            and e <= 0
            and ej > mem.eebase - thr
            and st.tabu_iter[j] < st.iter
        )

    def cutoff(self, ps: PassStats) -> float:
        F = self.dp.F
        if self.dp.version == 1:
            lo, hi = ps.min_eval, ps.max_eval
            c = interpolate_cutoff(F, lo, _clamped_mean(ps.sum_eval, ps.count, lo, hi), hi)
        else:
            lo, hi = ps.min_ee, ps.max_ee
            c = interpolate_cutoff(F, lo, _clamped_mean(ps.sum_ee, ps.count, lo, hi), hi)
        # never let rounding push the cutoff past every candidate
        return min(c, hi)

    def second_pass(self, res: ScanResult, ps: PassStats) -> int:
        st = self.state
        evals, ee = st.evals, st.ee
        cut = self.cutoff(ps)
        v1 = self.dp.version == 1
        best = NEG_INF
        k = 0
        if self.dp.use_list:
            # list runs from the highest index down: first hit wins ties
            j = ps.first_link
            while j < self.last_link:
                score, gate = (ee[j], evals[j]) if v1 else (evals[j], ee[j])
                if gate >= cut and score > best:
                    best, k = score, j
                j = self.link[j]
        else:
            for j in range(ps.j_first, ps.j_last + 1):
                if not self.is_candidate(j, res):
                    continue
                score, gate = (ee[j], evals[j]) if v1 else (evals[j], ee[j])
                if gate >= cut and score >= best:
                    best, k = score, j
        # the cutoff is clamped to the candidate maximum, so this only guards rounding
        return k or res.k

    def scan(self) -> ScanResult:
        res, ps = self.first_pass()
        self.stats = ps
        if res.k > 0 and not res.aspiration:
            res.k = self.second_pass(res, ps)
            res.stats = {
                "min": ps.min_eval if self.dp.version == 1 else ps.min_ee,
                "mean": (ps.mean_eval if self.dp.version == 1 else ps.mean_ee),
                "max": ps.max_eval if self.dp.version == 1 else ps.max_ee,
                "cutoff": self.cutoff(ps),
                "list_len": ps.count,
            }
        return res

    def list_members(self) -> list[int]:
        """Candidates in list order (most recently linked first)."""
        out, j = [], self.stats.first_link if self.stats else 0
        while 0 < j < self.last_link:
            out.append(j)
            j = self.link[j]
        return out


def run_double_pass(provider, config: AAConfig | None = None, dp: DoublePassConfig | None = None, **kw):
    return DoublePassAscent(provider, config, dp, **kw).run()


__all__ = [
    "DoublePassAscent",
    "DoublePassConfig",
    "PassStats",
    "interpolate_cutoff",
    "run_double_pass",
]
