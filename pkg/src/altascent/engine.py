"""Alternating Ascent: tabu search guided by exponential-extrapolation memory.

The search alternates between two phases:

* **Ascent.**  Improving flips are taken until a local optimum is reached.
  When a variable is being *held* (kept tabu from the previous phase), the
  first stop is a *conditional* optimum.  The hold is then released and
  the ascent goes on to a true local optimum, which is recorded in the EE
  memory.
* **Post-ascent.**  The search moves away from the optimum.  Every
  flipped variable becomes tabu, and moves are scored by evaluation and
  by EE view together.  Two kinds of variable are tracked:

  - *S1*: improving and carrying a high EE view, i.e. it kept its value
    across the recent optima.  Such a variable may be flipped even while
    tabu, and each such flip is counted.
  - *S2*: moved away from the last optimum, with a low EE view and
    Eval <= 0.  These are counted on every scan.

  Once the counts reach ``trigger`` a new ascent is launched, holding the
  most recent status variable tabu.  That forces the next optimum to
  differ from the ``r`` most recent ones.

Per-variable state lives in 1-based padded lists (slot 0 is a dummy).
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Callable, Sequence

from .choice import (
    NEG_INF,
    CandidateTracker,
    ChoiceConfig,
    condition1_choice,
    condition2_choice,
    primary_dominates,
    weighted_eval,
)
from .memory import EEConfig, EEMemory
from .myopic import SCHEDULES, MCState, default_capacity
from .qubo import EvaluationProvider

LARGE = 2**31


class Event(str, Enum):
    ASCENT_LAUNCHED = "launch"
    TRIGGER_FIRED = "trigger"
    CONDITIONAL_LOCAL_OPT = "conditional-opt"
    TRUE_LOCAL_OPT = "local-opt"
    TABU_RELEASED = "release"


class Status(str, Enum):
    NONE = "-"
    S_PLUS = "S+"
    S1 = "S1"
    S2 = "S2"


class Release(str, Enum):
    """What stays tabu when a new ascent is launched."""

    LAST = "last"  # only the last status variable
    ALL = "all"  # nothing
    STATUS = "status"  # every counted S1/S2 variable


@dataclass(frozen=True)
class AAConfig:
    ee: EEConfig = field(default_factory=EEConfig)
    choice: ChoiceConfig = field(default_factory=ChoiceConfig)
    trigger: int = 5
    max_iter: int = 10_000
    tenure: int = LARGE
    small: int = 0
    n_recent: int = 3
    release: Release = Release.LAST
    mc_schedule: str | None = None
    mc_capacity: int | None = None
    mc_skip_improving: bool = False  # leave Condition-1 moves off the MC list
    seed: int = 0
    check: bool = False
    trace: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "release", Release(self.release))
        if self.trigger < 1:
            raise ValueError(f"trigger must be >= 1, got {self.trigger}")
        if self.max_iter < 0:
            raise ValueError("max_iter must be >= 0")
        if self.tenure < 1:
            raise ValueError("tenure must be >= 1")
        if self.small not in (0, 1, 2):
            raise ValueError(f"small must be 0, 1 or 2, got {self.small}")
        if self.n_recent < 0:
            raise ValueError("n_recent must be >= 0")
        if not self.ee.geometric:
            raise ValueError("the engine needs beta = gamma = 0 EE weights")
        if self.mc_schedule is not None and self.mc_schedule not in SCHEDULES:
            raise ValueError(f"unknown MC schedule {self.mc_schedule!r}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["release"] = self.release.value
        d["choice"]["rule"] = self.choice.rule.value
        return d


@dataclass
class ScanResult:
    k: int = 0
    aspiration: bool = False
    condition1: bool = False
    condition2: bool = False
    s1: bool = False
    status_count2: int = 0
    s2_vars: list[int] = field(default_factory=list)
    target: float = NEG_INF  # objective after the aspiration move
    stats: dict | None = None


@dataclass
class TraceRecord:
    iter: int
    phase: str
    k: int
    eval_k: float
    xo: float
    xo_star: float
    status_event: str
    trigger_fired: bool
    path: str = ""
    was_tabu: bool = False
    held: int = 0
    extra: dict | None = None


@dataclass
class RunResult:
    best_objective: float
    best_assignment: list[int]
    iterations: int
    local_optima_count: int
    ascents_launched: int
    trigger_firings: int
    wall_time: float
    config: dict
    trace: list[TraceRecord] = field(default_factory=list, repr=False)

    def summary(self) -> dict:
        d = asdict(self)
        d.pop("trace")
        return d


@dataclass
class SearchState:
    """Mutable search state.  ``bits``/``evals`` are shared with the provider."""

    n: int
    bits: list[int]
    evals: list[float]
    ee: list[float]
    tabu_iter: list[int]
    locked: list[bool]
    memory: EEMemory
    xo_hash: float
    xo_star: float
    x_star: list[int]
    iter: int = 0
    ascent: bool = True
    last_vbl: int = 0
    held: list[int] = field(default_factory=list)
    status_count1: int = 0
    recent: list[int] = field(default_factory=list)
    last_optimum: list[int] | None = None


class AlternatingAscent:
    """Single-pass Alternating Ascent over an evaluation provider.

    ``on_event(engine, event, info)`` is called for every phase event; tests
    use it to audit the search.
    """

    def __init__(
        self,
        provider: EvaluationProvider,
        config: AAConfig | None = None,
        *,
        memory: EEMemory | None = None,
        on_event: Callable[["AlternatingAscent", Event, dict], None] | None = None,
    ):
        self.provider = provider
        self.config = cfg = config or AAConfig()
        n = provider.n
        mem = memory if memory is not None else EEMemory.fresh(cfg.ee, n)
        if mem.n != n:
            raise ValueError(f"memory has {mem.n} variables, provider has {n}")
        view = mem.view(provider.bits[1:])
        self.state = SearchState(
            n=n,
            bits=provider.bits,
            evals=provider.evals,
            ee=[0, *view],
            tabu_iter=[0] * (n + 1),
            locked=[False] * (n + 1),
            memory=mem,
            xo_hash=provider.objective,
            xo_star=provider.objective,
            x_star=provider.assignment(),
            recent=[0] * cfg.n_recent,
        )
        self.mc: MCState | None = None
        if cfg.mc_schedule is not None:
            cap = cfg.mc_capacity or default_capacity(n)
            self.mc = MCState(n, cap, SCHEDULES[cfg.mc_schedule])
        self.on_event = on_event
        self.trace: list[TraceRecord] = []
        self.local_optima = 0
        self.launches = 0
        self.trigger_firings = 0
        self._events: list[str] = []
        self._fired = False

    # ------------------------------------------------------------------
    # scan
    # ------------------------------------------------------------------

    def scan(self) -> ScanResult:
        st = self.state
        ch = self.config.choice
        mem = st.memory
        evals, ee, tabu, locked = st.evals, st.ee, st.tabu_iter, st.locked
        it = st.iter
        # recency tests only mean something once an optimum is on record
        thr = mem.threshold_r if mem.s else float("inf")
        eebase = mem.eebase
        s2_cut = eebase - thr
        xo = st.xo_hash
        target = st.xo_star
        post = not st.ascent
        res = ScanResult()
        t = CandidateTracker()
        aspiration = cond1 = s1 = False
        k_asp = 0
        for j in range(1, st.n + 1):
            e = evals[j]
            if xo + e > target:
                aspiration = True
                k_asp = j
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
                    t.admit(j, e, ej, weighted_eval(e, ej, ch.W1, eebase))
                elif not s1 and ej >= thr:
                    s1 = True
                    t.admit(j, e, ej, weighted_eval(e, ej, ch.W1, eebase))
                elif s1 and ej < thr:
                    continue
                elif primary_dominates(e, ej, t):
                    t.admit(j, e, ej, weighted_eval(e, ej, ch.W1, eebase))
                else:
                    condition1_choice(
                        j, e, ej, t, ch, s1_active=s1, threshold_r=thr, eebase=eebase
                    )
            elif post and not cond1:
                if ej <= s2_cut:
                    if not locked[j]:
                        res.status_count2 += 1
                        res.s2_vars.append(j)
                        st.last_vbl = j
                elif tabu[j] < it:
                    res.condition2 = True
                    if primary_dominates(e, ej, t):
                        t.admit(j, e, ej, weighted_eval(e, ej, ch.W2, eebase))
                    else:
                        condition2_choice(j, e, ej, t, ch, eebase=eebase)
        res.aspiration = aspiration
        res.condition1 = cond1
        res.s1 = s1 and not aspiration
        res.k = k_asp if aspiration else t.k
        res.target = target
        return res

    # ------------------------------------------------------------------
    # helpers
    # ------------------------------------------------------------------

    def _emit(self, event: Event, **info) -> None:
        self._events.append(event.value)
        if self.on_event is not None:
            self.on_event(self, event, info)

    def _flip(self, k: int) -> float:
        st = self.state
        e = st.evals[k]
        self.provider.flip(k)
        st.xo_hash = self.provider.objective
        st.ee[k] = st.memory.eebase - st.ee[k]
        if st.xo_hash > st.xo_star:
            st.xo_star = st.xo_hash
            st.x_star = self.provider.assignment()
        return e

    def _certified(self, j: int) -> bool:
        """Whether variable j provably differs from the r most recent optima."""
        st = self.state
        if j == 0 or st.memory.s == 0:
            return False
        return st.ee[j] <= st.memory.complement_threshold()

    def _clear_phase_counters(self) -> None:
        st = self.state
        st.status_count1 = 0
        for j in range(st.n + 1):
            st.locked[j] = False

    def _launch(self, held_tenure: int, s2_vars: Sequence[int], trigger: bool) -> None:
        """Start a new ascent from the post-ascent phase."""
        st = self.state
        cfg = self.config
        if self.mc is not None:
            self.mc.reset()
        held: list[int] = []
        if cfg.release is Release.LAST:
            if self._certified(st.last_vbl):
                held = [st.last_vbl]
        elif cfg.release is Release.STATUS:
            cand = [j for j in range(1, st.n + 1) if st.locked[j]] + list(s2_vars)
            held = sorted({j for j in cand if self._certified(j)})
        st.ascent = True
        for j in range(st.n + 1):
            st.tabu_iter[j] = 0
        for j in held:
            st.tabu_iter[j] = held_tenure
        st.held = held
        st.last_vbl = held[-1] if held else 0
        st.recent = [0] * cfg.n_recent
        self._clear_phase_counters()
        self.launches += 1
        if trigger:
            self.trigger_firings += 1
            self._fired = True
            self._emit(Event.TRIGGER_FIRED, held=list(held))
        self._emit(Event.ASCENT_LAUNCHED, held=list(held))

    def _mc_after_flip(self, k: int, s1: bool, improving: bool) -> None:
        mc = self.mc
        if mc is None or s1 or (improving and self.config.mc_skip_improving):
            return
        mc.add(k)
        if not mc.drop_due():
            return
        st = self.state
        for v in mc.drop():
            was_tabu = st.tabu_iter[v] >= st.iter
            e = self._flip(v)
            st.tabu_iter[v] = self.config.small + st.iter
            if st.held and v in st.held:
                self._void_hold(v)
            self._record(v, e, "drop", was_tabu)

    def _void_hold(self, j: int) -> None:
        st = self.state
        st.held = [h for h in st.held if h != j]
        if st.last_vbl == j:
            st.last_vbl = st.held[-1] if st.held else 0

    def _record(
        self, k: int, eval_k: float, path: str, was_tabu: bool, extra: dict | None = None, phase: str | None = None
    ) -> None:
        if not self.config.trace:
            return
        st = self.state
        if phase is None:
            phase = "ascent" if st.ascent else "post"
        self.trace.append(
            TraceRecord(
                iter=st.iter,
                phase=phase,
                k=k,
                eval_k=eval_k,
                xo=st.xo_hash,
                xo_star=st.xo_star,
                status_event="|".join(self._events),
                trigger_fired=self._fired,
                path=path,
                was_tabu=was_tabu,
                held=st.last_vbl,
                extra=extra,
            )
        )

    # ------------------------------------------------------------------
    # post-iteration update
    # ------------------------------------------------------------------

    def post_update(self, res: ScanResult) -> list[str]:
        st = self.state
        cfg = self.config
        k = res.k
        # trace rows carry the phase the iteration started in
        phase = "ascent" if st.ascent else "post"
        if k > 0:
            if not res.condition1 and not res.aspiration and st.status_count1 + res.status_count2 >= cfg.trigger:
                self._launch(LARGE, res.s2_vars, trigger=True)
                self._record(0, 0, "", False, res.stats, phase)
                return self._events
            was_tabu = st.tabu_iter[k] >= st.iter
            path = "aspiration" if res.aspiration else "s1" if res.s1 else "cond1" if res.condition1 else "cond2"
            eval_k = self._flip(k)
            if st.ascent:
                if st.held and k in st.held:
                    self._void_hold(k)
                if st.recent:
                    st.recent = [k, *st.recent[:-1]]
            else:
                st.tabu_iter[k] = st.iter + cfg.tenure
                if eval_k > 0:
                    st.last_vbl = k
                    res.status_count2 = 0
                if res.aspiration or res.s1:
                    st.status_count1 += 1
                    if res.s1:
                        st.locked[k] = True
                if st.status_count1 + res.status_count2 >= cfg.trigger:
                    self._launch(LARGE, res.s2_vars, trigger=True)
            self._record(k, eval_k, path, was_tabu, res.stats, phase)
            self._mc_after_flip(k, res.s1, res.condition1)
            return self._events

        if st.ascent:
            if st.held:
                # conditional optimum: release the hold and keep ascending
                released = list(st.held)
                self._emit(Event.CONDITIONAL_LOCAL_OPT, held=released, bits=list(st.bits[1:]))
                for j in released:
                    st.tabu_iter[j] = 0
                st.held = []
                st.last_vbl = 0
            elif any(e > 0 for e in st.evals[1:]):
                # only short tabu marks block an improving move; lift them
                for j in range(st.n + 1):
                    st.tabu_iter[j] = 0
                self._emit(Event.TABU_RELEASED)
            else:
                self._true_local_optimum()
        else:
            self._launch(st.iter + cfg.tenure, res.s2_vars, trigger=False)
        self._record(0, 0, "", False, res.stats, phase)
        return self._events

    def _true_local_optimum(self) -> None:
        st = self.state
        cfg = self.config
        if self.mc is not None:
            self.mc.reset()
        st.ascent = False
        x = list(st.bits[1:])
        st.memory.record_local_optimum(x)
        st.last_optimum = x
        st.ee = [0, *st.memory.view(x)]
        for j in st.recent:
            if j:
                st.tabu_iter[j] = st.iter + cfg.tenure
        self._clear_phase_counters()
        self.local_optima += 1
        self._emit(Event.TRUE_LOCAL_OPT, bits=x, objective=st.xo_hash)

    # ------------------------------------------------------------------
    # driving
    # ------------------------------------------------------------------

    def step(self, forced: int | None = None) -> list[str]:
        """One iteration.  ``forced`` overrides the scan's choice of move."""
        st = self.state
        st.iter += 1
        self._events = []
        self._fired = False
        res = self.scan()
        if forced is not None:
            if not 1 <= forced <= st.n:
                raise ValueError(f"forced move {forced} out of range")
            e, ee = st.evals[forced], st.ee[forced]
            res.k = forced
            res.aspiration = st.xo_hash + e > st.xo_star
            res.s1 = st.memory.s > 0 and e > 0 and ee >= st.memory.threshold_r and not res.aspiration
        events = self.post_update(res)
        if self.config.check:
            self.check_invariants()
        return events

    def run(self, max_iter: int | None = None) -> RunResult:
        limit = self.config.max_iter if max_iter is None else max_iter
        t0 = time.perf_counter()
        for _ in range(limit):
            self.step()
        return RunResult(
            best_objective=self.state.xo_star,
            best_assignment=list(self.state.x_star),
            iterations=self.state.iter,
            local_optima_count=self.local_optima,
            ascents_launched=self.launches,
            trigger_firings=self.trigger_firings,
            wall_time=time.perf_counter() - t0,
            config=self.config.to_dict(),
            trace=self.trace,
        )

    # ------------------------------------------------------------------
    # diagnostics
    # ------------------------------------------------------------------

    def classify_status(self, j: int) -> Status:
        st = self.state
        mem = st.memory
        if mem.s == 0:
            return Status.NONE
        bit = st.bits[j]
        if mem.config.alpha == 2:
            same = mem.same_as_last_optimum(j, bit)
        else:
            same = st.last_optimum is not None and st.last_optimum[j - 1] == bit
        e, ee = st.evals[j], st.ee[j]
        if same and e > 0:
            if ee >= mem.threshold_r:
                return Status.S1
            if st.tabu_iter[j] < st.iter + 1:
                return Status.S_PLUS
            return Status.NONE
        if not st.ascent and not same and e <= 0 and ee <= mem.complement_threshold():
            return Status.S2
        return Status.NONE

    def check_invariants(self) -> None:
        st = self.state
        view = st.memory.view(st.bits[1:])
        tol = 0 if st.memory.config.integer else 1e-9 * st.memory.eebase
        if any(abs(a - b) > tol for a, b in zip(view, st.ee[1:])):
            raise AssertionError("cached EE view disagrees with the memory")
        if st.xo_hash != self.provider.objective:
            raise AssertionError("objective cache out of sync")
        if st.xo_star < st.xo_hash:
            raise AssertionError("best objective fell below the current one")


def run_single_pass(provider: EvaluationProvider, config: AAConfig | None = None, **kw) -> RunResult:
    return AlternatingAscent(provider, config, **kw).run()
