"""Plain one-flip tabu search, used as a reference baseline.

Each iteration flips the best move: the largest Eval over the non-tabu
variables, or over a tabu variable whose flip beats the best objective
found so far (aspiration).  Ties go to the lowest index.  A flipped
variable stays tabu for a tenure drawn uniformly from
[tenure_low, tenure_high].

Optional *tabu-free aspiration*.  Once ``tabu_range`` iterations have
passed since the last tabu-free solution, restrictions are suspended
whenever the current objective is within ``xo_tolerance`` of the best.
The search then climbs to a local optimum ignoring tabu marks.  That
optimum is a new tabu-free solution, and afterwards the old marks apply
again.  Tabu marks are absolute iteration numbers, so they are simply
left untouched while restrictions are suspended.  The search also starts
suspended, which makes the first local optimum tabu-free too.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .engine import RunResult, TraceRecord
from .qubo import EvaluationProvider


@dataclass(frozen=True)
class TabuConfig:
    tenure_low: int = 7
    tenure_high: int = 12
    max_iter: int = 10_000
    seed: int = 0
    tabu_free: bool = False
    tabu_range: int = 100
    xo_tolerance: float = 0
    trace: bool = False

    def __post_init__(self) -> None:
        if not 1 <= self.tenure_low <= self.tenure_high:
            raise ValueError("need 1 <= tenure_low <= tenure_high")
        if self.max_iter < 0:
            raise ValueError("max_iter must be >= 0")
        if self.tabu_range < 1:
            raise ValueError("tabu_range must be >= 1")
        if self.tabu_free and self.tabu_range <= self.tenure_high:
            raise ValueError("tabu_range must exceed tenure_high")
        if self.xo_tolerance < 0:
            raise ValueError("xo_tolerance must be >= 0")


@dataclass
class TabuSearch:
    provider: EvaluationProvider
    config: TabuConfig = field(default_factory=TabuConfig)

    def __post_init__(self) -> None:
        p = self.provider
        self.rng = np.random.default_rng(self.config.seed)
        self.tabu_iter = [0] * (p.n + 1)
        self.iter = 0
        self.xo_star = p.objective
        self.x_star = p.assignment()
        self.local_optima = 0
        self.tabu_free_solutions = 0
        self.tabu_free_iter = 0
        self.suspended = self.config.tabu_free
        self.trace: list[TraceRecord] = []

    def _choose(self) -> tuple[int, str]:
        p = self.provider
        evals, tabu, it = p.evals, self.tabu_iter, self.iter
        xo, best = p.objective, self.xo_star
        k, best_e, path = 0, float("-inf"), ""
        for j in range(1, p.n + 1):
            e = evals[j]
            if e <= best_e:
                continue
            if self.suspended:
                k, best_e, path = j, e, "free"
            elif tabu[j] < it:
                k, best_e, path = j, e, "best"
            elif xo + e > best:
                k, best_e, path = j, e, "aspiration"
        return k, path

    def step(self) -> str:
        p = self.provider
        cfg = self.config
        self.iter += 1
        event = ""
        at_optimum = max(p.evals[1:]) <= 0
        if at_optimum:
            self.local_optima += 1
            if self.suspended:
                self.suspended = False
                self.tabu_free_iter = self.iter
                self.tabu_free_solutions += 1
                event = "tabu-free"
            else:
                event = "local-opt"
        if (
            cfg.tabu_free
            and not self.suspended
            and self.iter >= self.tabu_free_iter + cfg.tabu_range
            and p.objective > self.xo_star - cfg.xo_tolerance
        ):
            self.suspended = True
            event = (event + "|suspend").lstrip("|")
        if self.suspended and at_optimum and event.endswith("suspend"):
            # suspended right at an optimum: it is already tabu-free
            self.suspended = False
            self.tabu_free_iter = self.iter
            self.tabu_free_solutions += 1
            event += "|tabu-free"
        k, path = self._choose()
        if k == 0:
            self._record(0, 0, event, path, False)
            return event
        was_tabu = self.tabu_iter[k] >= self.iter
        e = p.evals[k]
        p.flip(k)
        self.tabu_iter[k] = self.iter + int(self.rng.integers(cfg.tenure_low, cfg.tenure_high + 1))
        if p.objective > self.xo_star:
            self.xo_star = p.objective
            self.x_star = p.assignment()
        self._record(k, e, event, path, was_tabu)
        return event

    def _record(self, k: int, e: float, event: str, path: str, was_tabu: bool) -> None:
        if not self.config.trace:
            return
        self.trace.append(
            TraceRecord(
                iter=self.iter,
                phase="free" if self.suspended else "tabu",
                k=k,
                eval_k=e,
                xo=self.provider.objective,
                xo_star=self.xo_star,
                status_event=event,
                trigger_fired=False,
                path=path,
                was_tabu=was_tabu,
            )
        )

    def run(self, max_iter: int | None = None) -> RunResult:
        limit = self.config.max_iter if max_iter is None else max_iter
        t0 = time.perf_counter()
        for _ in range(limit):
            self.step()
        return RunResult(
            best_objective=self.xo_star,
            best_assignment=list(self.x_star),
            iterations=self.iter,
            local_optima_count=self.local_optima,
            ascents_launched=self.tabu_free_solutions,
            trigger_firings=0,
            wall_time=time.perf_counter() - t0,
            config=asdict(self.config),
            trace=self.trace,
        )


def run_tabu(provider: EvaluationProvider, config: TabuConfig | None = None) -> RunResult:
    return TabuSearch(provider, config or TabuConfig()).run()
