"""Choice rules for trading off move quality (Eval) against recency (EE).

A scan keeps a :class:`CandidateTracker` with the best candidate seen so far.
A new candidate that is at least as good on both axes (*primary
dominance*) replaces it outright.  Otherwise the configured choice rule
decides.

Condition 1 covers improving moves (Eval > 0) and Condition 2 covers
non-improving moves (Eval <= 0).  In both cases a larger EE view is
preferred.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

NEG_INF = float("-inf")


class Rule(str, Enum):
    WEIGHTED_SUM = "weighted"
    SIMPLE_CUTOFF = "simple-cutoff"
    ADVANCED_CUTOFF = "advanced-cutoff"


@dataclass(frozen=True)
class ChoiceConfig:
    """Rule selection and its parameters.

    ``W1``/``W2`` weight the normalized EE view (EE / eebase) in the
    weighted sum.  ``F`` scales the cutoff used by the cutoff rules.
    ``cutoff_uses_threshold`` raises the Condition-1 cutoff to the recency
    threshold while an S1 candidate is being tracked.
    """

    rule: Rule = Rule.WEIGHTED_SUM
    W1: float = 0.1
    W2: float = 10.0
    F: float = 0.8
    cutoff_uses_threshold: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "rule", Rule(self.rule))
        if self.W1 < 0 or self.W2 < 0:
            raise ValueError("weights W1, W2 must be non-negative")
        if not 0 < self.F < 1:
            raise ValueError(f"F must lie strictly between 0 and 1, got {self.F}")


@dataclass
class CandidateTracker:
    best_eval_w: float = NEG_INF
    best_eval: float = NEG_INF
    best_ee: float = NEG_INF
    max_ee: float = NEG_INF
    k: int = 0

    def admit(self, j: int, eval_j: float, ee_j: float, eval_w: float) -> None:
        """Replace the tracked candidate outright."""
        self.best_eval_w = eval_w
        self.best_eval = eval_j
        self.best_ee = ee_j
        self.max_ee = ee_j
        self.k = j


def weighted_eval(eval_j: float, ee_j: float, w: float, eebase: float) -> float:
    return eval_j + w * ee_j / eebase


def primary_dominates(eval_j: float, ee_j: float, t: CandidateTracker) -> bool:
    return ee_j >= t.max_ee and eval_j >= t.best_eval


def _secondary(j: int, eval_j: float, ee_j: float, t: CandidateTracker) -> bool:
    if ee_j >= t.best_ee and eval_j >= t.best_eval:
        t.best_eval = eval_j
        t.best_ee = ee_j
        t.max_ee = max(t.max_ee, ee_j)
        t.k = j
        return True
    return False


def _weighted(j: int, eval_j: float, ee_j: float, t: CandidateTracker, w: float, eebase: float) -> bool:
    ew = weighted_eval(eval_j, ee_j, w, eebase)
    if ew > t.best_eval_w:
        t.best_eval_w = ew
        t.best_eval = max(t.best_eval, eval_j)
        t.max_ee = max(t.max_ee, ee_j)
        t.k = j
        return True
    return False


def condition1_choice(
    j: int,
    eval_j: float,
    ee_j: float,
    t: CandidateTracker,
    cfg: ChoiceConfig,
    *,
    s1_active: bool,
    threshold_r: float,
    eebase: float,
) -> bool:
    """Consider an improving candidate that does not primarily dominate.

    Returns True if ``j`` became the tracked candidate.
    """
    if eval_j <= 0:
        raise ValueError("Condition 1 candidates must have Eval > 0")
    if cfg.rule is Rule.WEIGHTED_SUM:
        return _weighted(j, eval_j, ee_j, t, cfg.W1, eebase)
    if _secondary(j, eval_j, ee_j, t):
        return True
    cutoff = cfg.F * t.max_ee
    if s1_active and cfg.cutoff_uses_threshold:
        cutoff = max(cutoff, threshold_r)
    if ee_j < cutoff:
        return False
    if cfg.rule is Rule.SIMPLE_CUTOFF:
        ok = eval_j > t.best_eval
    else:
        ok = ee_j * eval_j > t.best_ee * t.best_eval
    if ok:
        t.best_eval = eval_j
        t.best_ee = ee_j
        t.max_ee = max(t.max_ee, ee_j)
        t.k = j
    return ok


def condition2_choice(
    j: int,
    eval_j: float,
    ee_j: float,
    t: CandidateTracker,
    cfg: ChoiceConfig,
    *,
    eebase: float,
) -> bool:
    """Consider a non-improving candidate that does not primarily dominate."""
    if eval_j > 0:
        raise ValueError("Condition 2 candidates must have Eval <= 0")
    if cfg.rule is Rule.WEIGHTED_SUM:
        return _weighted(j, eval_j, ee_j, t, cfg.W2, eebase)
    if _secondary(j, eval_j, ee_j, t):
        return True
    cutoff = t.max_ee / cfg.F
    if ee_j < cutoff:
        return False
    if cfg.rule is Rule.SIMPLE_CUTOFF:
        ok = eval_j > t.best_eval
    else:
        ok = eval_j * t.best_ee > t.best_eval * ee_j
    if ok:
        t.best_eval = eval_j
        t.best_ee = ee_j
        t.max_ee = max(t.max_ee, ee_j)
        t.k = j
    return ok


def tradeoff_dominates(a1: float, a2: float, b1: float, b2: float, condition: int) -> bool:
    """Strict multiplier-based dominance of candidate A = (a1, a2) over B = (b1, b2).

    Component 1 is Eval and component 2 is EE.  Condition 1 requires
    a1, b1 >= 0 and compares products.  Condition 2 requires a1, b1 <= 0
    and compares cross products.  EE components must be non-negative.
    """
    if a2 < 0 or b2 < 0:
        raise ValueError("EE components must be non-negative")
    if condition == 1:
        if a1 < 0 or b1 < 0:
            raise ValueError("Condition 1 needs non-negative evaluations")
        return a1 * a2 > b1 * b2
    if condition == 2:
        if a1 > 0 or b1 > 0:
            raise ValueError("Condition 2 needs non-positive evaluations")
        return a1 * b2 > a2 * b1
    raise ValueError(f"condition must be 1 or 2, got {condition}")
