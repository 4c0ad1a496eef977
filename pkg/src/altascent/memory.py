"""Exponential-extrapolation (EE) memory over recent local optima.

Each variable j carries ``ee1[j]``: a weighted sum, over the last ``Q``
recorded local optima, of the value x_j had there.  The newest optimum
gets the largest weight.  ``ee0 = eebase - ee1`` is the matching sum for
value 0, and the *EE view* of a variable is whichever of the two belongs
to its current value.  So a large view means "this variable has held its
current value in many recent optima".

Weights follow w(1) = 1 and w(q+1) = alpha*w(q) + beta*q + gamma, and w(Q)
goes to the newest optimum.  With beta = gamma = 0 the weights are powers
of alpha.  Then the memory can be refreshed inductively, without storing
past optima: every stored sum is divided by alpha and the new optimum is
added at the top weight.  In integer mode (alpha = 2) that division is a
floor division, which drops the optimum that falls out of the window
exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

Number = int | float

ACCEPTABLE_Q_LIMIT = 20


@dataclass(frozen=True)
class EEConfig:
    """Window length ``Q``, recency depth ``r`` and the weight recurrence."""

    Q: int = 20
    r: int = 10
    alpha: float = 2
    beta: float = 0
    gamma: float = 0
    arithmetic: str = "int"

    def __post_init__(self) -> None:
        if self.Q < 1:
            raise ValueError(f"Q must be >= 1, got {self.Q}")
        if not 1 <= self.r <= self.Q:
            raise ValueError(f"r must satisfy 1 <= r <= Q, got r={self.r}, Q={self.Q}")
        if self.arithmetic not in ("int", "real"):
            raise ValueError(f"arithmetic must be 'int' or 'real', got {self.arithmetic!r}")
        if self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if self.arithmetic == "int":
            if self.alpha != 2 or self.beta != 0 or self.gamma != 0:
                raise ValueError("integer arithmetic requires alpha=2, beta=gamma=0")
            if self.Q > 62:
                raise ValueError(f"integer arithmetic requires Q <= 62, got {self.Q}")

    @property
    def integer(self) -> bool:
        return self.arithmetic == "int"

    @property
    def geometric(self) -> bool:
        """True when the inductive refresh is valid (beta = gamma = 0)."""
        return self.beta == 0 and self.gamma == 0


def weights(cfg: EEConfig, count: int | None = None) -> list[Number]:
    """[w(1), ..., w(count)] by the recurrence; ``count`` defaults to Q."""
    count = cfg.Q if count is None else count
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if cfg.integer:
        return [1 << (q - 1) for q in range(1, count + 1)]
    out: list[Number] = [1.0]
    for q in range(1, count):
        out.append(cfg.alpha * out[-1] + cfg.beta * q + cfg.gamma)
    return out


def weight(cfg: EEConfig, q: int) -> Number:
    if not 1 <= q <= cfg.Q:
        raise ValueError(f"q must lie in 1..{cfg.Q}, got {q}")
    return weights(cfg, q)[-1]


def threshold(cfg: EEConfig) -> Number:
    """Sum of the ``r`` largest weights w(Q-r+1) + ... + w(Q)."""
    w = weights(cfg)
    return sum(w[cfg.Q - cfg.r :])


def acceptable_vectors(cfg: EEConfig) -> list[tuple[int, ...]]:
    """All length-Q histories (newest first) whose weighted sum reaches the threshold.

    Entry ``i`` of a history is the value in the optimum ``i`` steps back,
    and it is weighted by w(Q - i).
    """
    if cfg.Q > ACCEPTABLE_Q_LIMIT:
        raise ValueError(f"enumeration needs Q <= {ACCEPTABLE_Q_LIMIT}, got {cfg.Q}")
    w = weights(cfg)
    thr = threshold(cfg)
    top_first = w[::-1]
    out = []
    for v in itertools.product((1, 0), repeat=cfg.Q):
        if sum(wi for wi, bit in zip(top_first, v) if bit) >= thr:
            out.append(v)
    return out


@dataclass
class EEMemory:
    """Per-variable EE sums plus the shared base and recency thresholds.

    Per-variable data is stored 0-based; methods take 1-based indices.
    """

    config: EEConfig
    ee1: list[Number]
    eebase: Number
    threshold_o: Number
    threshold_r: Number
    s: int = 0
    _top: Number = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._top = weight(self.config, self.config.Q)

    @classmethod
    def fresh(cls, cfg: EEConfig, n: int) -> "EEMemory":
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        zero: Number = 0 if cfg.integer else 0.0
        top = weight(cfg, cfg.Q)
        thr = threshold(cfg)
        return cls(cfg, [zero] * n, top, thr, min(top, thr), 0)

    @property
    def n(self) -> int:
        return len(self.ee1)

    @property
    def top_weight(self) -> Number:
        return self._top

    def _refresh_threshold(self) -> None:
        self.threshold_r = min(self.eebase, self.threshold_o)

    def _check_x(self, x: Sequence[int]) -> None:
        if len(x) != self.n:
            raise ValueError(f"assignment has length {len(x)}, expected {self.n}")

    def record_local_optimum(self, x: Sequence[int]) -> None:
        """Fold a new local optimum into the memory (inductive form)."""
        cfg = self.config
        if not cfg.geometric:
            raise ValueError("inductive refresh needs beta = gamma = 0; use accumulate_prefix")
        self._check_x(x)
        top = self._top
        if cfg.integer:
            self.ee1 = [(top if b else 0) + e // 2 for b, e in zip(x, self.ee1)]
            base = self.eebase // 2
        else:
            a = cfg.alpha
            self.ee1 = [(top if b else 0.0) + e / a for b, e in zip(x, self.ee1)]
            base = self.eebase / a
        # The starting base is provisional: the first optimum carries the top
        # weight alone, so that eebase is always the total weight of the
        # optima actually recorded.
        self.eebase = top if self.s == 0 else top + base
        self.s += 1
        self._refresh_threshold()

    def accumulate_prefix(self, x: Sequence[int]) -> None:
        """Warm-up path for the first Q optima, valid for any (alpha, beta, gamma).

        The q-th recorded optimum gets weight w(q), so after Q recordings
        the sums equal the full weighted definition.
        """
        if self.s >= self.config.Q:
            raise ValueError(f"prefix accumulation is only valid for the first Q={self.config.Q} optima")
        self._check_x(x)
        wq = weight(self.config, self.s + 1)
        self.ee1 = [e + (wq if b else 0) for b, e in zip(x, self.ee1)]
        self.eebase = wq if self.s == 0 else self.eebase + wq
        self.s += 1
        self._refresh_threshold()

    def ee_value(self, j: int, bit: int) -> Number:
        e = self.ee1[j - 1]
        return e if bit else self.eebase - e

    def view(self, bits: Sequence[int]) -> list[Number]:
        """EE view of every variable for a 0-based assignment."""
        base = self.eebase
        return [e if b else base - e for b, e in zip(bits, self.ee1)]

    def meets_recency_threshold(self, j: int, bit: int) -> bool:
        return self.ee_value(j, bit) >= self.threshold_r

    def complement_ee(self, value: Number) -> Number:
        return self.eebase - value

    def complement_threshold(self) -> Number:
        """EE views at or below this value certify the opposite of the threshold test."""
        return self.eebase - self.threshold_r

    def same_as_last_optimum(self, j: int, bit: int) -> bool:
        """Whether ``bit`` equals x_j in the newest recorded optimum.

        Needs alpha = 2: only then does the top weight exceed the sum of
        every older weight.
        """
        if self.config.alpha != 2 or not self.config.geometric:
            raise ValueError("same_as_last_optimum requires alpha=2, beta=gamma=0")
        if self.s == 0:
            raise ValueError("no local optimum has been recorded")
        return self.ee_value(j, bit) >= self._top

