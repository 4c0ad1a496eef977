"""Independent reference computations used by the tests.

Nothing here calls into the library's inductive or incremental code paths.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def objective_direct(coeffs: dict, x) -> int:
    """Objective summed straight from the coefficient dictionary."""
    return sum(q * x[i - 1] * x[j - 1] for (i, j), q in coeffs.items())


def flip_delta(coeffs: dict, x, j: int) -> int:
    y = list(x)
    y[j - 1] ^= 1
    return objective_direct(coeffs, y) - objective_direct(coeffs, x)


def recurrence_weights(count: int, alpha, beta, gamma) -> list[Fraction]:
    """w(1) = 1, w(q+1) = alpha*w(q) + beta*q + gamma, in exact rationals."""
    a, b, c = Fraction(alpha), Fraction(beta), Fraction(gamma)
    w = [Fraction(1)]
    for q in range(1, count):
        w.append(a * w[-1] + b * q + c)
    return w


def direct_ee1_int(history: np.ndarray, Q: int) -> tuple[np.ndarray, int]:
    """EE1 and eebase from the Q newest rows of ``history`` (oldest first)."""
    recent = history[-Q:]
    m = len(recent)
    # newest row weighs 2^(Q-1), the one before 2^(Q-2), ...
    w = np.array([1 << (Q - m + i) for i in range(m)], dtype=np.int64)
    return w @ recent, int(w.sum())


def direct_ee1_real(history: np.ndarray, Q: int, alpha: float) -> tuple[np.ndarray, float]:
    """EE1 and eebase over every stored row, weights alpha^(Q-1-age) extended past Q."""
    s = len(history)
    w = float(alpha) ** (Q - s + np.arange(s, dtype=float))
    return w @ history, float(w.sum())


def multiplier_dominates(a1, a2, b1, b2, condition: int) -> bool:
    """Strict dominance of A over B from the multiplier intervals.

    When one candidate is at least as good on both axes the answer is plain
    componentwise dominance.  Otherwise a positive multiplier x must let A
    match B on both axes at once; strict dominance means the feasible
    x-interval has positive length.
    """
    a1, a2, b1, b2 = (Fraction(v) for v in (a1, a2, b1, b2))
    if a1 >= b1 and a2 >= b2:
        return (a1, a2) != (b1, b2)
    if a1 <= b1 and a2 <= b2:
        return False
    if condition == 1:
        if a1 > b1:  # better Eval, worse EE: a1*x >= b1 and a2 >= b2*x
            lo, hi = b1 / a1, a2 / b2
        else:  # worse Eval, better EE: a1 >= b1*x and a2*x >= b2
            lo, hi = b2 / a2, a1 / b1
    else:
        if a1 > b1:  # 0 >= a1 > b1: a1 >= b1*x (b1 < 0) and a2 >= b2*x
            lo, hi = a1 / b1, a2 / b2
        else:  # a1 < b1 <= 0: a1*x >= b1 (a1 < 0) and a2*x >= b2
            lo, hi = b2 / a2, b1 / a1
    return lo < hi
