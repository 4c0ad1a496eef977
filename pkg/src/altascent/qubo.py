"""QUBO instances, objective values and one-flip evaluations.

Variables are numbered 1..n.  An assignment is a length-n sequence of 0/1
values where position ``j - 1`` holds variable ``j``.

The search engines work on *providers*: small mutable objects that hold the
current assignment and the flip evaluation of every variable in 1-based
padded lists (slot 0 is an unused dummy), and that keep both up to date
incrementally when a variable is flipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Protocol, Sequence

import numpy as np


@dataclass(frozen=True)
class QuboInstance:
    """Upper-triangular integer QUBO: maximize sum q(j,j) x_j + sum_{i<j} q(i,j) x_i x_j.

    ``coeffs`` maps ``(i, j)`` with ``1 <= i <= j <= n`` to an integer
    coefficient.  Unlisted pairs are zero.
    """

    n: int
    coeffs: Mapping[tuple[int, int], int]
    diag: tuple[int, ...] = field(init=False, repr=False, compare=False)
    neighbors: tuple[tuple[tuple[int, int], ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        clean: dict[tuple[int, int], int] = {}
        for (i, j), q in self.coeffs.items():
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"index ({i}, {j}) out of range 1..{self.n}")
            if i > j:
                raise ValueError(f"coefficient ({i}, {j}) is not upper-triangular")
            if int(q) != q:
                raise ValueError(f"coefficient ({i}, {j}) = {q!r} is not an integer")
            clean[(i, j)] = int(q)
        object.__setattr__(self, "coeffs", clean)

        diag = [0] * (self.n + 1)
        nbrs: list[list[tuple[int, int]]] = [[] for _ in range(self.n + 1)]
        for (i, j), q in clean.items():
            if i == j:
                diag[i] = q
            elif q != 0:
                nbrs[i].append((j, q))
                nbrs[j].append((i, q))
        object.__setattr__(self, "diag", tuple(diag))
        object.__setattr__(self, "neighbors", tuple(tuple(sorted(a)) for a in nbrs))

    @classmethod
    def from_dense(cls, matrix: np.ndarray | Sequence[Sequence[int]]) -> "QuboInstance":
        """Build from an n x n matrix; entries below the diagonal are folded upward."""
        a = np.asarray(matrix)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("matrix must be square")
        n = a.shape[0]
        coeffs: dict[tuple[int, int], int] = {}
        for i in range(n):
            for j in range(i, n):
                q = int(a[i, j]) + (int(a[j, i]) if j != i else 0)
                if q != 0 or i == j:
                    coeffs[(i + 1, j + 1)] = q
        return cls(n, coeffs)

    def coeff(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return self.coeffs.get((i, j), 0)

    def to_dense(self) -> np.ndarray:
        """Upper-triangular int64 matrix (0-based)."""
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for (i, j), q in self.coeffs.items():
            a[i - 1, j - 1] = q
        return a


def _check_assignment(inst: QuboInstance, x: Sequence[int]) -> None:
    if len(x) != inst.n:
        raise ValueError(f"assignment has length {len(x)}, expected {inst.n}")
    for v in x:
        if v not in (0, 1):
            raise ValueError(f"assignment entries must be 0/1, got {v!r}")


def objective(inst: QuboInstance, x: Sequence[int]) -> int:
    _check_assignment(inst, x)
    total = 0
    for (i, j), q in inst.coeffs.items():
        if x[i - 1] and x[j - 1]:
            total += q
    return total


def eval_flip(inst: QuboInstance, x: Sequence[int], j: int) -> int:
    """Change in objective if variable ``j`` (1-based) is complemented."""
    _check_assignment(inst, x)
    if not 1 <= j <= inst.n:
        raise ValueError(f"variable {j} out of range 1..{inst.n}")
    field_ = inst.diag[j] + sum(q for i, q in inst.neighbors[j] if x[i - 1])
    return (1 - 2 * x[j - 1]) * field_


def all_evals(inst: QuboInstance, x: Sequence[int]) -> list[int]:
    """Flip evaluations of every variable; ``result[j - 1]`` is for variable ``j``."""
    return [eval_flip(inst, x, j) for j in range(1, inst.n + 1)]


def update_all_evals(
    inst: QuboInstance, x: Sequence[int], evals: Sequence[int], k: int
) -> list[int]:
    """Evaluations after flipping ``k``.

    ``x`` must already hold the new value of ``k``; ``evals`` are the
    evaluations from before the flip.
    """
    _check_assignment(inst, x)
    out = list(evals)
    delta = 1 if x[k - 1] else -1
    for i, q in inst.neighbors[k]:
        out[i - 1] += (1 - 2 * x[i - 1]) * q * delta
    out[k - 1] = -out[k - 1]
    return out


# ---------------------------------------------------------------------------
# providers
# ---------------------------------------------------------------------------


class EvaluationProvider(Protocol):
    """What the search engines need from a problem.

    ``bits`` and ``evals`` are 1-based padded lists of length n + 1.
    """

    n: int
    bits: list[int]
    evals: list[int]
    objective: float

    def flip(self, k: int) -> None: ...

    def assignment(self) -> list[int]: ...


class QuboProvider:
    """Incremental evaluator for a :class:`QuboInstance`.

    If ``start`` is given, the search runs in complemented coordinates:
    the engine sees every bit as 0 at the start, and engine bit ``j`` stands
    for ``x_j XOR start_j``.  Flip evaluations do not depend on the
    encoding, so only :meth:`assignment` has to translate back.
    """

    def __init__(self, inst: QuboInstance, start: Sequence[int] | None = None):
        self.inst = inst
        self.n = inst.n
        if start is None:
            start = [0] * inst.n
        _check_assignment(inst, start)
        self._mask = [0, *[int(v) for v in start]]
        self._x = list(self._mask)
        self.bits = [0] * (self.n + 1)
        self.evals = [0, *all_evals(inst, start)]
        self.objective = objective(inst, start)
        self.flips = 0

    def flip(self, k: int) -> None:
        x = self._x
        evals = self.evals
        self.objective += evals[k]
        x[k] ^= 1
        self.bits[k] ^= 1
        delta = 1 if x[k] else -1
        for i, q in self.inst.neighbors[k]:
            if x[i]:
                evals[i] -= q * delta
            else:
                evals[i] += q * delta
        evals[k] = -evals[k]
        self.flips += 1

    def assignment(self) -> list[int]:
        return self._x[1:]


def iter_entries(inst: QuboInstance) -> Iterable[tuple[int, int, int]]:
    for (i, j), q in sorted(inst.coeffs.items()):
        yield i, j, q
