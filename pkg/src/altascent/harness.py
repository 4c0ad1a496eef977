"""Experiment harness: instance files, seeded generation, exact optima,
evaluation scaling and a scripted replay of a worked example.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, TextIO

import numpy as np

from .engine import AAConfig, AlternatingAscent, Event, Status
from .memory import EEConfig, EEMemory
from .qubo import QuboInstance, iter_entries


class FormatError(ValueError):
    """Malformed instance file."""


# ---------------------------------------------------------------------------
# instance files
# ---------------------------------------------------------------------------
#
# Text format (1-based, '#' starts a comment):
#     n m
#     i j q        (m lines, i <= j)


def parse_qubo(text: str) -> QuboInstance:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            rows.append((lineno, line.split()))
    if not rows:
        raise FormatError("empty instance file")
    lineno, head = rows[0]
    if len(head) != 2:
        raise FormatError(f"line {lineno}: header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise FormatError(f"line {lineno}: header must hold two integers") from None
    if n < 1 or m < 0:
        raise FormatError(f"line {lineno}: need n >= 1 and m >= 0")
    if len(rows) - 1 != m:
        raise FormatError(f"header promises {m} entries, found {len(rows) - 1}")
    coeffs: dict[tuple[int, int], int] = {}
    for lineno, parts in rows[1:]:
        if len(parts) != 3:
            raise FormatError(f"line {lineno}: expected 'i j q'")
        try:
            i, j, q = (int(p) for p in parts)
        except ValueError:
            raise FormatError(f"line {lineno}: entries must be integers") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise FormatError(f"line {lineno}: index out of range 1..{n}")
        if i > j:
            raise FormatError(f"line {lineno}: entry ({i}, {j}) is below the diagonal")
        # repeated pairs accumulate
        coeffs[(i, j)] = coeffs.get((i, j), 0) + q
    return QuboInstance(n, coeffs)


def load_qubo(path: str | Path) -> QuboInstance:
    return parse_qubo(Path(path).read_text())


def dump_qubo(inst: QuboInstance, out: TextIO) -> None:
    entries = list(iter_entries(inst))
    out.write(f"{inst.n} {len(entries)}\n")
    for i, j, q in entries:
        out.write(f"{i} {j} {q}\n")


def serialize_qubo(inst: QuboInstance) -> str:
    buf = io.StringIO()
    dump_qubo(inst, buf)
    return buf.getvalue()


def save_qubo(inst: QuboInstance, path: str | Path) -> None:
    Path(path).write_text(serialize_qubo(inst))


def generate_instance(n: int, density: float, coeff_range: int, seed: int) -> QuboInstance:
    """Random instance from numpy's PCG64 generator.

    Every diagonal entry is stored.  Each pair i < j is stored with
    probability ``density``.  Stored coefficients are uniform integers in
    [-coeff_range, coeff_range].
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= density <= 1:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    if coeff_range < 0:
        raise ValueError("coeff_range must be >= 0")
    rng = np.random.Generator(np.random.PCG64(seed))
    present = rng.random((n, n)) < density
    values = rng.integers(-coeff_range, coeff_range, size=(n, n), endpoint=True)
    coeffs = {}
    for i in range(n):
        coeffs[(i + 1, i + 1)] = int(values[i, i])
        for j in range(i + 1, n):
            if present[i, j]:
                coeffs[(i + 1, j + 1)] = int(values[i, j])
    return QuboInstance(n, coeffs)


# ---------------------------------------------------------------------------
# exact optimum
# ---------------------------------------------------------------------------

BRUTE_FORCE_LIMIT = 22


def brute_force(inst: QuboInstance, chunk_bits: int = 16) -> tuple[int, list[int]]:
    """Exact maximum by enumeration (n <= 22).

    Returns the optimum and the first maximizer in binary counting order,
    where variable 1 is the most significant bit.
    """
    n = inst.n
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_LIMIT}, got {n}")
    q = inst.to_dense()
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    total = 1 << n
    step = 1 << min(n, chunk_bits)
    best_val, best_idx = None, 0
    for start in range(0, total, step):
        idx = np.arange(start, min(start + step, total), dtype=np.int64)
        x = ((idx[:, None] >> shifts) & 1).astype(np.int64)
        vals = np.einsum("bi,ij,bj->b", x, q, x)
        i = int(np.argmax(vals))
        if best_val is None or vals[i] > best_val:
            best_val, best_idx = int(vals[i]), int(idx[i])
    x_best = [(best_idx >> int(s)) & 1 for s in shifts]
    return best_val, x_best


# ---------------------------------------------------------------------------
# scaled evaluations
# ---------------------------------------------------------------------------


def scale_eval(e: float, lo: float, mean: float, hi: float) -> float:
    """Map an evaluation onto 0..100, with lo -> 0, mean -> 50 and hi -> 100.

    A degenerate half-range (mean equal to its end point) maps to 50.
    """
    if not lo <= mean <= hi:
        raise ValueError(f"need min <= mean <= max, got {lo}, {mean}, {hi}")
    if e == mean:
        return 50.0
    if e < mean:
        return 50.0 if mean == lo else 50.0 * (e - lo) / (mean - lo)
    return 50.0 if hi == mean else 50.0 + 50.0 * (e - mean) / (hi - mean)


def unscale_eval(v: float, lo: float, mean: float, hi: float) -> float:
    """Inverse of :func:`scale_eval` for a scaled value in 0..100."""
    if not 0 <= v <= 100:
        raise ValueError(f"scaled value must lie in [0, 100], got {v}")
    if not lo <= mean <= hi:
        raise ValueError(f"need min <= mean <= max, got {lo}, {mean}, {hi}")
    if v >= 50:
        return mean + (v - 50) / 50 * (hi - mean)
    return lo + v / 50 * (mean - lo)


# ---------------------------------------------------------------------------
# scripted provider and the worked-example replay
# ---------------------------------------------------------------------------


class ScriptedProvider:
    """Provider whose evaluations follow a script rather than a QUBO.

    ``script`` maps a move number (1, 2, ...) to the full evaluation vector
    after that move.  The flipped variable's new evaluation must be the
    negation of its old one, as for any real objective.
    """

    def __init__(self, bits: Sequence[int], evals: Sequence[float], script: dict[int, Sequence[float]], objective: float = 0):
        self.n = len(bits)
        self.bits = [0, *bits]
        self.evals = [0, *evals]
        self.objective = objective
        self.script = {m: [0, *v] for m, v in script.items()}
        self.moves = 0
        self.flipped: list[int] = []

    def flip(self, k: int) -> None:
        self.moves += 1
        if self.moves not in self.script:
            raise AssertionError(f"script has no evaluations after move {self.moves}")
        nxt = self.script[self.moves]
        if nxt[k] != -self.evals[k]:
            raise AssertionError(f"move {self.moves}: Eval({k}) must change sign on a flip")
        self.objective += self.evals[k]
        self.bits[k] ^= 1
        self.evals[:] = nxt
        self.flipped.append(k)

    def assignment(self) -> list[int]:
        return self.bits[1:]


# Worked example on ten variables: Q = 4, r = 3, trigger 3.
WT_HISTORY = (
    (1, 1, 1, 1, 0, 0, 0, 1, 1, 1),
    (0, 1, 0, 1, 1, 0, 1, 1, 0, 1),
    (0, 1, 0, 0, 0, 0, 1, 1, 1, 0),
    (1, 1, 0, 0, 0, 0, 1, 1, 1, 0),
)
WT_INITIAL_TABU = (7, 9)
WT_EE_ROW = (9, 15, 14, 12, 13, 15, 14, 15, 13, 13)
WT_STARRED = (2, 3, 6, 7, 8)
WT_STATUS_COUNTS = (1, 2, 1, 2, 3)  # after moves 4..8
WT_NEW_OPTIMUM = (1, 0, 1, 0, 0, 1, 1, 1, 1, 1)
WT_POST_EE_ROW = (12, 8, 8, 14, 14, 8, 15, 15, 14, 8)
WT_HELD = 3
WT_MOVES = (1, 2, 3, 4, 5, 7, 6, 10)
WT_ASCENT_MOVES = (5, 4, 1, 7)

# Evaluation vectors that reproduce the narrated sign changes.
_WT_E0 = (-3, -2, -4, -5, -6, -5, -4, -6, -7, -5)
_WT_SCRIPT = {
    1: (3, -2, -4, -5, -6, -5, -4, -6, -7, -5),
    2: (3, 2, -4, -5, -6, -5, -4, -6, -7, -5),
    3: (3, 2, 4, -5, -6, -5, -4, -6, -7, -5),
    4: (3, -1, 4, 5, -6, -5, -4, -6, -7, -5),  # x2 turns non-improving
    5: (3, -1, 4, 5, 6, -5, 2, -6, -7, 1),  # x7 and x10 turn improving
    6: (3, 1, 4, 5, 6, -5, -2, -6, -7, -1),  # cancels x2 and x10
    7: (3, -1, 4, 5, 6, 5, -2, -6, -7, 1),  # restores them
    8: (3, -1, -1, 5, 6, 5, -2, -6, -7, -1),  # x3 turns non-improving
    9: (3, -1, -1, 5, -6, -2, -2, -6, -7, -1),
    10: (3, -1, -1, -5, -6, -2, -2, -6, -7, -1),
    11: (-3, -1, -1, -5, -6, -2, 2, -6, -7, -1),
    12: (-3, -1, -1, -5, -6, -2, -2, -6, -7, -1),
}


@dataclass
class WorkingTableReport:
    ee_row: list[int]
    starred: list[int]
    status_counts: list[int]
    engine_counts: list[int]
    trigger_move: int | None
    held: int
    statuses: dict[int, dict[int, str]]
    conditional_opt: bool
    new_optimum: list[int]
    post_ee_row: list[int]
    tabu_after: list[int]
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def mismatches(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]

    @property
    def ok(self) -> bool:
        return not self.mismatches


class WorkingTableMismatch(AssertionError):
    pass


def replay_working_table(strict: bool = True) -> WorkingTableReport:
    """Replay the ten-variable worked example move by move.

    The EE memory is built from the four history rows.  The eight
    post-ascent moves are forced while the engine classifies statuses and
    decides on the trigger.  Then the ascent runs to the next optimum.
    Every deviation from the expected values is collected; with
    ``strict`` any deviation raises :class:`WorkingTableMismatch`.
    """
    cfg = AAConfig(ee=EEConfig(Q=4, r=3), trigger=3, trace=True)
    mem = EEMemory.fresh(cfg.ee, 10)
    for x in WT_HISTORY:
        mem.record_local_optimum(x)
    prov = ScriptedProvider(WT_HISTORY[-1], _WT_E0, _WT_SCRIPT)
    events: list[tuple[Event, dict]] = []
    eng = AlternatingAscent(prov, cfg, memory=mem, on_event=lambda e, ev, info: events.append((ev, info)))
    st = eng.state
    st.ascent = False
    st.last_optimum = list(WT_HISTORY[-1])
    for j in WT_INITIAL_TABU:
        st.tabu_iter[j] = 2**31

    ee_row = list(st.ee[1:])
    thr = mem.threshold_r
    starred = [j for j in range(1, 11) if st.ee[j] >= thr]

    def table_count() -> int:
        # chosen S1 variables plus every S1/S2 status currently visible
        seen = 0
        for j in range(1, 11):
            if st.locked[j]:
                continue
            if eng.classify_status(j) in (Status.S1, Status.S2):
                seen += 1
        return st.status_count1 + seen

    statuses: dict[int, dict[int, str]] = {}
    counts, engine_counts = [], []
    trigger_move = None
    for m, k in enumerate(WT_MOVES, 1):
        eng.step(forced=k)
        statuses[m] = {j: eng.classify_status(j).value for j in range(1, 11)}
        if m >= 4:
            counts.append(table_count())
        # peek at the next scan, which is where the engine sees the counts
        saved = st.iter, st.last_vbl
        st.iter += 1
        res = eng.scan()
        st.iter, st.last_vbl = saved
        engine_counts.append(st.status_count1 + res.status_count2)

    eng.step()
    if eng.trigger_firings:
        trigger_move = len(WT_MOVES)
    held = st.last_vbl

    for k in WT_ASCENT_MOVES:
        eng.step(forced=k)
    n_opt = eng.local_optima
    cond = False
    for _ in range(3):
        eng.step()
        cond = cond or any(ev is Event.CONDITIONAL_LOCAL_OPT for ev, _ in events)
        if eng.local_optima > n_opt:
            break
    new_opt = list(st.bits[1:])
    post_row = list(st.ee[1:])
    tabu_after = [j for j in range(1, 11) if st.tabu_iter[j] >= st.iter + 1]

    rep = WorkingTableReport(
        ee_row=ee_row,
        starred=starred,
        status_counts=counts,
        engine_counts=engine_counts[3:],
        trigger_move=trigger_move,
        held=held,
        statuses=statuses,
        conditional_opt=cond,
        new_optimum=new_opt,
        post_ee_row=post_row,
        tabu_after=tabu_after,
    )
    def marks(m: int, *js: int) -> tuple[str, ...]:
        return tuple(statuses[m][j] for j in js)

    checks = [
        ("EE row", tuple(ee_row), WT_EE_ROW),
        ("threshold", thr, 14),
        ("starred set", tuple(starred), WT_STARRED),
        ("move 4: x2 gets S2", marks(4, 2), ("S2",)),
        ("move 5: x7 gets S1, x10 gets S+", marks(5, 7, 10), ("S1", "S+")),
        ("move 6: x2 and x10 lose their status", marks(6, 2, 10), ("-", "-")),
        ("move 7: x2 and x10 regain their status", marks(7, 2, 10), ("S2", "S+")),
        ("move 8: x3 gets S2", marks(8, 3), ("S2",)),
        ("status counts", tuple(counts), WT_STATUS_COUNTS),
        ("trigger move", trigger_move, len(WT_MOVES)),
        ("held variable", held, WT_HELD),
        ("conditional optimum", cond, True),
        ("new optimum", tuple(new_opt), WT_NEW_OPTIMUM),
        ("post-optimum EE row", tuple(post_row), WT_POST_EE_ROW),
    ]
    for name, got, want in checks:
        rep.checks.append((name, got == want, f"got {got}, expected {want}"))
    if strict and rep.mismatches:
        raise WorkingTableMismatch("; ".join(rep.mismatches))
    return rep
