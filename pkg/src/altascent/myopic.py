"""Myopic correction: periodically undo the oldest recent moves.

Flipped variables are appended to a FIFO list built on a fixed pool of
slots.  Each slot h holds a variable ``ids[h]`` and a successor
``after[h]``.  Slot 0 is the list head, and ``rev_id[k]`` remembers the
slot that most recently received variable k.

After ``add_num`` additions, ``drop_num`` slots are popped from the front
of the list.  A popped variable is flipped back only if the popped slot
is still its latest entry; an older duplicate entry is discarded
silently.  The (add_num, drop_num) pair follows a schedule that starts
over whenever the list is reset.

If the pool runs dry, further additions are counted but not recorded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class MCSchedule:
    """Leading (add_num, drop_num) steps followed by a repeating tail step."""

    steps: tuple[tuple[int, int], ...]
    tail: tuple[int, int]

    def __post_init__(self) -> None:
        for a, d in (*self.steps, self.tail):
            if a < 1 or d < 1:
                raise ValueError(f"schedule step ({a}, {d}) must be positive")

    def step(self, pos: int) -> tuple[int, int]:
        return self.steps[pos] if pos < len(self.steps) else self.tail


SCHEDULE_A = MCSchedule(steps=((3, 1), (4, 2), (5, 2), (5, 2)), tail=(5, 1))
SCHEDULE_B = MCSchedule(steps=((3, 1), (4, 1), (5, 1), (5, 1)), tail=(6, 1))
SCHEDULES = {"A": SCHEDULE_A, "B": SCHEDULE_B}


def default_capacity(n: int) -> int:
    return max(16, math.ceil(n / 12))


@dataclass
class MCState:
    n: int
    capacity: int
    schedule: MCSchedule = SCHEDULE_A
    after: list[int] = field(init=False)
    ids: list[int] = field(init=False)
    rev_id: list[int] = field(init=False)
    pool: list[int] = field(init=False)
    h_last: int = field(init=False)
    end_link: int = field(init=False)
    moves_added: int = field(init=False)
    position: int = field(init=False)
    unrecorded: int = 0
    pops: int = 0

    def __post_init__(self) -> None:
        if self.capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {self.capacity}")
        self.after = [0] * (self.capacity + 1)
        self.ids = [0] * (self.capacity + 1)
        self.rev_id = [0] * (self.n + 1)
        self.pool = [0] * (self.capacity + 1)
        self.reset()

    def reset(self) -> None:
        """Empty the list, refill the pool and restart the schedule."""
        self.moves_added = 0
        self.end_link = 0
        self.after[0] = 0
        self.h_last = self.capacity
        for h in range(1, self.capacity + 1):
            self.pool[h] = h
        self.position = 0

    def __len__(self) -> int:
        return self.capacity - self.h_last

    def listed(self) -> list[int]:
        """Variables on the list, oldest first (including stale duplicates)."""
        out, h = [], self.after[0]
        while h:
            out.append(self.ids[h])
            h = self.after[h]
        return out

    def add(self, k: int) -> bool:
        """Record a flip of ``k``; returns False if the pool was exhausted."""
        self.moves_added += 1
        if self.h_last == 0:
            self.unrecorded += 1
            return False
        h = self.pool[self.h_last]
        self.h_last -= 1
        self.ids[h] = k
        self.after[h] = 0
        self.after[self.end_link] = h
        self.end_link = h
        self.rev_id[k] = h
        return True

    def drop_due(self) -> bool:
        return self.moves_added >= self.schedule.step(self.position)[0]

    def pop(self) -> int:
        """Pop the oldest slot; returns the variable to flip back, or 0.

        Popping an empty list is a no-op that returns 0.
        """
        h = self.after[0]
        if h == 0:
            return 0
        k = self.ids[h]
        fresh = self.rev_id[k] == h
        self.after[0] = self.after[h]
        if h == self.end_link:
            self.end_link = 0
        self.h_last += 1
        self.pool[self.h_last] = h
        self.pops += 1
        return k if fresh else 0

    def drop(self) -> list[int]:
        """Run one drop step; returns the variables to flip back, oldest first."""
        _, drop_num = self.schedule.step(self.position)
        out = []
        for _ in range(drop_num):
            k = self.pop()
            if k:
                out.append(k)
        self.moves_added = 0
        self.position += 1
        return out
