"""The earthworm displacement model.

The worm walks on the lattice pushing soil ahead of it. Moving into soil
displaces that particle forward along the step direction as a chain push:
the nearest hole on the forward ray absorbs it (the hole is filled),
otherwise the particle vanishes into the unbroken soil ahead and the
vacated cell becomes a net new hole. Moving into an existing hole displaces
nothing. The hole set therefore always contains the worm.

An "adjacent" fill rule (only a hole directly ahead of the displaced
particle absorbs it) is kept behind a flag for sensitivity checks.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._backend import kernels
from ._rng import RandomSource
from .errors import DomainError
from .geometry import LatticePoint, PointSet

UNIT_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))

FILL_RULES = ("nearest", "adjacent")


class HoleSet:
    """Hole membership plus ordered per-row / per-column indices.

    The indices answer nearest-hole-on-ray queries in O(log n) by ordered
    successor/predecessor lookup; they are built lazily so bulk simulation
    results pay nothing for them.
    """

    __slots__ = ("_set", "_rows", "_cols", "_arr", "_members")

    def __init__(self, points=()):
        self._set = {(int(p[0]), int(p[1])) for p in points}
        self._rows = None  # y -> sorted xs
        self._cols = None  # x -> sorted ys
        self._arr = None
        self._members: Optional[PointSet] = None

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "HoleSet":
        hs = cls.__new__(cls)
        hs._set = {(int(x), int(y)) for x, y in np.asarray(arr)}
        hs._rows = None
        hs._cols = None
        hs._arr = np.ascontiguousarray(arr, dtype=np.int64)
        hs._members = None
        return hs

    def _ensure_indices(self):
        if self._rows is None:
            rows: dict = {}
            cols: dict = {}
            for x, y in self._set:
                rows.setdefault(y, []).append(x)
                cols.setdefault(x, []).append(y)
            for lst in rows.values():
                lst.sort()
            for lst in cols.values():
                lst.sort()
            self._rows = rows
            self._cols = cols

    def __contains__(self, p) -> bool:
        return (int(p[0]), int(p[1])) in self._set

    def __len__(self) -> int:
        return len(self._set)

    def __iter__(self):
        return (LatticePoint(x, y) for x, y in self._set)

    @property
    def members(self) -> PointSet:
        if self._members is None:
            # as_array() output is already lex-sorted and duplicate-free
            self._members = PointSet.from_array(self.as_array(), assume_unique=True)
        return self._members

    def as_array(self) -> np.ndarray:
        if self._arr is None:
            self._arr = np.array(sorted(self._set), dtype=np.int64).reshape(
                len(self._set), 2
            )
        return self._arr

    def add(self, p) -> None:
        key = (int(p[0]), int(p[1]))
        if key in self._set:
            return
        self._set.add(key)
        self._arr = None
        self._members = None
        if self._rows is not None:
            insort(self._rows.setdefault(key[1], []), key[0])
            insort(self._cols.setdefault(key[0], []), key[1])

    def remove(self, p) -> None:
        key = (int(p[0]), int(p[1]))
        self._set.remove(key)
        self._arr = None
        self._members = None
        if self._rows is not None:
            row = self._rows[key[1]]
            row.pop(bisect_left(row, key[0]))
            col = self._cols[key[0]]
            col.pop(bisect_left(col, key[1]))

    def nearest_along_ray(self, start, direction) -> Optional[LatticePoint]:
        """Closest hole at start + k*direction with k >= 1, if any."""
        dx, dy = _check_direction(direction)
        self._ensure_indices()
        sx, sy = int(start[0]), int(start[1])
        if dy == 0:
            row = self._rows.get(sy)
            if row:
                if dx > 0:
                    i = bisect_right(row, sx)
                    if i < len(row):
                        return LatticePoint(row[i], sy)
                else:
                    i = bisect_left(row, sx) - 1
                    if i >= 0:
                        return LatticePoint(row[i], sy)
        else:
            col = self._cols.get(sx)
            if col:
                if dy > 0:
                    i = bisect_right(col, sy)
                    if i < len(col):
                        return LatticePoint(sx, col[i])
                else:
                    i = bisect_left(col, sy) - 1
                    if i >= 0:
                        return LatticePoint(sx, col[i])
        return None


def _check_direction(direction):
    d = (int(direction[0]), int(direction[1]))
    if d not in UNIT_STEPS:
        raise DomainError(f"direction must be a unit step, got {direction!r}")
    return d


def nearest_hole_along_ray(holes: HoleSet, start, direction) -> Optional[LatticePoint]:
    """Closest hole strictly ahead of start along a unit direction."""
    return holes.nearest_along_ray(start, direction)


@dataclass
class WormState:
    """Worm position, its hole set, and the step/creation/fill ledger.

    creations counts steps that netted a new hole, fills counts steps that
    consumed one, so len(holes) == 1 + creations at all times.
    """

    worm: LatticePoint = LatticePoint(0, 0)
    holes: HoleSet = field(default_factory=lambda: HoleSet([(0, 0)]))
    steps: int = 0
    creations: int = 0
    fills: int = 0


def worm_step(state: WormState, direction, fill_rule: str = "nearest") -> WormState:
    """Advance the worm one step in place; returns the same state.

    Case A: the destination is already a hole -> just move.
    Case B: the destination holds soil -> the particle is pushed along the
    ray ahead; the nearest hole there (or, under the "adjacent" rule, only
    a hole immediately ahead) absorbs it, else a net hole is created.
    """
    dx, dy = _check_direction(direction)
    if fill_rule not in FILL_RULES:
        raise DomainError(f"unknown fill rule {fill_rule!r}")
    nx = state.worm.x + dx
    ny = state.worm.y + dy
    dest = LatticePoint(nx, ny)
    if dest in state.holes:
        state.worm = dest
        state.steps += 1
        return state
    if fill_rule == "nearest":
        target = state.holes.nearest_along_ray(dest, (dx, dy))
    else:
        ahead = (nx + dx, ny + dy)
        target = LatticePoint(*ahead) if ahead in state.holes else None
    if target is not None:
        state.holes.remove(target)
        state.fills += 1
    else:
        state.creations += 1
    state.holes.add(dest)
    state.worm = dest
    state.steps += 1
    return state


def simulate_earthworm(n: int, seed: int, fill_rule: str = "nearest") -> WormState:
    """Run n seeded uniform-direction worm steps from a fresh origin state."""
    if n < 0:
        raise DomainError("step count must be >= 0")
    if fill_rule not in FILL_RULES:
        raise DomainError(f"unknown fill rule {fill_rule!r}")
    holes, worm, creations, fills = kernels.earthworm_run(
        n, seed, fill_rule == "nearest"
    )
    return WormState(
        worm=LatticePoint(int(worm[0]), int(worm[1])),
        holes=HoleSet.from_array(holes),
        steps=n,
        creations=int(creations),
        fills=int(fills),
    )


def step_directions(n: int, seed: int):
    """The direction sequence a seeded n-step simulation consumes."""
    src = RandomSource(seed)
    return [UNIT_STEPS[src.next_u64() & 3] for _ in range(n)]
