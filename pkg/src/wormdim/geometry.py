"""Lattice point sets and the exact geometric primitives built on them.

Coordinates are 64-bit signed integers. All distance comparisons happen on
squared integer distances; a single square root is taken at the very end,
so results are exact up to that one floating rounding.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional

import numpy as np

from ._backend import kernels
from .errors import DomainError

# below this size a brute-force pairwise diameter beats hull construction
_BRUTE_FORCE_CUTOFF = 64


class LatticePoint(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class BoundingBox:
    xmin: int
    xmax: int
    ymin: int
    ymax: int

    def __post_init__(self):
        if self.xmin > self.xmax or self.ymin > self.ymax:
            raise ValueError("inverted bounding box")

    @property
    def width(self) -> int:
        return self.xmax - self.xmin

    @property
    def height(self) -> int:
        return self.ymax - self.ymin

    def contains(self, p) -> bool:
        return self.xmin <= p[0] <= self.xmax and self.ymin <= p[1] <= self.ymax


def squared_distance(p, q) -> int:
    """Exact squared Euclidean distance between two lattice points.

    The package's single notion of distance; swap here to change the norm
    everywhere.
    """
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


class PointSet:
    """Unordered set of lattice points with a tight bounding box.

    Keeps two interchangeable representations: a Python set for O(1)
    membership and incremental edits, and a lex-sorted (k, 2) int64 array
    for bulk computation. Either is materialized on demand. Single writer;
    safe for concurrent readers once construction is done.
    """

    __slots__ = ("_pts", "_arr", "_bbox")

    def __init__(self, points: Iterable = ()):
        self._pts: Optional[set] = {(int(p[0]), int(p[1])) for p in points}
        self._arr: Optional[np.ndarray] = None
        self._bbox: Optional[BoundingBox] = None
        self._recompute_bbox()

    @classmethod
    def from_array(cls, arr: np.ndarray, *, assume_unique: bool = False) -> "PointSet":
        """Build from an (k, 2) integer array without materializing a set."""
        ps = cls.__new__(cls)
        a = np.ascontiguousarray(arr, dtype=np.int64).reshape(-1, 2)
        ps._pts = None
        ps._arr = _sorted_unique(a) if not assume_unique else a
        ps._bbox = None
        ps._recompute_bbox()
        return ps

    # -- representations ------------------------------------------------

    def as_array(self) -> np.ndarray:
        """Members as a lex-sorted (count, 2) int64 array (cached)."""
        if self._arr is None:
            if self._pts:
                self._arr = np.array(sorted(self._pts), dtype=np.int64)
            else:
                self._arr = np.empty((0, 2), dtype=np.int64)
        return self._arr

    def _ensure_set(self) -> set:
        if self._pts is None:
            self._pts = {(int(x), int(y)) for x, y in self._arr}
        return self._pts

    # -- basic protocol --------------------------------------------------

    def __len__(self) -> int:
        if self._pts is not None:
            return len(self._pts)
        return int(self._arr.shape[0])

    @property
    def count(self) -> int:
        return len(self)

    def __contains__(self, p) -> bool:
        return (int(p[0]), int(p[1])) in self._ensure_set()

    def __iter__(self) -> Iterator[LatticePoint]:
        if self._pts is not None:
            return (LatticePoint(x, y) for x, y in self._pts)
        return (LatticePoint(int(x), int(y)) for x, y in self._arr)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self._ensure_set() == other._ensure_set()

    def __repr__(self) -> str:
        return f"PointSet(count={len(self)}, bbox={self.bbox})"

    # -- modification ----------------------------------------------------

    def insert(self, p) -> "PointSet":
        """Add a point; idempotent. Returns self."""
        key = (int(p[0]), int(p[1]))
        pts = self._ensure_set()
        if key not in pts:
            pts.add(key)
            self._arr = None
            if self._bbox is None:
                self._bbox = BoundingBox(key[0], key[0], key[1], key[1])
            else:
                b = self._bbox
                self._bbox = BoundingBox(
                    min(b.xmin, key[0]), max(b.xmax, key[0]),
                    min(b.ymin, key[1]), max(b.ymax, key[1]),
                )
        return self

    def discard(self, p) -> "PointSet":
        """Remove a point if present. Returns self."""
        key = (int(p[0]), int(p[1]))
        pts = self._ensure_set()
        if key in pts:
            pts.remove(key)
            self._arr = None
            self._recompute_bbox()
        return self

    # -- geometry ---------------------------------------------------------

    @property
    def bbox(self) -> Optional[BoundingBox]:
        """Tight bounding box, or None for the empty set."""
        return self._bbox

    def _recompute_bbox(self) -> None:
        if self._pts is not None:
            if not self._pts:
                self._bbox = None
                return
            xs = [p[0] for p in self._pts]
            ys = [p[1] for p in self._pts]
            self._bbox = BoundingBox(min(xs), max(xs), min(ys), max(ys))
        else:
            if self._arr.shape[0] == 0:
                self._bbox = None
                return
            self._bbox = BoundingBox(
                int(self._arr[:, 0].min()), int(self._arr[:, 0].max()),
                int(self._arr[:, 1].min()), int(self._arr[:, 1].max()),
            )


def _sorted_unique(arr: np.ndarray) -> np.ndarray:
    """Lex-sort rows of an (k, 2) int64 array and drop duplicates."""
    if arr.shape[0] == 0:
        return arr.reshape(0, 2)
    view = arr.view([("x", np.int64), ("y", np.int64)]).ravel()
    return np.unique(view).view(np.int64).reshape(-1, 2)


def insert(point_set: PointSet, p) -> PointSet:
    """Functional alias for PointSet.insert."""
    return point_set.insert(p)


# ---------------------------------------------------------------------------
# convex hull and diameter
# ---------------------------------------------------------------------------


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_candidates(arr: np.ndarray) -> list:
    # only the lowest/highest point of each x-column can be a hull vertex
    xs = arr[:, 0]
    starts = np.nonzero(np.r_[True, xs[1:] != xs[:-1]])[0]
    ends = np.r_[starts[1:] - 1, arr.shape[0] - 1]
    cand = np.unique(np.concatenate([starts, ends]))
    return [(int(x), int(y)) for x, y in arr[cand]]


def convex_hull(point_set: PointSet) -> list:
    """Counterclockwise hull vertices, collinear points dropped.

    Degenerate inputs give the two extreme points (or the point itself).
    """
    if len(point_set) == 0:
        raise DomainError("convex hull of an empty set")
    pts = _hull_candidates(point_set.as_array())  # already lex-sorted
    if len(pts) == 1:
        return [LatticePoint(*pts[0])]
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return [LatticePoint(*p) for p in hull]


def _antipodal_pairs(pts: list):
    """Rotating-calipers antipodal pairs over lex-sorted points."""
    upper = []
    lower = []
    for p in pts:
        while len(upper) > 1 and _cross(upper[-2], upper[-1], p) >= 0:
            upper.pop()
        while len(lower) > 1 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        upper.append(p)
        lower.append(p)
    i = 0
    j = len(lower) - 1
    while i < len(upper) - 1 or j > 0:
        yield upper[i], lower[j]
        if i == len(upper) - 1:
            j -= 1
        elif j == 0:
            i += 1
        elif ((upper[i + 1][1] - upper[i][1]) * (lower[j][0] - lower[j - 1][0])
              > (lower[j][1] - lower[j - 1][1]) * (upper[i + 1][0] - upper[i][0])):
            i += 1
        else:
            j -= 1


def squared_diameter(point_set: PointSet) -> int:
    """Exact squared diameter (max pairwise squared distance)."""
    n = len(point_set)
    if n == 0:
        raise DomainError("diameter of an empty set")
    if n == 1:
        return 0
    arr = point_set.as_array()
    if n < _BRUTE_FORCE_CUTOFF:
        dx = arr[:, 0][:, None] - arr[:, 0][None, :]
        dy = arr[:, 1][:, None] - arr[:, 1][None, :]
        return int((dx * dx + dy * dy).max())
    pts = _hull_candidates(arr)
    best = 0
    for p, q in _antipodal_pairs(pts):
        d2 = squared_distance(p, q)
        if d2 > best:
            best = d2
    return best


def diameter(point_set: PointSet) -> float:
    """Largest pairwise Euclidean distance over the set."""
    return math.sqrt(squared_diameter(point_set))


# ---------------------------------------------------------------------------
# connected components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentCensus:
    """Multiset of connected-component sizes of a point set."""

    component_sizes: Counter = field(default_factory=Counter)
    component_count: int = 0
    singleton_count: int = 0
    total_points: int = 0

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> "ComponentCensus":
        c = Counter(int(s) for s in sizes)
        return cls(
            component_sizes=c,
            component_count=sum(c.values()),
            singleton_count=c.get(1, 0),
            total_points=sum(s * m for s, m in c.items()),
        )


def connected_components(point_set: PointSet, adjacency: int = 4) -> ComponentCensus:
    """Census of maximal connected groups under 4- or 8-neighbor adjacency."""
    if adjacency not in (4, 8):
        raise DomainError("adjacency must be 4 or 8")
    if len(point_set) == 0:
        return ComponentCensus.from_sizes(())
    arr = point_set.as_array()
    sizes = kernels.component_sizes(
        np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1]), adjacency
    )
    return ComponentCensus.from_sizes(sizes.tolist())
