"""Seeded simple random walks on the integer lattice."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DomainError
from .geometry import PointSet

# step law codes understood by the kernels
_LAWS = {"uniform4": 0, "diagonal": 1}


@dataclass
class WalkTrace:
    """An n-step walk: the ordered path and the set of visited points."""

    path: np.ndarray  # (n + 1, 2) int64, path[0] = origin
    visited: PointSet
    n: int


def simulate_walk(n: int, seed: int, law: str = "uniform4") -> WalkTrace:
    """Walk n uniform steps from the origin; deterministic per seed.

    law "uniform4" draws each step from the four axis unit moves;
    "diagonal" draws independent +-1 moves in each coordinate (kept for
    sensitivity checks, the dimension estimates do not depend on it).
    """
    if n < 0:
        raise DomainError("step count must be >= 0")
    if law not in _LAWS:
        raise DomainError(f"unknown step law {law!r}")
    path = kernels.walk_path(n, seed, _LAWS[law])
    return WalkTrace(path=path, visited=PointSet.from_array(path), n=n)


def rescale_walk(trace: WalkTrace) -> np.ndarray:
    """Path scaled by 1/sqrt(n), as an (n+1, 2) float array.

    Only for plot emission; the dimension estimators are scale-free.
    """
    if trace.n == 0:
        return np.zeros((1, 2), dtype=float)
    return trace.path / math.sqrt(trace.n)
