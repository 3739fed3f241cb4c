"""Frontier extraction: the trace points on the boundary of the unbounded
component of the trace's complement.

The complement is flood-filled over the trace's bounding box padded by one
cell, seeded from the padding ring; because the trace is finite, every
complement cell connected to the ring belongs to the unbounded component.
Interior cavities are never reached, so their boundaries are correctly
excluded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DomainError
from .geometry import PointSet


@dataclass
class FrontierResult:
    frontier: PointSet
    trace_size: int
    outside_cells: int


def extract_frontier(
    trace: PointSet,
    complement_connectivity: int = 4,
    boundary_connectivity: int = 4,
) -> FrontierResult:
    """Frontier of a finite trace.

    complement_connectivity governs how the outside region spreads;
    boundary_connectivity governs which trace points count as touching it.
    Defaults are 4/4.
    """
    if len(trace) == 0:
        raise DomainError("frontier of an empty trace")
    if complement_connectivity not in (4, 8) or boundary_connectivity not in (4, 8):
        raise DomainError("connectivity must be 4 or 8")
    arr = trace.as_array()
    box = trace.bbox
    w = box.width + 3  # bbox cells plus one padding cell on each side
    h = box.height + 3
    grid = np.zeros((h, w), dtype=np.uint8)
    rows = arr[:, 1] - box.ymin + 1
    cols = arr[:, 0] - box.xmin + 1
    grid[rows, cols] = 1
    outside_cells = int(kernels.fill_outside(grid, complement_connectivity))
    outside = grid == 2
    touches = np.zeros_like(outside)
    touches[1:, :] |= outside[:-1, :]
    touches[:-1, :] |= outside[1:, :]
    touches[:, 1:] |= outside[:, :-1]
    touches[:, :-1] |= outside[:, 1:]
    if boundary_connectivity == 8:
        touches[1:, 1:] |= outside[:-1, :-1]
        touches[1:, :-1] |= outside[:-1, 1:]
        touches[:-1, 1:] |= outside[1:, :-1]
        touches[:-1, :-1] |= outside[1:, 1:]
    fy, fx = np.nonzero((grid == 1) & touches)
    pts = np.column_stack([fx + box.xmin - 1, fy + box.ymin - 1]).astype(np.int64)
    return FrontierResult(
        frontier=PointSet.from_array(pts),
        trace_size=len(trace),
        outside_cells=outside_cells,
    )
