"""Dimension estimation: log-log least squares, the counting method, and
the averaging method.

Counting method: over a family of runs with growing step count n, fit the
growth exponents h (set size ~ n^h) and d (diameter ~ n^d); the dimension
estimate is h/d. Averaging method: over a single set, fit the exponent of
Q_r, the mean number of set points within Euclidean distance r of a set
point, against r.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from ._backend import kernels
from ._rng import RandomSource
from .errors import DegenerateInputError, DomainError
from .geometry import PointSet, diameter

DEFAULT_MAX_CENTERS = 5000
DEFAULT_RADIUS_RATIO = 1.25


@dataclass(frozen=True)
class LogLogFit:
    """Ordinary least squares on (log x, log y)."""

    slope: float
    intercept: float
    r_squared: float
    n_points: int


@dataclass(frozen=True)
class DimensionEstimate:
    method: str  # "counting" | "averaging"
    value: float
    h: Optional[float]  # size exponent, counting only
    d: Optional[float]  # diameter exponent, counting only
    fit_quality: float


@dataclass(frozen=True)
class AveragingProfile:
    radii: Tuple[int, ...]
    q_values: Tuple[float, ...]
    centers_sampled: int


def fit_loglog(samples: Iterable[Tuple[float, float]]) -> LogLogFit:
    """Least-squares line through (log x, log y); slope is the exponent."""
    pts = list(samples)
    if len(pts) < 2:
        raise DegenerateInputError("need at least 2 samples")
    xs = np.array([p[0] for p in pts], dtype=float)
    ys = np.array([p[1] for p in pts], dtype=float)
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise DomainError("log-log fit needs strictly positive samples")
    if np.unique(xs).size < 2:
        raise DegenerateInputError("need at least 2 distinct x values")
    lx = np.log(xs)
    ly = np.log(ys)
    mx = float(lx.mean())
    my = float(ly.mean())
    sxx = float(((lx - mx) ** 2).sum())
    sxy = float(((lx - mx) * (ly - my)).sum())
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_tot = float(((ly - my) ** 2).sum())
    ss_res = float(((ly - (slope * lx + intercept)) ** 2).sum())
    if ss_tot <= 1e-30:
        r2 = 1.0
    else:
        r2 = max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    return LogLogFit(slope=slope, intercept=intercept, r_squared=r2, n_points=len(pts))


def ball_count(point_set: PointSet, center, r: int) -> int:
    """Number of set members within Euclidean distance r of a set member."""
    if center not in point_set:
        raise DomainError("ball center must belong to the set")
    if int(r) < 1:
        raise DomainError("radius must be a positive integer")
    arr = point_set.as_array()
    totals = kernels.ball_count_totals(
        np.ascontiguousarray(arr[:, 0]),
        np.ascontiguousarray(arr[:, 1]),
        np.array([int(center[0])], dtype=np.int64),
        np.array([int(center[1])], dtype=np.int64),
        np.array([int(r)], dtype=np.int64),
    )
    return int(totals[0])


def radius_grid(r_min: int, r_max: int, ratio: float = DEFAULT_RADIUS_RATIO):
    """Geometric integer radius grid; even weight per decade in log space."""
    if r_min < 1 or r_min >= r_max:
        raise DomainError("need 1 <= r_min < r_max")
    rs = [int(r_min)]
    while True:
        nxt = max(rs[-1] + 1, int(round(rs[-1] * ratio)))
        if nxt > r_max:
            break
        rs.append(nxt)
    return rs


def averaging_dimension(
    point_set: PointSet,
    r_min: int,
    r_max: int,
    max_centers: int = DEFAULT_MAX_CENTERS,
    seed: int = 0,
    interior_margin: int = 0,
) -> Tuple[AveragingProfile, DimensionEstimate]:
    """Averaging-method estimate over one set.

    Q_r is averaged over a seeded uniform sample of min(|S|, max_centers)
    centers, fixed across all radii. Centers are not filtered by default;
    interior_margin > 0 restricts them to at least that distance from the
    bounding box edges (useful on solid calibration fixtures where edge
    truncation would bias the slope).
    """
    if len(point_set) == 0:
        raise DomainError("averaging over an empty set")
    radii = radius_grid(r_min, r_max)
    if len(radii) < 2:
        raise DegenerateInputError("radius range too narrow for a fit")
    arr = point_set.as_array()
    if interior_margin > 0:
        box = point_set.bbox
        keep = (
            (arr[:, 0] >= box.xmin + interior_margin)
            & (arr[:, 0] <= box.xmax - interior_margin)
            & (arr[:, 1] >= box.ymin + interior_margin)
            & (arr[:, 1] <= box.ymax - interior_margin)
        )
        eligible = arr[keep]
        if eligible.shape[0] == 0:
            raise DomainError("interior margin excluded every center")
    else:
        eligible = arr
    k = min(eligible.shape[0], int(max_centers))
    if k < eligible.shape[0]:
        idx = RandomSource(seed).sample_indices(eligible.shape[0], k)
        centers = eligible[np.sort(idx)]
    else:
        centers = eligible
    totals = kernels.ball_count_totals(
        np.ascontiguousarray(arr[:, 0]),
        np.ascontiguousarray(arr[:, 1]),
        np.ascontiguousarray(centers[:, 0]),
        np.ascontiguousarray(centers[:, 1]),
        np.array(radii, dtype=np.int64),
    )
    q_values = tuple(float(t) / k for t in totals)
    profile = AveragingProfile(
        radii=tuple(radii), q_values=q_values, centers_sampled=k
    )
    fit = fit_loglog(zip(radii, q_values))
    estimate = DimensionEstimate(
        method="averaging", value=fit.slope, h=None, d=None, fit_quality=fit.r_squared
    )
    return profile, estimate


def aggregate_by_n(
    records: Sequence[Tuple[int, float, float]]
) -> list[Tuple[int, float, float]]:
    """Collapse replicates to per-n means of size and diameter.

    Replicate noise is large (diameters of individual runs scatter widely)
    but unbiased; for balanced designs the fitted slopes are unchanged and
    the fit quality then reflects the schedule-level power law rather than
    the within-n spread.
    """
    triples = [(int(n), float(size), float(diam)) for n, size, diam in records]
    if len({t[0] for t in triples}) < 2:
        raise DegenerateInputError("records must span at least 2 distinct n")
    for n, size, diam in triples:
        if size <= 0 or diam <= 0:
            raise DomainError("sizes and diameters must be positive")
    grouped: dict = {}
    for n, size, diam in triples:
        grouped.setdefault(n, []).append((size, diam))
    out = []
    for n in sorted(grouped):
        sizes = [s for s, _ in grouped[n]]
        diams = [d for _, d in grouped[n]]
        out.append((n, sum(sizes) / len(sizes), sum(diams) / len(diams)))
    return out


def counting_fits(
    records: Sequence[Tuple[int, float, float]]
) -> Tuple[LogLogFit, LogLogFit]:
    """(size fit, diameter fit) against n, over per-n replicate means."""
    means = aggregate_by_n(records)
    size_fit = fit_loglog([(n, size) for n, size, _ in means])
    diam_fit = fit_loglog([(n, diam) for n, _, diam in means])
    return size_fit, diam_fit


def counting_dimension(
    records: Sequence[Tuple[int, int, float]], direct: bool = False
) -> DimensionEstimate:
    """Counting-method estimate from (n, set size, diameter) observations.

    h and d are fitted against the same n schedule (replicates averaged
    per n first) and the ratio taken afterwards; direct=True instead fits
    log size against log diameter (the two readings agree on exact power
    laws).
    """
    size_fit, diam_fit = counting_fits(records)
    if diam_fit.slope <= 0:
        raise DegenerateInputError("non-positive diameter exponent")
    if direct:
        means = aggregate_by_n(records)
        direct_fit = fit_loglog([(diam, size) for _, size, diam in means])
        value = direct_fit.slope
        quality = direct_fit.r_squared
    else:
        value = size_fit.slope / diam_fit.slope
        quality = min(size_fit.r_squared, diam_fit.r_squared)
    return DimensionEstimate(
        method="counting",
        value=value,
        h=size_fit.slope,
        d=diam_fit.slope,
        fit_quality=quality,
    )


def default_r_max(point_set: PointSet) -> int:
    """Default largest averaging radius: a tenth of the set diameter."""
    return max(2, int(diameter(point_set) / 10))
