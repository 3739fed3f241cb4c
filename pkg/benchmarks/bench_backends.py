#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure numpy fallback.

Usage:
    python benchmarks/bench_backends.py [--steps 1000000] [--repeat 3]

Both backends produce bit-identical output (asserted here); this script
measures how much the compiled extension buys on each hot kernel.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from wormdim import _fallback

try:
    from wormdim import _speedups
except ImportError:
    _speedups = None


def best_of(repeat, fn, *args, **kwargs):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args, **kwargs)
        best = min(best, time.perf_counter() - t0)
    return best, result


def check_equal(name, a, b):
    if isinstance(a, tuple):
        for x, y in zip(a, b):
            check_equal(name, x, y)
    elif isinstance(a, np.ndarray):
        assert np.array_equal(a, b), f"{name}: backend outputs differ"
    else:
        assert a == b, f"{name}: backend outputs differ"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=1_000_000,
                        help="simulation length for walk/earthworm kernels")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1234)
    args = parser.parse_args()

    if _speedups is None:
        parser.error("compiled extension not built; nothing to compare")

    n = args.steps
    rep = args.repeat
    seed = args.seed
    rows = []

    # walk
    t_c, path = best_of(rep, _speedups.walk_path, n, seed, 0)
    t_p, path_p = best_of(rep, _fallback.walk_path, n, seed, 0)
    check_equal("walk_path", path, path_p)
    rows.append((f"walk_path(n={n})", t_c, t_p))

    # earthworm
    t_c, worm = best_of(rep, _speedups.earthworm_run, n, seed, True)
    t_p, worm_p = best_of(rep, _fallback.earthworm_run, n, seed, True)
    check_equal("earthworm_run", worm, worm_p)
    rows.append((f"earthworm_run(n={n})", t_c, t_p))

    # flood fill over the walk's padded bounding box
    view = path.view([("x", np.int64), ("y", np.int64)]).ravel()
    visited = np.unique(view).view(np.int64).reshape(-1, 2)
    x0, y0 = visited[:, 0].min(), visited[:, 1].min()
    w = int(visited[:, 0].max() - x0) + 3
    h = int(visited[:, 1].max() - y0) + 3
    grid = np.zeros((h, w), dtype=np.uint8)
    grid[visited[:, 1] - y0 + 1, visited[:, 0] - x0 + 1] = 1
    t_c, count_c = best_of(rep, lambda: _speedups.fill_outside(grid.copy(), 4))
    t_p, count_p = best_of(rep, lambda: _fallback.fill_outside(grid.copy(), 4))
    check_equal("fill_outside", count_c, count_p)
    rows.append((f"fill_outside({h}x{w})", t_c, t_p))

    # ball-count profile over the visited set
    px = np.ascontiguousarray(visited[:, 0])
    py = np.ascontiguousarray(visited[:, 1])
    centers = visited[:: max(1, len(visited) // 2000)]
    cx = np.ascontiguousarray(centers[:, 0])
    cy = np.ascontiguousarray(centers[:, 1])
    radii = np.array([4, 8, 16, 32, 64], dtype=np.int64)
    t_c, tot_c = best_of(rep, _speedups.ball_count_totals, px, py, cx, cy, radii)
    t_p, tot_p = best_of(rep, _fallback.ball_count_totals, px, py, cx, cy, radii)
    check_equal("ball_count_totals", tot_c, tot_p)
    rows.append((f"ball_count_totals({len(cx)}c x {len(radii)}r)", t_c, t_p))

    # component census of the visited set
    t_c, sz_c = best_of(rep, _speedups.component_sizes, px, py, 4)
    t_p, sz_p = best_of(rep, _fallback.component_sizes, px, py, 4)
    check_equal("component_sizes", sz_c, sz_p)
    rows.append((f"component_sizes({len(px)} pts)", t_c, t_p))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'compiled':>10}  {'pure':>10}  {'speedup':>8}")
    for name, t_c, t_p in rows:
        print(f"{name:<{width}}  {t_c:>9.4f}s  {t_p:>9.4f}s  {t_p / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
