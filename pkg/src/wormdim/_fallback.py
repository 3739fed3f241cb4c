"""Pure Python (numpy) implementations of the hot kernels.

Mirrors ``wormdim._speedups`` function for function. Every function here
must return bit-identical results to its compiled twin; only speed differs.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right, insort

import numpy as np

from . import _rng

COMPILED = False

# direction index (low two RNG bits) -> unit step
_DX = np.array([1, -1, 0, 0], dtype=np.int64)
_DY = np.array([0, 0, 1, -1], dtype=np.int64)


def walk_path(n, seed, law=0):
    """Lattice walk path as an (n+1, 2) int64 array; path[0] is the origin.

    law 0: uniform over the four axis unit steps.
    law 1: independent +-1 in each coordinate (diagonal steps).
    """
    path = np.zeros((n + 1, 2), dtype=np.int64)
    if n == 0:
        return path
    bits = _rng.stream(seed, 0, n)
    if law == 0:
        d = (bits & np.uint64(3)).astype(np.int64)
        dx = _DX[d]
        dy = _DY[d]
    else:
        dx = 1 - 2 * (bits & np.uint64(1)).astype(np.int64)
        dy = 1 - 2 * ((bits >> np.uint64(1)) & np.uint64(1)).astype(np.int64)
    path[1:, 0] = np.cumsum(dx)
    path[1:, 1] = np.cumsum(dy)
    return path


def earthworm_run(n, seed, fill_nearest=True):
    """Run the earthworm for n steps from a single hole at the origin.

    Returns (holes, worm, creations, fills) where holes is a (k, 2) int64
    array sorted by (x, y). creations counts steps that netted a new hole,
    fills counts steps that consumed one; steps into an existing hole do
    neither.
    """
    holes = {(0, 0)}
    rows = {0: [0]}  # y -> sorted xs in that row
    cols = {0: [0]}  # x -> sorted ys in that column
    wx = wy = 0
    creations = 0
    fills = 0
    if n > 0:
        dirs = (_rng.stream(seed, 0, n) & np.uint64(3)).astype(np.int64)
        for d in dirs:
            if d == 0:
                dx, dy = 1, 0
            elif d == 1:
                dx, dy = -1, 0
            elif d == 2:
                dx, dy = 0, 1
            else:
                dx, dy = 0, -1
            nx = wx + dx
            ny = wy + dy
            if (nx, ny) in holes:
                wx, wy = nx, ny
                continue
            # soil at (nx, ny) is displaced forward along the step direction
            target = None
            if fill_nearest:
                if dy == 0:
                    row = rows.get(ny)
                    if row:
                        if dx > 0:
                            i = bisect_right(row, nx)
                            if i < len(row):
                                target = (row[i], ny)
                        else:
                            i = bisect_left(row, nx) - 1
                            if i >= 0:
                                target = (row[i], ny)
                else:
                    col = cols.get(nx)
                    if col:
                        if dy > 0:
                            i = bisect_right(col, ny)
                            if i < len(col):
                                target = (nx, col[i])
                        else:
                            i = bisect_left(col, ny) - 1
                            if i >= 0:
                                target = (nx, col[i])
            else:
                ahead = (nx + dx, ny + dy)
                if ahead in holes:
                    target = ahead
            if target is not None:
                tx, ty = target
                holes.discard(target)
                row = rows[ty]
                row.pop(bisect_left(row, tx))
                col = cols[tx]
                col.pop(bisect_left(col, ty))
                fills += 1
            else:
                creations += 1
            holes.add((nx, ny))
            insort(rows.setdefault(ny, []), nx)
            insort(cols.setdefault(nx, []), ny)
            wx, wy = nx, ny
    out = np.array(sorted(holes), dtype=np.int64).reshape(len(holes), 2)
    return out, (wx, wy), creations, fills


def fill_outside(state, connectivity=4):
    """Flood-fill the empty region reachable from cell (0, 0).

    state is a 2D uint8 grid, 0 = empty, 1 = occupied; reached empty cells
    are marked 2 in place. Returns the number of cells marked. Cell (0, 0)
    must be empty (callers pad the occupancy grid by one empty ring).
    """
    h, w = state.shape
    if state[0, 0] != 0:
        raise ValueError("seed cell (0, 0) must be empty")
    # embed in a wall ring so neighbor arithmetic never leaves the grid
    work = np.ones((h + 2, w + 2), dtype=np.uint8)
    work[1:-1, 1:-1] = state
    flat = work.ravel()
    w2 = w + 2
    if connectivity == 4:
        offsets = (-w2, -1, 1, w2)
    elif connectivity == 8:
        offsets = (-w2 - 1, -w2, -w2 + 1, -1, 1, w2 - 1, w2, w2 + 1)
    else:
        raise ValueError("connectivity must be 4 or 8")
    start = np.int64(w2 + 1)  # cell (1, 1) of work == cell (0, 0) of state
    flat[start] = 2
    wave = np.array([start], dtype=np.int64)
    count = 1
    while wave.size:
        cand = np.concatenate([wave + o for o in offsets])
        cand = cand[flat[cand] == 0]
        if cand.size:
            cand = np.unique(cand)
            flat[cand] = 2
            count += cand.size
        wave = cand
    state[...] = work[1:-1, 1:-1]
    return count


def ball_count_totals(px, py, cx, cy, radii):
    """Summed ball counts: totals[i] = sum over centers of the number of
    points within Euclidean distance radii[i] of that center.

    Points are bucketed on a grid of cell size r so each query inspects at
    most nine buckets. Distances compare squared integers; no rounding.
    """
    px = np.asarray(px, dtype=np.int64)
    py = np.asarray(py, dtype=np.int64)
    cx = np.asarray(cx, dtype=np.int64)
    cy = np.asarray(cy, dtype=np.int64)
    radii = np.asarray(radii, dtype=np.int64)
    totals = np.zeros(len(radii), dtype=np.int64)
    if px.size == 0 or cx.size == 0:
        return totals
    xmin = int(px.min())
    ymin = int(py.min())
    ymax = int(py.max())
    m = cx.size
    for ri, r in enumerate(radii):
        r = int(r)
        if r <= 0:
            raise ValueError("radii must be positive")
        r2 = r * r
        nby = (ymax - ymin) // r + 3
        keys = (px - xmin) // r * nby + (py - ymin) // r
        order = np.argsort(keys, kind="stable")
        sk = keys[order]
        qbx = (cx - xmin) // r
        qby = (cy - ymin) // r
        # bucket rows cbx-1..cbx+1; in each, keys cby-1..cby+1 are contiguous
        bases = (qbx[:, None] + np.arange(-1, 2)) * nby + qby[:, None]
        los = np.searchsorted(sk, bases.ravel() - 1, side="left").reshape(m, 3)
        his = np.searchsorted(sk, bases.ravel() + 1, side="right").reshape(m, 3)
        total = 0
        for j in range(m):
            for t in range(3):
                lo = los[j, t]
                hi = his[j, t]
                if lo >= hi:
                    continue
                idx = order[lo:hi]
                ddx = px[idx] - cx[j]
                ddy = py[idx] - cy[j]
                total += int(np.count_nonzero(ddx * ddx + ddy * ddy <= r2))
        totals[ri] = total
    return totals


def component_sizes(xs, ys, adjacency=4):
    """Connected component sizes of a point set under 4- or 8-adjacency.

    xs, ys must be lexicographically sorted by (x, y) and duplicate-free.
    Returns an int64 array of component sizes, sorted ascending.
    """
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    n = xs.size
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if adjacency not in (4, 8):
        raise ValueError("adjacency must be 4 or 8")
    ymin = int(ys.min())
    yspan = int(ys.max()) - ymin
    k = yspan + 2
    keys = (xs - int(xs.min())) * k + (ys - ymin)
    # keys are strictly increasing because the input is lex sorted and the
    # y component stays below k-1
    offsets = [k, 1] if adjacency == 4 else [k, 1, k + 1, k - 1]
    parent = np.arange(n, dtype=np.int64)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for off in offsets:
        want = keys - off
        pos = np.searchsorted(keys, want)
        pos = np.clip(pos, 0, n - 1)
        hit = np.nonzero(keys[pos] == want)[0]
        for i in hit:
            a = find(i)
            b = find(pos[i])
            if a != b:
                parent[b] = a
    roots = np.fromiter((find(i) for i in range(n)), dtype=np.int64, count=n)
    sizes = np.bincount(roots)
    return np.sort(sizes[sizes > 0]).astype(np.int64)
