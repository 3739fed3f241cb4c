# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Bit-identical to wormdim._fallback, only faster.

The earthworm hole set is kept in two ordered C++ sets, one keyed (y, x)
and one keyed (x, y), so the nearest-hole-on-ray query is a logarithmic
ordered-successor lookup in the matching index.
"""

import numpy as np

cimport numpy as cnp
from cython.operator cimport dereference as deref
from cython.operator cimport preincrement as inc
from cython.operator cimport predecrement as dec
from libc.stdint cimport int64_t, uint8_t, uint64_t
from libcpp.pair cimport pair
from libcpp.set cimport set as cset
from libcpp.vector cimport vector

cnp.import_array()

COMPILED = True

ctypedef pair[int64_t, int64_t] ipair
ctypedef cset[ipair] pset

cdef uint64_t GOLDEN = (<uint64_t>0x9E3779B9 << 32) | <uint64_t>0x7F4A7C15
cdef uint64_t MUL1 = (<uint64_t>0xBF58476D << 32) | <uint64_t>0x1CE4E5B9
cdef uint64_t MUL2 = (<uint64_t>0x94D049BB << 32) | <uint64_t>0x133111EB


cdef inline uint64_t mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * MUL1
    z = (z ^ (z >> 27)) * MUL2
    return z ^ (z >> 31)


def walk_path(long long n, seed, int law=0):
    """Lattice walk path as an (n+1, 2) int64 array; path[0] is the origin."""
    cdef uint64_t s = <uint64_t>(int(seed) & ((1 << 64) - 1))
    out = np.zeros((n + 1, 2), dtype=np.int64)
    cdef int64_t[:, ::1] v = out
    cdef int64_t x = 0, y = 0
    cdef long long k
    cdef uint64_t z
    cdef int d
    with nogil:
        for k in range(n):
            z = mix64(s + (<uint64_t>(k + 1)) * GOLDEN)
            if law == 0:
                d = <int>(z & 3)
                if d == 0:
                    x += 1
                elif d == 1:
                    x -= 1
                elif d == 2:
                    y += 1
                else:
                    y -= 1
            else:
                x += 1 if (z & 1) == 0 else -1
                y += 1 if ((z >> 1) & 1) == 0 else -1
            v[k + 1, 0] = x
            v[k + 1, 1] = y
    return out


def earthworm_run(long long n, seed, bint fill_nearest=True):
    """Run the earthworm for n steps from a single hole at the origin.

    Returns (holes, worm, creations, fills); holes is (k, 2) int64 sorted
    by (x, y).
    """
    cdef uint64_t s = <uint64_t>(int(seed) & ((1 << 64) - 1))
    cdef pset rows  # ordered by (y, x)
    cdef pset cols  # ordered by (x, y)
    cdef int64_t wx = 0, wy = 0, nx, ny, dx, dy, tx = 0, ty = 0
    cdef long long creations = 0, fills = 0, k
    cdef uint64_t z
    cdef int d
    cdef bint have_target
    cdef pset.iterator it
    rows.insert(ipair(0, 0))
    cols.insert(ipair(0, 0))
    with nogil:
        for k in range(n):
            z = mix64(s + (<uint64_t>(k + 1)) * GOLDEN)
            d = <int>(z & 3)
            if d == 0:
                dx = 1; dy = 0
            elif d == 1:
                dx = -1; dy = 0
            elif d == 2:
                dx = 0; dy = 1
            else:
                dx = 0; dy = -1
            nx = wx + dx
            ny = wy + dy
            if rows.count(ipair(ny, nx)) > 0:
                wx = nx; wy = ny
                continue
            # soil at (nx, ny) is displaced forward along the step direction
            have_target = False
            if fill_nearest:
                if dy == 0:
                    if dx > 0:
                        it = rows.upper_bound(ipair(ny, nx))
                        if it != rows.end() and deref(it).first == ny:
                            ty = ny; tx = deref(it).second
                            have_target = True
                    else:
                        it = rows.lower_bound(ipair(ny, nx))
                        if it != rows.begin():
                            dec(it)
                            if deref(it).first == ny:
                                ty = ny; tx = deref(it).second
                                have_target = True
                else:
                    if dy > 0:
                        it = cols.upper_bound(ipair(nx, ny))
                        if it != cols.end() and deref(it).first == nx:
                            tx = nx; ty = deref(it).second
                            have_target = True
                    else:
                        it = cols.lower_bound(ipair(nx, ny))
                        if it != cols.begin():
                            dec(it)
                            if deref(it).first == nx:
                                tx = nx; ty = deref(it).second
                                have_target = True
            else:
                tx = nx + dx
                ty = ny + dy
                have_target = rows.count(ipair(ty, tx)) > 0
            if have_target:
                rows.erase(ipair(ty, tx))
                cols.erase(ipair(tx, ty))
                fills += 1
            else:
                creations += 1
            rows.insert(ipair(ny, nx))
            cols.insert(ipair(nx, ny))
            wx = nx; wy = ny
    cdef Py_ssize_t m = cols.size(), i = 0
    holes = np.empty((m, 2), dtype=np.int64)
    cdef int64_t[:, ::1] hv = holes
    cdef pset.iterator jt = cols.begin()
    while jt != cols.end():
        hv[i, 0] = deref(jt).first
        hv[i, 1] = deref(jt).second
        inc(jt)
        i += 1
    return holes, (wx, wy), creations, fills


def fill_outside(cnp.uint8_t[:, ::1] state, int connectivity=4):
    """Flood-fill the empty region reachable from cell (0, 0).

    0 = empty, 1 = occupied; reached cells are marked 2 in place. Returns
    the number of cells marked. Scanline fill, iterative, span stack.
    """
    cdef Py_ssize_t h = state.shape[0], w = state.shape[1]
    if connectivity not in (4, 8):
        raise ValueError("connectivity must be 4 or 8")
    if state[0, 0] != 0:
        raise ValueError("seed cell (0, 0) must be empty")
    cdef int e = 1 if connectivity == 8 else 0
    cdef vector[ipair] stack
    cdef long long count = 0
    cdef Py_ssize_t r, c, c1, c2, cc, rr, lo, hi
    stack.push_back(ipair(0, 0))
    with nogil:
        while stack.size() > 0:
            r = stack.back().first
            c = stack.back().second
            stack.pop_back()
            if state[r, c] != 0:
                continue
            c1 = c
            while c1 > 0 and state[r, c1 - 1] == 0:
                c1 -= 1
            c2 = c
            while c2 + 1 < w and state[r, c2 + 1] == 0:
                c2 += 1
            for cc in range(c1, c2 + 1):
                state[r, cc] = 2
            count += c2 - c1 + 1
            lo = c1 - e if c1 - e >= 0 else 0
            hi = c2 + e if c2 + e < w else w - 1
            rr = r - 1
            if rr >= 0:
                cc = lo
                while cc <= hi:
                    if state[rr, cc] == 0:
                        stack.push_back(ipair(rr, cc))
                        while cc <= hi and state[rr, cc] == 0:
                            cc += 1
                    else:
                        cc += 1
            rr = r + 1
            if rr < h:
                cc = lo
                while cc <= hi:
                    if state[rr, cc] == 0:
                        stack.push_back(ipair(rr, cc))
                        while cc <= hi and state[rr, cc] == 0:
                            cc += 1
                    else:
                        cc += 1
    return count


cdef inline Py_ssize_t _lower_bound(int64_t[::1] a, int64_t v) nogil:
    cdef Py_ssize_t lo = 0, hi = a.shape[0], mid
    while lo < hi:
        mid = (lo + hi) // 2
        if a[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline Py_ssize_t _upper_bound(int64_t[::1] a, int64_t v) nogil:
    cdef Py_ssize_t lo = 0, hi = a.shape[0], mid
    while lo < hi:
        mid = (lo + hi) // 2
        if a[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    return lo


def ball_count_totals(px_in, py_in, cx_in, cy_in, radii_in):
    """Summed ball counts: totals[i] = sum over centers of the number of
    points within Euclidean distance radii[i]. Grid-bucketed, cell size r,
    at most nine buckets inspected per query.
    """
    px_a = np.ascontiguousarray(px_in, dtype=np.int64)
    py_a = np.ascontiguousarray(py_in, dtype=np.int64)
    cx_a = np.ascontiguousarray(cx_in, dtype=np.int64)
    cy_a = np.ascontiguousarray(cy_in, dtype=np.int64)
    radii_a = np.ascontiguousarray(radii_in, dtype=np.int64)
    cdef int64_t[::1] px = px_a
    cdef int64_t[::1] py = py_a
    cdef int64_t[::1] cx = cx_a
    cdef int64_t[::1] cy = cy_a
    cdef int64_t[::1] radii = radii_a
    totals = np.zeros(radii_a.shape[0], dtype=np.int64)
    cdef int64_t[::1] tv = totals
    cdef Py_ssize_t n = px.shape[0], m = cx.shape[0], nr = radii.shape[0]
    if n == 0 or m == 0:
        return totals
    cdef int64_t xmin = px[0], ymin = py[0], ymax = py[0]
    cdef Py_ssize_t i
    for i in range(n):
        if px[i] < xmin:
            xmin = px[i]
        if py[i] < ymin:
            ymin = py[i]
        if py[i] > ymax:
            ymax = py[i]
    keys_a = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] keys = keys_a
    cdef Py_ssize_t ri, j, t, lo, hi, q
    cdef int64_t r, r2, nby, base, ddx, ddy, total, acc, cbx, cby
    cdef int64_t[::1] sk
    cdef int64_t[::1] order
    for ri in range(nr):
        r = radii[ri]
        if r <= 0:
            raise ValueError("radii must be positive")
        r2 = r * r
        nby = (ymax - ymin) // r + 3
        for i in range(n):
            keys[i] = (px[i] - xmin) // r * nby + (py[i] - ymin) // r
        order_a = np.argsort(keys_a, kind="stable").astype(np.int64)
        sk_a = keys_a[order_a]
        order = order_a
        sk = sk_a
        total = 0
        with nogil:
            for j in range(m):
                cbx = (cx[j] - xmin) // r
                cby = (cy[j] - ymin) // r
                acc = 0
                for t in range(3):
                    base = (cbx + t - 1) * nby + cby
                    lo = _lower_bound(sk, base - 1)
                    hi = _upper_bound(sk, base + 1)
                    for q in range(lo, hi):
                        i = order[q]
                        ddx = px[i] - cx[j]
                        ddy = py[i] - cy[j]
                        if ddx * ddx + ddy * ddy <= r2:
                            acc += 1
                total += acc
        tv[ri] = total
    return totals


cdef inline Py_ssize_t _pair_find(int64_t[::1] xs, int64_t[::1] ys,
                                  int64_t a, int64_t b) nogil:
    cdef Py_ssize_t lo = 0, hi = xs.shape[0], mid
    while lo < hi:
        mid = (lo + hi) // 2
        if xs[mid] < a or (xs[mid] == a and ys[mid] < b):
            lo = mid + 1
        else:
            hi = mid
    if lo < xs.shape[0] and xs[lo] == a and ys[lo] == b:
        return lo
    return -1


cdef inline Py_ssize_t _uf_find(int64_t[::1] parent, Py_ssize_t i) nogil:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def component_sizes(xs_in, ys_in, int adjacency=4):
    """Connected component sizes under 4- or 8-adjacency.

    xs, ys must be lexicographically sorted by (x, y) and duplicate-free.
    Returns an int64 array of sizes, sorted ascending.
    """
    xs_a = np.ascontiguousarray(xs_in, dtype=np.int64)
    ys_a = np.ascontiguousarray(ys_in, dtype=np.int64)
    cdef int64_t[::1] xs = xs_a
    cdef int64_t[::1] ys = ys_a
    cdef Py_ssize_t n = xs.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if adjacency not in (4, 8):
        raise ValueError("adjacency must be 4 or 8")
    parent_a = np.arange(n, dtype=np.int64)
    cdef int64_t[::1] parent = parent_a
    cdef Py_ssize_t i, j, a, b
    cdef int nd = 2 if adjacency == 4 else 4
    cdef int64_t deltas[4][2]
    deltas[0][0] = -1; deltas[0][1] = 0   # (x-1, y)
    deltas[1][0] = 0;  deltas[1][1] = -1  # (x, y-1)
    deltas[2][0] = -1; deltas[2][1] = -1  # (x-1, y-1)
    deltas[3][0] = -1; deltas[3][1] = 1   # (x-1, y+1)
    cdef int t
    with nogil:
        for i in range(n):
            for t in range(nd):
                j = _pair_find(xs, ys, xs[i] + deltas[t][0], ys[i] + deltas[t][1])
                if j >= 0:
                    a = _uf_find(parent, i)
                    b = _uf_find(parent, j)
                    if a != b:
                        parent[b] = a
    counts_a = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] counts = counts_a
    with nogil:
        for i in range(n):
            counts[_uf_find(parent, i)] += 1
    sizes = counts_a[counts_a > 0]
    return np.sort(sizes)
