import pytest

from wormdim import DomainError, PointSet, extract_frontier, simulate_walk

from oracles import naive_frontier


def block(x0, x1, y0, y1, skip=()):
    return PointSet(
        (x, y)
        for x in range(x0, x1 + 1)
        for y in range(y0, y1 + 1)
        if (x, y) not in skip
    )


def test_single_point_is_its_own_frontier():
    result = extract_frontier(PointSet([(0, 0)]))
    assert set(map(tuple, result.frontier)) == {(0, 0)}
    assert result.trace_size == 1


def test_empty_trace_rejected():
    with pytest.raises(DomainError):
        extract_frontier(PointSet())


def test_3x3_block_frontier_is_perimeter():
    result = extract_frontier(block(-1, 1, -1, 1))
    assert len(result.frontier) == 8
    assert (0, 0) not in result.frontier


def test_cavity_boundary_is_not_frontier():
    # 5x5 block minus its center: the cavity is a bounded complement
    # component, so only the outer perimeter is frontier
    result = extract_frontier(block(0, 4, 0, 4, skip={(2, 2)}))
    expected = {(x, y) for x in range(5) for y in range(5)
                if x in (0, 4) or y in (0, 4)}
    assert set(map(tuple, result.frontier)) == expected
    assert len(result.frontier) == 16


def test_frontier_subset_of_trace():
    trace = simulate_walk(5000, 13).visited
    result = extract_frontier(trace)
    assert all(p in trace for p in result.frontier)


def test_translation_invariance():
    trace = simulate_walk(800, 5).visited
    shifted = PointSet([(x + 1000, y - 77) for x, y in trace])
    base = {(x, y) for x, y in extract_frontier(trace).frontier}
    moved = {(x - 1000, y + 77) for x, y in extract_frontier(shifted).frontier}
    assert base == moved


def test_interior_removal_keeps_frontier():
    # removing the strict interior point of a solid block leaves the
    # frontier unchanged (the new cavity is bounded)
    solid = block(0, 2, 0, 2)
    holed = block(0, 2, 0, 2, skip={(1, 1)})
    f_solid = set(map(tuple, extract_frontier(solid).frontier))
    f_holed = set(map(tuple, extract_frontier(holed).frontier))
    assert f_solid == f_holed


def test_channel_opening_changes_frontier():
    # carving a channel from the boundary to the cavity exposes the
    # cavity walls: (1,2) flips from interior wall to frontier
    sealed = block(0, 4, 0, 4, skip={(2, 2)})
    opened = block(0, 4, 0, 4, skip={(2, 2), (2, 1), (2, 0)})
    assert (1, 2) not in set(map(tuple, extract_frontier(sealed).frontier))
    assert (1, 2) in set(map(tuple, extract_frontier(opened).frontier))


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 11, 29, 57, 101])
def test_matches_naive_labeling_oracle(seed):
    trace = simulate_walk(200, seed).visited
    result = extract_frontier(trace)
    assert set(map(tuple, result.frontier)) == naive_frontier(
        [(p.x, p.y) for p in trace]
    )


def test_outside_cells_counts_padded_box():
    # 3x3 solid block: padded box is 5x5=25 cells, 9 occupied, no cavity
    result = extract_frontier(block(0, 2, 0, 2))
    assert result.outside_cells == 25 - 9


def test_eight_connected_complement_leaks_through_diagonals():
    # diagonal wall: with 4-connected complement it separates the two
    # sides... both sides still reach around the ends here, but the cavity
    # of a diagonal diamond shows the difference
    diamond = PointSet([(1, 0), (0, 1), (2, 1), (1, 2)])
    four = extract_frontier(diamond, complement_connectivity=4)
    eight = extract_frontier(diamond, complement_connectivity=8)
    # center (1,1) is sealed off under 4-connectivity, reachable under 8
    assert eight.outside_cells == four.outside_cells + 1
