import numpy as np
import pytest

from subtraj.curve import PolygonalCurve
from subtraj.freespace import boundary_fns
from subtraj.freespace import build_free_space
from subtraj.freespace import build_free_spaces
from subtraj.freespace import extremal_points
from subtraj.freespace import ExtremalSet
from subtraj.tests import random_walk

LINE = PolygonalCurve([[0, 0], [1, 0], [2, 0]])
SEGMENT = PolygonalCurve([[0, 0], [2, 0]])


@pytest.fixture
def band():
    # |y - x| <= 0.125 in global coordinates
    return build_free_space(LINE, SEGMENT, 1, 0.25)


def test_extremal_heights(band):
    heights = band.heights
    assert heights[0] == 0.0 and heights[-1] == 1.0
    assert np.all(np.diff(heights) > 0)
    for y in (0.375, 0.625):
        assert np.min(np.abs(heights - y)) < 1e-9
    assert band.m == heights.size
    assert len(band) == 2
    assert np.allclose(band.x_grid, [0.0, 0.5, 1.0])


def test_boundary_tables(band):
    # the exact bottom height of the second cell
    h = int(np.flatnonzero(band.heights == band.cells[1].extremes().bottom[0])[0])
    assert band.l_table[0, h] == pytest.approx(0.25)
    assert band.r_table[0, h] == pytest.approx(0.5)
    assert band.l_table[1, h] == pytest.approx(0.5)
    assert band.r_table[1, h] == pytest.approx(0.5, abs=1e-6)
    # the second cell is empty at height zero
    assert np.isinf(band.l_table[1, 0])
    assert boundary_fns(band, 0, 0.0) == pytest.approx((0.0, 0.25))

    assert band.bottom_x == pytest.approx([0.0, 0.5], abs=1e-6)
    assert band.top_x == pytest.approx([0.5, 1.0], abs=1e-6)
    assert band.boundary_lo == pytest.approx([0.375])
    assert band.boundary_hi == pytest.approx([0.625])

    with pytest.raises(ValueError, match=".*is not an extremal height.*"):
        band.height_index(0.3)


def test_mirrored(band):
    mirror = band.mirrored()
    assert mirror.reversed and not band.reversed
    assert np.allclose(mirror.heights, 1.0 - band.heights[::-1])
    assert np.array_equal(mirror.l_table, band.l_table[:, ::-1])
    assert mirror.boundary_lo == pytest.approx([0.375])
    assert mirror.boundary_hi == pytest.approx([0.625])
    assert np.allclose(mirror.mirrored().heights, band.heights)


def test_mirrored_matches_reversed_edge():
    P = random_walk(5, seed=3)
    S = PolygonalCurve(P.as_array()[[0, 4]])
    space = build_free_space(P, S, 1, 1.5)
    rebuilt = build_free_space(P, S.reverse(), 1, 1.5)
    mirror = space.mirrored()
    for y in np.linspace(0, 1, 11):
        for cell, other in zip(mirror.cells, rebuilt.cells):
            lo, hi = other.slice(y)
            if lo <= hi:
                assert np.allclose(cell.slice(y), (lo, hi), atol=1e-9)
            else:
                assert cell.slice(y)[0] > cell.slice(y)[1]


def test_extremal_points():
    assert extremal_points([]).heights.tolist() == [0.0, 1.0]
    ext = ExtremalSet([(0.25, 0, "bottom"), (1.5, 1, "top")])
    assert ext.heights.tolist() == [0.0, 0.25, 1.0]
    assert len(ext.mirrored()) == 3


def test_build_free_spaces():
    P = random_walk(8, seed=1)
    S = PolygonalCurve(P.as_array()[[0, 3, 7]])
    spaces = build_free_spaces(P, S, 1.0)
    assert [space.edge for space in spaces] == [1, 2]
    assert all(len(space) == P.edge_count for space in spaces)
    assert "FreeSpace(edge=1" in repr(spaces[0])

    error = "is an invalid `backend` enumeration literal"
    with pytest.raises(ValueError, match=f".*{error}.*"):
        build_free_space(P, S, 1, 1.0, backend="conic")


def test_approx_rows_contain_exact_rows():
    P = random_walk(6, seed=5)
    S = PolygonalCurve(P.as_array()[[1, 4]])
    exact = build_free_space(P, S, 1, 1.0)
    approx = build_free_space(P, S, 1, 1.0, backend="approx", epsilon=0.1)
    assert len(approx) == len(exact)
    for cell, outer in zip(exact.cells, approx.cells):
        for y in np.linspace(0, 1, 21):
            lo, hi = cell.slice(y)
            if lo > hi:
                continue
            a, b = outer.slice(y)
            assert a - 1e-7 <= lo and hi <= b + 1e-7
