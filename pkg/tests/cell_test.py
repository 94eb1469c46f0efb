import numpy as np
import pytest

from subtraj.cell import approx_cell
from subtraj.cell import ApproxCell
from subtraj.cell import build_ball_polytope
from subtraj.cell import ExactCell
from subtraj.cell.exact import boundary_fns_exact
from subtraj.cell.exact import exact_cell
from subtraj.cell.polygon import reduce_to_3d
from subtraj.curve import PolygonalCurve


def distance(eP, eS, u, y):
    p0, p1 = (np.asarray(_, float) for _ in eP)
    q0, q1 = (np.asarray(_, float) for _ in eS)
    a = p0 + u[..., None] * (p1 - p0)
    b = q0 + y[..., None] * (q1 - q0)
    return np.linalg.norm(a - b, axis=-1)


def random_edges(rng, d):
    return tuple(rng.normal(size=(2, d))), tuple(rng.normal(size=(2, d)))


def test_exact_cell_slices():
    cell = ExactCell(([0, 0], [2, 0]), ([0, 1], [2, 1]), 1.0)
    assert np.allclose(cell.slice(0.5), (0.5, 0.5))
    assert np.allclose(cell.column(0.0), (0.0, 0.0))

    cell = ExactCell(([0, 0], [2, 0]), ([0, 0], [2, 0]), 0.5)
    assert np.allclose(cell.slice(0.5), (0.25, 0.75))
    assert np.allclose(cell.bounds(0.0), (0.0, 0.25))
    ext = cell.extremes()
    assert ext.bottom[0] == 0.0 and ext.top[0] == 1.0
    assert not cell.is_empty

    far = ExactCell(([0, 5], [2, 5]), ([0, 0], [2, 0]), 1.0)
    assert far.is_empty
    assert far.y_range()[0] > far.y_range()[1]


def test_exact_cell_intervals_and_mirror():
    cell = ExactCell(([0, 0], [1, 0]), ([0, 0], [1, 0]), 0.25)
    sides = cell.intervals()
    assert np.allclose(sides.left, (0.0, 0.25))
    assert np.allclose(sides.top, (0.75, 1.0))
    mirror = cell.mirrored()
    assert np.allclose(mirror.slice(0.0), cell.slice(1.0))
    assert np.allclose(mirror.column(0.3), 1.0 - np.asarray(cell.column(0.3))[::-1])


def test_exact_contains_matches_distance():
    rng = np.random.default_rng(0)
    grid = np.linspace(0, 1, 41)
    uu, yy = np.meshgrid(grid, grid)
    for d in (2, 3):
        for _ in range(5):
            eP, eS = random_edges(rng, d)
            cell = ExactCell(eP, eS, 1.0)
            dist = distance(eP, eS, uu, yy)
            inside = cell.contains(uu, yy)
            assert np.all(inside[dist < 1.0 - 1e-9])
            assert not np.any(inside[dist > 1.0 + 1e-9])


def test_slice_matches_contains():
    rng = np.random.default_rng(1)
    for _ in range(10):
        eP, eS = random_edges(rng, 2)
        cell = ExactCell(eP, eS, 1.2)
        for y in np.linspace(0, 1, 11):
            lo, hi = cell.slice(y)
            if lo > hi:
                continue
            u = np.linspace(lo, hi, 7)
            assert np.all(cell.contains(u, np.full(u.size, y), tol=1e-9))


def test_ball_polytope():
    ball = build_ball_polytope(0.1)
    norms = np.linalg.norm(ball.vertices, axis=1)
    assert norms.min() >= 1 - 1e-12
    assert norms.max() <= 1.4 + 1e-12
    sphere = np.random.default_rng(2).normal(size=(500, 3))
    sphere /= np.linalg.norm(sphere, axis=1)[:, None]
    assert np.all(ball.contains(sphere))
    assert not np.any(ball.contains(1.41 * sphere))
    assert build_ball_polytope(0.1) is ball

    with pytest.raises(ValueError, match=".*must be in \\(0, 0.2\\].*"):
        build_ball_polytope(0.3)


def test_reduce_to_3d_is_isometric():
    rng = np.random.default_rng(4)
    eP, eS = random_edges(rng, 6)
    w, p, q = reduce_to_3d(eS, eP)
    for u, y in rng.random((10, 2)):
        expected = distance(eP, eS, np.array(u), np.array(y))
        assert np.isclose(np.linalg.norm(w + u * p - y * q), expected)


def test_approx_cell_polygon():
    cell = ApproxCell([[0.2, 0.0], [1.0, 0.5], [0.2, 1.0]])
    assert cell.slice(0.5) == (0.2, 1.0)
    assert cell.column(0.2) == (0.0, 1.0)
    ext = cell.extremes()
    assert ext.right == (1.0, 0.5, 0.5)
    assert cell.vertex_heights().tolist() == [0.0, 0.5, 1.0]
    assert cell.contains(0.5, 0.5)
    assert not cell.contains(0.1, 0.5)
    assert ApproxCell(np.empty((0, 2))).is_empty


@pytest.mark.parametrize("epsilon", [0.2, 0.1, 0.05])
def test_approx_free_space_sandwich(epsilon):
    # a ball parameter of epsilon / 4 gives B_1 within D within B_{1 + epsilon}
    ball = build_ball_polytope(epsilon / 4)
    rng = np.random.default_rng(int(epsilon * 100))
    grid = np.linspace(0, 1, 50)
    uu, yy = np.meshgrid(grid, grid)
    for d in (2, 3, 6):
        for _ in range(3):
            eP, eS = random_edges(rng, d)
            cell = approx_cell(eS, eP, 1.0, ball)
            dist = distance(eP, eS, uu, yy)
            assert np.all(cell.contains(uu, yy, tol=1e-9)[dist <= 1.0 - 1e-7])
            assert np.all(dist[cell.contains(uu, yy)] <= 1.0 + epsilon + 1e-9)


def test_exact_cell_boundary_functions():
    line = PolygonalCurve([[0, 0], [2, 0]])
    cell = exact_cell(line.edge(1), line.edge(1), 0.5)
    left, right = boundary_fns_exact(cell)
    assert left(0.5) == pytest.approx(0.25)
    assert right(0.5) == pytest.approx(0.75)
    assert left(0.0) == pytest.approx(0.0)
    assert right(1.0) == pytest.approx(1.0)
