import numpy as np
import pytest

from subtraj.curve import PolygonalCurve
from subtraj.frechet import free_space_rows
from subtraj.intervals import IntervalUnion
from subtraj.oracle import brute_best_k_measure
from subtraj.oracle import brute_cov
from subtraj.oracle import brute_setcover
from subtraj.oracle import discrete_frechet
from subtraj.oracle import GridReachability
from subtraj.oracle import resample

LINE = PolygonalCurve([[0, 0], [1, 0], [2, 0]])


def test_grid_reachability_all_free():
    rows = free_space_rows(LINE, PolygonalCurve([[0, 0], [2, 0]]), 5.0)
    grid = GridReachability(rows, rho=4)
    assert grid.rho == 4
    assert grid.columns == 2
    assert grid.free.shape == (5, 9)
    assert grid.free.all()
    best = grid.min_start(0, 4)
    assert best.tolist() == [0.0] * 9


def test_grid_reachability_blocked():
    rows = free_space_rows(LINE, PolygonalCurve([[0, 3], [2, 3]]), 1.0)
    grid = GridReachability(rows, rho=4)
    assert not grid.free.any()
    assert np.isinf(grid.min_start(0, 4)).all()
    assert brute_cov(rows, 0.0, 1.0, rho=4).is_empty


def test_brute_cov_on_a_band():
    # the center sits on the middle third of the line
    rows = free_space_rows(LINE, PolygonalCurve([[0.75, 0], [1.25, 0]]), 0.25)
    cov = brute_cov(rows, 0.0, 1.0, rho=64)
    assert len(cov) == 1
    lo, hi = cov.to_list()[0]
    assert lo == pytest.approx(0.25, abs=2 / 128)
    assert hi == pytest.approx(0.75, abs=2 / 128)


def test_brute_setcover():
    assert brute_setcover([{0, 1}, {1, 2}, {2}], 3) == 2
    assert brute_setcover([{0, 1, 2}, {0}], 3) == 1
    assert brute_setcover([{0}], 0) == 0
    covs = [IntervalUnion([(0, 0.6)]), IntervalUnion([(0.4, 1.0)])]
    assert brute_setcover(covs, [0.1, 0.5, 0.9]) == 2
    with pytest.raises(ValueError, match=".*do not cover.*"):
        brute_setcover([{0}], 2)
    with pytest.raises(ValueError, match=".*too large for exhaustive search.*"):
        brute_setcover([{i} for i in range(30)], 30)


def test_brute_best_k_measure():
    covs = [
        IntervalUnion([(0, 0.5)]),
        IntervalUnion([(0.25, 1.0)]),
        IntervalUnion([(0.6, 0.7)]),
    ]
    measure, arg = brute_best_k_measure(covs, 2)
    assert measure == pytest.approx(1.0)
    assert arg == (0, 1)
    measure, arg = brute_best_k_measure(covs, 5)
    assert measure == pytest.approx(1.0)
    assert arg == (0, 1, 2)
    many = [IntervalUnion([(0, 1)])] * 200
    with pytest.raises(ValueError, match=".*the limit is.*"):
        brute_best_k_measure(many, 4)


def test_discrete_frechet():
    assert discrete_frechet([[0, 0], [1, 0]], [[0, 1], [1, 1]]) == 1.0
    P = PolygonalCurve([[0, 0], [2, 0]])
    assert discrete_frechet(P, P) == 0.0
    # the orientation matters
    assert discrete_frechet([[0, 0], [2, 0]], [[2, 0], [0, 0]]) == 2.0


def test_resample():
    points = resample(LINE, 5)
    assert np.allclose(points, [[0, 0], [0.5, 0], [1, 0], [1.5, 0], [2, 0]])
