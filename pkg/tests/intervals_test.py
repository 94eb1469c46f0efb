import numpy as np
import pytest

from subtraj.intervals import IntervalUnion
from subtraj.intervals import MeasureSolution
from subtraj.intervals import SolutionIntervals


def test_union_normalizes():
    union = IntervalUnion([(0.5, 0.7), (0.0, 0.2), (0.1, 0.3), (0.9, 0.8)])
    assert union.to_list() == [(0.0, 0.3), (0.5, 0.7)]
    assert len(union) == 2
    assert union.measure == pytest.approx(0.5)
    assert IntervalUnion([(0.0, 0.2), (0.2 + 1e-10, 0.4)], tol=1e-9).to_list() == [
        (0.0, 0.4)
    ]
    assert IntervalUnion().is_empty


def test_set_operations():
    a = IntervalUnion([(0.0, 0.4), (0.6, 1.0)])
    b = IntervalUnion([(0.3, 0.7)])
    assert a.union(b).to_list() == [(0.0, 1.0)]
    assert a.intersection(b).to_list() == [(0.3, 0.4), (0.6, 0.7)]
    assert a.difference(b).to_list() == [(0.0, 0.3), (0.7, 1.0)]
    assert a.gaps().to_list() == [(0.4, 0.6)]
    assert not a.covers()
    assert a.union(b).covers()
    assert IntervalUnion([(0.0, 0.5), (0.5 + 1e-7, 1.0)]).covers(tol=1e-6)


def test_contains_and_subset():
    a = IntervalUnion([(0.0, 0.4), (0.6, 1.0)])
    assert a.contains([0.0, 0.5, 0.6, 1.0]).tolist() == [True, False, True, True]
    assert IntervalUnion([(0.1, 0.2)]).issubset(a)
    assert not IntervalUnion([(0.3, 0.7)]).issubset(a)
    assert IntervalUnion([(0.0, 0.4 + 1e-12)]).issubset(a, tol=1e-9)


def test_hausdorff():
    a = IntervalUnion([(0.0, 0.5)])
    b = IntervalUnion([(0.0, 0.5), (0.9, 1.0)])
    assert a.hausdorff(a) == 0.0
    assert a.hausdorff(b) == pytest.approx(0.5)


def test_dict():
    union = IntervalUnion([(0.0, 0.25)])
    assert union.dict() == {"intervals": [[0.0, 0.25]], "measure": 0.25}
    assert '"measure": 0.25' in union.data_structure


def test_solution_intervals():
    sol = SolutionIntervals([0.1, 0.3, 0.5, 0.7, 0.9])
    assert sol.uncovered_count == 5
    assert sol.insert(0.2, 0.6) == [0.3, 0.5]
    assert sol.insert(0.4, 0.8) == [0.7]
    assert sol.covered_count == 3
    assert sol.intervals().to_list() == [(0.2, 0.8)]
    assert sol.residual_count(0.0, 1.0) == 2
    assert sol.residual_count(0.6, 0.5) == 0
    assert sol.insert(0.7, 0.6) == []


def test_solution_alignment():
    sol = SolutionIntervals([0.25, 0.75], boundaries=[0.0, 0.5, 1.0])
    assert sol.residual_count(0.0, 0.5, aligned=True) == 1
    with pytest.raises(ValueError, match=".*not aligned to an interval boundary.*"):
        sol.residual_count(0.1, 0.5, aligned=True)


def test_measure_solution():
    sol = MeasureSolution()
    sol.insert(0.2, 0.4)
    sol.insert(0.3, 0.6)
    sol.insert(0.8, 0.9)
    assert sol.measure == pytest.approx(0.5)
    assert sol.intervals().to_list() == [(0.2, 0.6), (0.8, 0.9)]
    assert sol.residual_measure(0.0, 1.0) == pytest.approx(0.5)
    assert sol.covered_measure(0.5, 0.85) == pytest.approx(0.15)

    sol.remove(0.3, 0.5)
    assert sol.measure == pytest.approx(0.3)
    assert sol.residual_measure(0.2, 0.6) == pytest.approx(0.2)


def test_measure_solution_matches_union():
    rng = np.random.default_rng(3)
    pieces = [tuple(sorted(rng.random(2))) for _ in range(30)]
    sol = MeasureSolution(pieces)
    assert sol.measure == pytest.approx(IntervalUnion(pieces).measure)
