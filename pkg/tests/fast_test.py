import math
from bisect import bisect_right

import numpy as np
import pytest

from subtraj.intervals import IntervalUnion
from subtraj.oracle import brute_setcover
from subtraj.oracle import candidate_coverages
from subtraj.simplify import simplify
from subtraj.solver import cover_a_fast
from subtraj.solver import prepare_workspace
from subtraj.solver import solve_sc
from subtraj.solver import verify_coverage
from subtraj.solver.fast import _monotone_pieces
from subtraj.solver.fast import alpha_coarse
from subtraj.solver.fast import build_implicit_lists
from subtraj.solver.fast import ImplicitSortedList
from subtraj.solver.fast import rank_select_coarsen
from subtraj.solver.fast import uncovered_extract
from subtraj.solver.sc import compute_atomic
from subtraj.solver.sc import row_values
from subtraj.tests import random_walk
from subtraj.tests import sample_instance
from subtraj.tests import segment


def random_lists(seed, count, size):
    rng = np.random.default_rng(seed)
    return [
        ImplicitSortedList(np.sort(rng.random(rng.integers(0, size))), (i,))
        for i in range(count)
    ]


def assert_partition(lists, part, K):
    items = sorted(items.item_at(j) for items in lists for j in range(len(items)))
    total = len(items)
    assert int(part.counts.sum()) == total
    assert part.counts.max() <= 20 * total / K
    assert len(part) <= 8 * K
    keys = part.keys
    assert keys == sorted(keys)
    for b, key in enumerate(keys):
        first = bisect_right(items, key) - 1
        last = bisect_right(items, keys[b + 1]) - 1 if b + 1 < len(keys) else total
        assert items[first] == key
        assert last - first == part.counts[b]


def test_implicit_sorted_list():
    items = ImplicitSortedList([0.1, 0.2, 0.2, 0.4], (1,), edge=2)
    assert len(items) == 4 and items.edge == 2
    assert items.item_at(3) == (0.4, (1,), 3)
    assert items.rank_below((0.2, (1,), 1)) == 1
    assert items.rank_below((0.2, (0,), 5)) == 1
    assert items.rank_below((0.2, (2,), 0)) == 3
    assert items.rank_below((1.0, (0,), 0)) == 4
    assert items.range_between(0.15, 0.3) == (1, 3)
    with pytest.raises(ValueError, match=".*must not decrease.*"):
        ImplicitSortedList([0.3, 0.1], (0,))


def test_monotone_pieces():
    inf = np.inf
    pieces = _monotone_pieces(np.array([inf, 0.5, 0.3, 0.4, inf]), "l")
    assert [p.tolist() for p in pieces] == [[0.3, 0.5], [0.3, 0.4]]
    pieces = _monotone_pieces(np.array([0.2, 0.6, 0.4]), "r")
    assert [p.tolist() for p in pieces] == [[0.2, 0.6], [0.4, 0.6]]
    assert _monotone_pieces(np.full(3, inf), "l") == []


@pytest.mark.parametrize("K", [1, 7, 60, 400])
def test_rank_select_occupancy(K):
    lists = random_lists(K, 12, 300)
    part = rank_select_coarsen(lists, K)
    assert_partition(lists, part, K)


def test_rank_select_skewed():
    lists = [ImplicitSortedList(np.linspace(0, 1, 2000), (0,))] + [
        ImplicitSortedList([], (i,)) for i in range(1, 5)
    ]
    for K in (3, 50, 2000):
        assert_partition(lists, rank_select_coarsen(lists, K), K)


def test_rank_select_ties():
    lists = [ImplicitSortedList(np.full(50, 0.5), (i,)) for i in range(4)]
    part = rank_select_coarsen(lists, 10)
    assert_partition(lists, part, 10)
    assert len(rank_select_coarsen([], 3)) == 0
    with pytest.raises(ValueError, match=".*must be at least 1.*"):
        rank_select_coarsen(lists, 0)


@pytest.fixture(scope="module")
def workspace():
    P = random_walk(8, seed=3)
    return prepare_workspace(P, simplify(P, 0.5), 2.0, 4)


def test_alpha_coarse(workspace):
    lists = build_implicit_lists(workspace.spaces)
    total = sum(len(_) for _ in lists)
    single = alpha_coarse(workspace, 0.0, lists)
    assert len(single) == 1
    assert single.midpoints().tolist() == [0.5]

    part = alpha_coarse(workspace, 1.5, lists)
    K = int(np.ceil(8**1.5))
    assert_partition(lists, part, K)

    raw = np.concatenate([row_values(space) for space in workspace.spaces] + [[0, 1]])
    assert np.abs(part.values[:, None] - raw[None, :]).min(axis=1).max() <= 1e-12

    full = alpha_coarse(workspace, 3.0, lists)
    assert_partition(lists, full, min(total, 8**3))
    with pytest.raises(ValueError, match=".*`alpha` must be in \\[0, 3\\].*"):
        alpha_coarse(workspace, 3.5, lists)


def test_uncovered_extract(workspace):
    atomic = compute_atomic(workspace.spaces)
    midpoints, molecular = uncovered_extract(IntervalUnion(), workspace)
    assert np.allclose(np.sort(midpoints), atomic.midpoints, atol=1e-9)
    assert set(molecular) == {space.edge for space in workspace.spaces}
    assert all(molecular.values())

    midpoints, molecular = uncovered_extract(IntervalUnion([(0, 1)]), workspace)
    assert midpoints.size == 0
    assert not any(molecular.values())

    b = atomic.boundaries
    covered = IntervalUnion([(b[1], b[-3])])
    midpoints, _ = uncovered_extract(covered, workspace)
    expected = atomic.midpoints[~covered.contains(atomic.midpoints)]
    assert np.allclose(np.sort(midpoints), expected, atol=1e-9)


def test_uncovered_extract_molecular_intervals(workspace):
    atomic = compute_atomic(workspace.spaces)
    b = atomic.boundaries
    covered = IntervalUnion([(b[2], b[len(b) // 2])])
    midpoints, molecular = uncovered_extract(covered, workspace)
    gaps = IntervalUnion([(0.0, 1.0)]).difference(covered)
    for space in workspace.spaces:
        bounds = np.unique(np.concatenate([row_values(space), [0.0, 1.0]]))
        expected = sorted(
            {
                (float(x), float(y))
                for x, y in zip(bounds[:-1], bounds[1:])
                if any(x < hi and y > lo for lo, hi in gaps)
            }
        )
        assert molecular[space.edge] == expected
    assert len(workspace.spaces) > 1
    assert min(len(v) for v in molecular.values()) < midpoints.size


def test_cover_a_fast_segment():
    sol = cover_a_fast(segment(4.0), 0.5, 2)
    assert len(sol) == 1
    assert sol.stats["K"] == 1 and sol.stats["attempts"] == 1
    assert sol.coverage.covers(tol=1e-6)


@pytest.mark.parametrize("seed", range(50))
def test_cover_a_fast_is_verified(seed):
    P, delta = sample_instance(seed + 10, n_range=(6, 30))
    fast = cover_a_fast(P, delta, 4)
    assert verify_coverage(P, fast.curves(), fast.radius).covers(tol=1e-6)
    assert fast.coverage.covers(tol=1e-6)
    assert fast.stats["K"] >= 1
    with pytest.raises(ValueError, match=".*`ell` must be at least 2.*"):
        cover_a_fast(P, delta, 1)


@pytest.mark.parametrize("seed", range(8))
def test_solution_size_bounds(seed):
    P, delta, ell = random_walk(5, seed=seed), 1.0, 3
    ws = prepare_workspace(P, simplify(P, delta), 4 * delta, ell)
    points = compute_atomic(ws.spaces).midpoints
    coverages = [cov for _, cov in candidate_coverages(ws)]
    try:
        k_cand = brute_setcover(coverages, points)
    except ValueError as error:
        pytest.skip(str(error))
    if k_cand > 4:
        pytest.skip(f"optimum {k_cand} is above the tiny-instance range")

    n = len(P)
    fast = cover_a_fast(P, delta, ell)
    assert len(fast) <= (96 * math.log(n) + 128) * k_cand
    slow = solve_sc(P, delta, ell)
    assert len(slow) <= 16 * (math.log(points.size) + 1) * k_cand
