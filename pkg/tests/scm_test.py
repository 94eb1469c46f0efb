import numpy as np
import pytest

from subtraj.coverage import proxy_cov
from subtraj.freespace import build_free_space
from subtraj.intervals import MeasureSolution
from subtraj.oracle import brute_best_k_measure
from subtraj.oracle import candidate_coverages
from subtraj.simplify import simplify
from subtraj.solver import prepare_workspace
from subtraj.solver import solve_scm
from subtraj.solver import verify_coverage
from subtraj.solver.scm import build_coeff_events
from subtraj.solver.scm import eval_all_residual_measures
from subtraj.solver.scm import residual_measure
from subtraj.solver.scm import sweep_residual_measures
from subtraj.solver.scm import update_events_on_insert
from subtraj.tests import random_walk
from subtraj.tests import sample_instance
from subtraj.tests import segment

EPSILON = 0.8


def approx_workspace(seed, n=6, delta=0.5, ell=3):
    P = random_walk(n, seed=seed)
    ws = prepare_workspace(
        P, simplify(P, delta), 4 * delta, ell, backend="approx", epsilon=EPSILON / 16
    )
    coeffs = {}
    for sweep in ws.sweeps:
        key = (sweep.edge, sweep.space.reversed)
        coeffs.setdefault(key, build_coeff_events(sweep.space))
    return ws, coeffs


def test_segment_single_center():
    sol = solve_scm(segment(4.0), 0.5, 2, k=1, epsilon=EPSILON)
    assert len(sol) == 1
    assert sol.radius == pytest.approx(4.8 * 0.5)
    assert sol.measure == pytest.approx(1.0, abs=1e-9)

    more = solve_scm(segment(4.0), 0.5, 2, k=3, epsilon=EPSILON)
    # nothing is left to cover after the first round
    assert len(more) == 1
    assert more.stats["rounds"] == 1
    assert more.stats["measures"] == pytest.approx([1.0], abs=1e-9)


def test_solve_scm_errors():
    with pytest.raises(ValueError, match=".*`k` must be greater than zero.*"):
        solve_scm(segment(), 0.5, 2, k=0)
    with pytest.raises(ValueError, match=".*`epsilon` must be in \\(0, 0.8\\].*"):
        solve_scm(segment(), 0.5, 2, k=1, epsilon=0.9)
    with pytest.raises(ValueError, match=".*`epsilon` must be in \\(0, 0.8\\].*"):
        solve_scm(segment(), 0.5, 2, k=1, epsilon=0.0)


@pytest.mark.parametrize("seed", range(3))
def test_solve_scm_is_verified(seed):
    P, delta = sample_instance(seed, n_range=(6, 10))
    sol = solve_scm(P, delta, 4, k=3, epsilon=EPSILON)
    assert 1 <= len(sol) <= 3
    exact = verify_coverage(P, sol.curves(), sol.radius)
    assert sol.coverage.issubset(exact, tol=1e-6)
    measures = sol.stats["measures"]
    assert len(measures) == len(sol)
    assert all(a <= b + 1e-12 for a, b in zip(measures, measures[1:]))
    assert measures[-1] == pytest.approx(sol.measure, abs=1e-9)


@pytest.mark.parametrize("seed", [0, 1])
def test_first_round_is_the_best_single_center(seed):
    P = random_walk(6, seed=seed)
    sol = solve_scm(P, 0.5, 3, k=1, epsilon=EPSILON)
    ws, _ = approx_workspace(seed)
    best = max(cov.measure for _, cov in candidate_coverages(ws))
    assert sol.measure == pytest.approx(best, abs=1e-7)


@pytest.mark.parametrize("seed", [2, 3])
def test_two_centers_against_brute_force(seed):
    P = random_walk(5, seed=seed)
    sol = solve_scm(P, 1.0, 3, k=2, epsilon=EPSILON)
    ws = prepare_workspace(
        P, simplify(P, 1.0), 4.0, 3, backend="approx", epsilon=EPSILON / 16
    )
    coverages = [cov for _, cov in candidate_coverages(ws)]
    try:
        best, _ = brute_best_k_measure(coverages, 2)
    except ValueError as error:
        pytest.skip(str(error))
    assert (1 - 1 / np.e) * best - 1e-7 <= sol.measure <= best + 1e-7


@pytest.mark.parametrize("seed", [4, 5])
def test_sweep_residuals_match_direct_sums(seed):
    ws, coeffs = approx_workspace(seed)
    sol = MeasureSolution()
    for lo, hi in [(0.1, 0.3), (0.55, 0.6), (0.9, 0.95)]:
        for coeff in coeffs.values():
            update_events_on_insert(coeff, lo, hi)
        sol.insert(lo, hi)

    for sweep, events in zip(ws.sweeps, ws.events):
        coeff = coeffs[(sweep.edge, sweep.space.reversed)]
        values = sweep_residual_measures(sweep, events, coeff)
        for w in range(len(sweep)):
            cov = proxy_cov(sweep.space, int(sweep.s_idx[w]), int(sweep.t_idx[w]))
            direct = sum(residual_measure(sol, lo, hi) for lo, hi in cov)
            assert values[w] == pytest.approx(direct, abs=1e-7)

    best = eval_all_residual_measures(ws, coeffs, sol)
    assert best is not None
    assert best.weight == pytest.approx(
        sum(residual_measure(sol, lo, hi) for lo, hi in best.coverage), abs=1e-7
    )


def test_coeff_events_replay_the_tables():
    ws, coeffs = approx_workspace(6)
    for coeff in coeffs.values():
        space = coeff.space
        for k in range(len(space)):
            for chain, table in (("l", space.l_table), ("r", space.r_table)):
                replayed = coeff.replay(k, chain)
                finite = np.isfinite(table[k])
                assert np.array_equal(np.isfinite(replayed), finite)
                assert np.allclose(replayed[finite], table[k][finite], atol=1e-9)
        n = len(space)
        assert coeff.residual_between(0, n - 1) == pytest.approx(1.0)
        assert coeff.residual_between(3, 1) == 0


def test_update_events():
    ws, coeffs = approx_workspace(7)
    coeff = next(iter(coeffs.values()))
    n = len(coeff.space)
    changed = update_events_on_insert(coeff, 0.0, 1.0 / n)
    assert changed == [0]
    assert coeff.cell_residuals[0] == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError, match=".*overlaps the solution inconsistently.*"):
        update_events_on_insert(coeff, 0.0, 0.5 / n)
    update_events_on_insert(coeff, 0.0, 1.0 / n, remove=True)
    assert coeff.cell_residuals[0] == pytest.approx(1.0 / n)
    with pytest.raises(ValueError, match=".*is inverted.*"):
        update_events_on_insert(coeff, 0.5, 0.25)


def streams(coeff):
    return [
        [dict(stream) for stream in streams]
        for streams in (coeff.m_minus, coeff.b_minus, coeff.m_plus, coeff.b_plus)
    ]


@pytest.mark.parametrize("seed", range(4))
def test_inserts_match_a_full_rebuild(seed):
    ws, coeffs = approx_workspace(seed + 8)
    rng = np.random.default_rng(seed)
    ends = np.sort(rng.uniform(0, 1, 8)).reshape(-1, 2)
    pieces = [tuple(pair) for pair in ends[rng.permutation(len(ends))]]
    sol = MeasureSolution()
    for lo, hi in pieces:
        for coeff in coeffs.values():
            update_events_on_insert(coeff, lo, hi)
        sol.insert(lo, hi)

    for coeff in coeffs.values():
        space = coeff.space
        x = space.x_grid
        assert coeff.covered == sol.intervals()
        for k in range(len(space)):
            assert coeff.cell_residuals[k] == pytest.approx(
                sol.residual_measure(x[k], x[k + 1]), abs=1e-12
            )
            for chain, table in (("l", space.l_table), ("r", space.r_table)):
                finite = np.isfinite(table[k])
                clipped = [
                    v - sol.covered_measure(x[k], v) for v in table[k][finite]
                ]
                replayed = coeff.replay(k, chain)[finite]
                assert np.allclose(replayed, clipped, atol=1e-9)

        incremental = streams(coeff)
        for k in range(len(space)):
            coeff._rebuild(k)
        assert streams(coeff) == incremental


def test_insert_then_remove_restores_the_events():
    ws, coeffs = approx_workspace(9)
    for coeff in coeffs.values():
        update_events_on_insert(coeff, 0.05, 0.2)
    for coeff in coeffs.values():
        n = len(coeff.space)
        before = streams(coeff)
        residuals = coeff.cell_residuals.copy()
        hi = 0.3 + 2.5 / n
        changed = update_events_on_insert(coeff, 0.3, hi)
        assert len(changed) >= 3
        if any(coeff._first[k] >= 0 for k in changed[1:-1]):
            assert streams(coeff) != before
        assert update_events_on_insert(coeff, 0.3, hi, remove=True) == changed
        assert streams(coeff) == before
        assert np.allclose(coeff.cell_residuals, residuals, atol=1e-12)


def test_covered_cell_has_constant_chains():
    ws, coeffs = approx_workspace(7)
    for coeff in coeffs.values():
        space = coeff.space
        n = len(space)
        update_events_on_insert(coeff, 0.0, 1.0 / n)
        for chain in ("l", "r"):
            replayed = coeff.replay(0, chain)
            finite = replayed[np.isfinite(replayed)]
            assert np.allclose(finite, space.x_grid[0], atol=1e-12)
        assert coeff.residual_between(0, 0) == pytest.approx(0.0, abs=1e-12)


def test_coeff_events_need_polygonal_rows():
    P = random_walk(4, seed=1)
    space = build_free_space(P, simplify(P, 0.5).curve, 1, 2.0)
    with pytest.raises(ValueError, match=".*require the polygonal free space.*"):
        build_coeff_events(space)
