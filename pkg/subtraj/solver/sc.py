"""Greedy subtrajectory covering over the candidate set.

The points to cover are the midpoints of the atomic intervals: the pieces of
[0, 1] cut out by the free space boundaries of every row at every extremal
height. Covering all of them covers [0, 1]. Per edge of S the same points are
grouped into molecular intervals, cut only by the boundaries of that edge's
row; the proxy coverage of a Type (II) or (III) candidate of the edge is a union
of whole molecular intervals, so the sweeps weigh molecular midpoints.
"""
import logging
import time

import numpy as np
from sortedcontainers import SortedDict

from subtraj.coverage.query import batch_point_query
from subtraj.coverage.query import WeightedPointSet
from subtraj.coverage.state import proxy_cov
from subtraj.intervals import IntervalUnion
from subtraj.intervals import SolutionIntervals
from subtraj.simplify import simplify
from subtraj.solver.base import Choice
from subtraj.solver.base import CoverageError
from subtraj.solver.base import prepare_workspace
from subtraj.solver.base import RoundLimitExceeded
from subtraj.solver.base import Solution
from subtraj.solver.base import type_counts
from subtraj.utils import TOLERANCE

__author__ = "The subtraj developers"

__all__ = [
    "AtomicIntervals",
    "MolecularIntervals",
    "compute_atomic",
    "residual_count",
    "cover_a",
    "solve_sc",
]

logger = logging.getLogger(__name__)


def row_values(space):
    """The finite ``l`` and ``r`` values of a row at its extremal heights."""
    values = np.concatenate([space.l_table.ravel(), space.r_table.ravel()])
    return np.clip(values[np.isfinite(values)], 0.0, 1.0)


def cluster(values, tol=TOLERANCE):
    """Group sorted values into runs whose consecutive gaps are at most tol.

    Returns:
        The first and the last value of every run.

    Example:
        >>> first, last = cluster([0.0, 0.5, 0.5 + 1e-12, 1.0])
        >>> first.tolist(), len(last)
        ([0.0, 0.5, 1.0], 3)
    """
    values = np.unique(np.asarray(values, dtype=float))
    if values.size == 0:
        return values, values
    breaks = np.flatnonzero(np.diff(values) > tol)
    first = values[np.concatenate([[0], breaks + 1])]
    last = values[np.concatenate([breaks, [values.size - 1]])]
    return first, last


class AtomicIntervals:
    """Atomic interval boundaries of [0, 1] and one midpoint per interval.

    Boundaries closer than the tolerance are merged into a run; the midpoint of
    an atomic interval lies halfway between the end of one run and the start of
    the next.

    Example:
        >>> atomic = AtomicIntervals([0.0, 0.25, 1.0])
        >>> atomic.midpoints.tolist()
        [0.125, 0.625]
    """

    __slots__ = ("_boundaries", "_midpoints")

    def __init__(self, values, tol=TOLERANCE):
        values = np.concatenate([[0.0, 1.0], np.asarray(values, dtype=float)])
        first, last = cluster(values, tol)
        self._boundaries = first
        self._midpoints = (last[:-1] + first[1:]) / 2

    def __len__(self):
        return self._midpoints.size

    @property
    def boundaries(self):
        return self._boundaries

    @property
    def midpoints(self):
        """The point set A."""
        return self._midpoints


def compute_atomic(spaces, tol=TOLERANCE):
    """The atomic intervals of a set of free space rows.

    Args:
        spaces: The rows of every edge of S, at radius ``4 delta``.

    Example:
        >>> from subtraj.curve import PolygonalCurve
        >>> from subtraj.freespace import build_free_spaces
        >>> P = PolygonalCurve([[0, 0], [1, 0], [2, 0]])
        >>> spaces = build_free_spaces(P, PolygonalCurve([[0, 0], [2, 0]]), 10.0)
        >>> compute_atomic(spaces).boundaries.tolist()
        [0.0, 0.5, 1.0]
    """
    values = [row_values(space) for space in spaces]
    return AtomicIntervals(np.concatenate(values) if values else [], tol)


class MolecularIntervals:
    """The molecular intervals of one edge with their remaining weights.

    Molecular boundaries are the ``l`` and ``r`` values of the edge's row. A
    molecular interval weighs the number of still uncovered points inside it;
    the nonzero weights live in a :class:`~sortedcontainers.SortedDict` keyed
    by the molecular midpoint.

    Args:
        space: The forward row of the edge.
        points: The points to cover.

    Example:
        >>> from subtraj.curve import PolygonalCurve
        >>> from subtraj.freespace import build_free_space
        >>> P = PolygonalCurve([[0, 0], [1, 0], [2, 0]])
        >>> space = build_free_space(P, PolygonalCurve([[0, 0], [2, 0]]), 1, 10.0)
        >>> mol = MolecularIntervals(space, [0.1, 0.2, 0.7])
        >>> dict(mol.weights)
        {0.25: 2, 0.75: 1}
    """

    __slots__ = ("_edge", "_boundaries", "_weights")

    def __init__(self, space, points):
        self._edge = space.edge
        self._boundaries = np.unique(np.concatenate([[0.0, 1.0], row_values(space)]))
        self._weights = SortedDict()
        Q = self.aggregate(points)
        for mid, w in zip(Q.points.tolist(), Q.weights.tolist()):
            self._weights[mid] = w

    def __len__(self):
        return self._boundaries.size - 1

    @property
    def edge(self):
        return self._edge

    @property
    def boundaries(self):
        return self._boundaries

    @property
    def weights(self):
        """Nonzero molecular weights keyed by midpoint."""
        return self._weights

    @property
    def total(self):
        return sum(self._weights.values())

    def locate(self, points):
        """Index of the molecular interval of every point."""
        index = np.searchsorted(self._boundaries, points, side="right") - 1
        return np.clip(index, 0, len(self) - 1)

    def aggregate(self, points):
        """The points grouped at their molecular midpoints, as weights."""
        points = np.asarray(points, dtype=float)
        if points.size == 0:
            return WeightedPointSet()
        index, counts = np.unique(self.locate(points), return_counts=True)
        mids = (self._boundaries[index] + self._boundaries[index + 1]) / 2
        return WeightedPointSet(mids, counts)

    def point_set(self):
        """The nonzero molecular weights as a :class:`WeightedPointSet`."""
        if not self._weights:
            return WeightedPointSet()
        weights = self._weights
        return WeightedPointSet(list(weights.keys()), list(weights.values()))

    def subtract(self, Q):
        """Remove the weights of an aggregated point set."""
        for mid, w in zip(Q.points.tolist(), Q.weights.tolist()):
            left = self._weights[mid] - w
            if left < 0:
                raise ValueError(
                    f"The molecular weight at {mid} of edge {self._edge} turns "
                    "negative."
                )
            if left == 0:
                del self._weights[mid]
            else:
                self._weights[mid] = left


def residual_count(sol, lo, hi, aligned=False):
    """Number of uncovered points of a partial solution inside ``[lo, hi]``."""
    return sol.residual_count(lo, hi, aligned=aligned)


def _best_type1(ws, sol):
    best = None
    for cand, cov in zip(ws.type1, ws.type1_cov):
        weight = sum(sol.residual_count(lo, hi) for lo, hi in cov)
        choice = Choice(weight, cand.descriptor, cand, cov)
        if choice.beats(best):
            best = choice
    return best


def _best_sweep(ws, weights):
    best = None
    for k, sweep in enumerate(ws.sweeps):
        mask = sweep.candidate_mask
        if not mask.any():
            continue
        masked = np.where(mask, weights[k], -1)
        top = masked.max()
        if top < 0:
            continue
        positions = np.flatnonzero(masked == top).tolist()
        w = min(positions, key=sweep.descriptor)
        choice = Choice(int(top), sweep.descriptor(w), None, (k, w))
        if choice.beats(best):
            best = choice
    if best is not None:
        k, w = best.coverage
        sweep = ws.sweeps[k]
        best.candidate = sweep.candidate(w)
        best.coverage = proxy_cov(
            sweep.space, int(sweep.s_idx[w]), int(sweep.t_idx[w]), tol=ws.tol
        )
    return best


def cover_a(ws, points, max_rounds=None):
    """Greedily cover a finite point set with candidates of the workspace.

    Every round picks the candidate covering the most uncovered points; ties go
    to the lower type rank and then the lower descriptor. Type (I) weights are
    counted on their stored coverage. Type (II) and (III) weights are kept per
    sweep position and lowered after every round by a batch query of the newly
    covered points, grouped by molecular interval.

    Args:
        ws: A :class:`~subtraj.solver.base.Workspace` at radius ``4 delta``.
        points: The points to cover.
        max_rounds: Raise :class:`RoundLimitExceeded` beyond this many rounds.

    Returns:
        A tuple ``(centers, coverage)`` of the chosen candidates and the union of
        their proxy coverages.

    Raises:
        CoverageError: When points remain but no candidate covers any of them.
    """
    sol = SolutionIntervals(points, tol=ws.tol)
    molecular = {space.edge: MolecularIntervals(space, points) for space in ws.spaces}
    weights = [
        batch_point_query(sw, events, molecular[sw.edge].point_set())
        for sw, events in zip(ws.sweeps, ws.events)
    ]
    centers, coverage = [], IntervalUnion()
    while sol.uncovered_count:
        if max_rounds is not None and len(centers) >= max_rounds:
            raise RoundLimitExceeded(
                f"{sol.uncovered_count} points remain after {max_rounds} rounds."
            )
        best = None
        for choice in (_best_type1(ws, sol), _best_sweep(ws, weights)):
            if choice is not None and choice.beats(best):
                best = choice
        if best is None or best.weight <= 0:
            raise CoverageError(
                f"No candidate covers any of the {sol.uncovered_count} remaining "
                "points; the simplification does not support a cover at this radius."
            )

        newly = []
        for lo, hi in best.coverage:
            newly += sol.insert(lo, hi)
        coverage = coverage.union(best.coverage)
        centers.append(best.candidate)
        logger.debug(
            "round %d: %r covers %d points", len(centers), best.candidate, len(newly)
        )

        for edge, mol in molecular.items():
            Q = mol.aggregate(newly)
            mol.subtract(Q)
            for k, sw in enumerate(ws.sweeps):
                if sw.edge == edge:
                    weights[k] -= batch_point_query(sw, ws.events[k], Q)
    return centers, coverage


def solve_sc(P, delta, ell, simplifier="greedy", threads=1, tol=TOLERANCE):
    """Cover P with few centres of complexity at most ell at radius ``4 delta``.

    Args:
        P: The input :class:`~subtraj.curve.PolygonalCurve`.
        delta: The distance threshold.
        ell: The centre complexity, at least 2.
        simplifier: ``greedy`` or ``identity``.
        threads: Worker threads for sweep preparation.

    Returns:
        A :class:`~subtraj.solver.base.Solution`.

    Example:
        >>> from subtraj.curve import PolygonalCurve
        >>> P = PolygonalCurve([[0, 0], [4, 0]])
        >>> len(solve_sc(P, 0.5, 2))
        1
    """
    if ell < 2:
        raise ValueError(f"The value of `ell` must be at least 2, got {ell}.")
    clock = time.perf_counter()
    S = simplify(P, delta, simplifier)
    timings = {"simplify": time.perf_counter() - clock}
    ws = prepare_workspace(P, S, 4 * delta, ell, threads=threads, tol=tol)
    timings.update(ws.timings)

    clock = time.perf_counter()
    atomic = compute_atomic(ws.spaces, tol)
    centers, coverage = cover_a(ws, atomic.midpoints)
    timings["greedy"] = time.perf_counter() - clock
    logger.info(
        "covered %d atomic intervals with %d centers in %.3fs",
        len(atomic),
        len(centers),
        sum(timings.values()),
    )
    stats = {
        "rounds": len(centers),
        "atomic_intervals": len(atomic),
        "candidates": ws.candidate_count,
        "types": type_counts(centers),
        "timings": timings,
    }
    return Solution(centers, coverage, S, 4 * delta, stats)
