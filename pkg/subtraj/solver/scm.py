"""Greedy coverage maximization with k centres, measured by length.

The free spaces are the polygonal ones, so between consecutive extremal heights
every boundary chain of a cell is linear. :class:`CoeffEvents` stores the
chains clipped by the solution, ``c(x) = x - covered([x_k, x])`` inside cell k,
as sparse slope and offset changes, plus the uncovered length of every cell.
A window's residual measure splits, pair by pair, into a start term in cell i,
the uncovered length of the cells strictly between, and an end term in cell j.
Inserting an interval only rebuilds the events of the cells it overlaps.
"""
import logging
import time

import numpy as np

from subtraj.cell.exact import ExactCell
from subtraj.coverage.query import accumulate
from subtraj.coverage.state import proxy_cov
from subtraj.coverage.structures import RangeSumTree
from subtraj.intervals import IntervalUnion
from subtraj.intervals import MeasureSolution
from subtraj.simplify import simplify
from subtraj.solver.base import Choice
from subtraj.solver.base import prepare_workspace
from subtraj.solver.base import Solution
from subtraj.solver.base import type_counts
from subtraj.utils import INF
from subtraj.utils import TOLERANCE

__author__ = "The subtraj developers"

__all__ = [
    "CoeffEvents",
    "build_coeff_events",
    "update_events_on_insert",
    "residual_measure",
    "sweep_residual_measures",
    "eval_all_residual_measures",
    "solve_scm",
]

logger = logging.getLogger(__name__)


def residual_measure(sol, lo, hi):
    """Length of ``[lo, hi]`` outside a :class:`~subtraj.intervals.MeasureSolution`.

    Example:
        >>> sol = MeasureSolution([(0.25, 0.5)])
        >>> residual_measure(sol, 0.0, 1.0)
        0.75
    """
    return sol.residual_measure(lo, hi)


class CoeffEvents:
    """Sparse linear pieces of the clipped boundary chains of a polygonal row.

    For every cell the left chain (start stream, ``-``) and the right chain
    (end stream, ``+``) are stored as slope changes ``m`` and offset changes
    ``b`` at the height indexes where a new linear piece begins. The chain
    value at height index h is ``B(h) + M(h) * y_h`` with ``M`` and ``B`` the
    running sums of the changes. The stored chains are clipped by the covered
    intervals: a chain value x of cell k becomes ``x - covered([x_k, x])``, so
    ``c - x_k`` is the uncovered length left of x in the cell. Next to the
    chains, the uncovered length of every cell is kept in a
    :class:`~subtraj.coverage.structures.RangeSumTree`.

    Attributes:
        m_minus, b_minus: Per cell, ``{height index: change}`` of the left chain.
        m_plus, b_plus: The same for the right chain.
    """

    __slots__ = (
        "_space",
        "m_minus",
        "m_plus",
        "b_minus",
        "b_plus",
        "_first",
        "_last",
        "_cell_left",
        "_tree",
        "_covered",
        "_chains",
    )

    def __init__(self, space):
        self._space = space
        n = len(space)
        self.m_minus = [dict() for _ in range(n)]
        self.b_minus = [dict() for _ in range(n)]
        self.m_plus = [dict() for _ in range(n)]
        self.b_plus = [dict() for _ in range(n)]
        self._first = np.full(n, -1, dtype=int)
        self._last = np.full(n, -1, dtype=int)
        self._cell_left = np.full(n, 1.0 / n) if n else np.empty(0)
        self._tree = RangeSumTree(self._cell_left)
        self._covered = MeasureSolution()
        self._chains = {}

    def __len__(self):
        """The number of nonzero events."""
        return sum(
            sum(1 for v in stream.values() if v != 0)
            for streams in (self.m_minus, self.m_plus, self.b_minus, self.b_plus)
            for stream in streams
        )

    @property
    def space(self):
        return self._space

    @property
    def cell_residuals(self):
        """Uncovered length of every cell."""
        return self._cell_left

    @property
    def covered(self):
        """The intervals the chains are clipped by."""
        return self._covered.intervals()

    def residual_between(self, i, j):
        """Uncovered length of the cells ``i..j``; 0 when ``i > j``."""
        return self._tree.range_sum(i, j)

    def replay(self, cell, chain):
        """The clipped chain values at every height index, ``inf`` outside its range.

        Args:
            cell: The cell index.
            chain: ``l`` for the left chain or ``r`` for the right chain.
        """
        heights = self._space.heights
        out = np.full(heights.size, INF)
        first, last = self._first[cell], self._last[cell]
        if first < 0:
            return out
        dm, db = (
            (self.m_minus[cell], self.b_minus[cell])
            if chain == "l"
            else (self.m_plus[cell], self.b_plus[cell])
        )
        slope = offset = 0.0
        for h in range(first, last + 1):
            if h < last or last == first:
                slope += dm.get(h, 0.0)
                offset += db.get(h, 0.0)
            out[h] = offset + slope * heights[h]
        return out

    def chain(self, cell, chain):
        """Cached :meth:`replay`; dropped when the cell is rebuilt."""
        key = (cell, chain)
        if key not in self._chains:
            self._chains[key] = self.replay(cell, chain)
        return self._chains[key]

    def value(self, name, k, h):
        """A start or end term of a window, as summed by the sweep accumulator.

        Start terms are the uncovered length right of the chain value in cell
        k, end terms the uncovered length left of it. ``local_below`` is the
        start of a local pair, subtracted from its end.
        """
        x_k = self._space.x_grid[k]
        if name == "start_good":
            return self._cell_left[k] + x_k - self.chain(k, "l")[h]
        if name == "start_bad":
            return self._cell_left[k] + x_k - self.chain(k, "r")[h]
        if name == "end_good":
            return self.chain(k, "r")[h] - x_k
        # local_below and end_bad both read the left chain
        return self.chain(k, "l")[h] - x_k

    def between(self, i, j):
        return self.residual_between(i, j)

    def _clip(self, k, values):
        x = self._space.x_grid
        pieces = IntervalUnion([(x[k], x[k + 1])]).intersection(self.covered)
        if pieces.is_empty:
            return values
        out = values.copy()
        for lo, hi in pieces:
            out -= np.clip(values - lo, 0.0, hi - lo)
        return out

    def _rebuild(self, k):
        for stream in (self.m_minus, self.b_minus, self.m_plus, self.b_plus):
            stream[k].clear()
        self._chains.pop((k, "l"), None)
        self._chains.pop((k, "r"), None)
        if self._first[k] < 0:
            return
        sl = slice(self._first[k], self._last[k] + 1)
        for table, dm, db in (
            (self._space.l_table, self.m_minus[k], self.b_minus[k]),
            (self._space.r_table, self.m_plus[k], self.b_plus[k]),
        ):
            values = table[k].copy()
            values[sl] = self._clip(k, values[sl])
            self._add_chain(k, values, dm, db)

    def _add_chain(self, cell, values, dm, db):
        heights = self._space.heights
        first, last = self._first[cell], self._last[cell]
        slope = offset = 0.0
        if last == first:
            db[first] = float(values[first])
            return
        for h in range(first, last):
            dy = heights[h + 1] - heights[h]
            m = (values[h + 1] - values[h]) / dy
            b = values[h] - m * heights[h]
            if m != slope or b != offset:
                dm[h], db[h] = m - slope, b - offset
                slope, offset = m, b

    def _apply(self, k, change):
        self._cell_left[k] += change
        self._tree.add(k, change)


def build_coeff_events(space):
    """Build the :class:`CoeffEvents` of a polygonal row with nothing covered.

    Raises:
        ValueError: For rows of curved cells, whose chains are not piecewise
            linear between extremal heights.
    """
    if any(isinstance(cell, ExactCell) for cell in space.cells):
        raise ValueError(
            "Coefficient events require the polygonal free space; the row holds "
            "exact cells."
        )
    coeff = CoeffEvents(space)
    for k in range(len(space)):
        finite = np.flatnonzero(np.isfinite(space.l_table[k]))
        if finite.size == 0:
            continue
        coeff._first[k], coeff._last[k] = finite[0], finite[-1]
        coeff._rebuild(k)
    return coeff


def update_events_on_insert(events, lo, hi, remove=False, tol=TOLERANCE):
    """Account for an interval entering (or leaving) the solution.

    Only the cells overlapping ``[lo, hi]`` change: their uncovered length is
    updated and their clipped chains are rebuilt. Removing an interval right
    after inserting it restores the events exactly.

    Args:
        events: The :class:`CoeffEvents` to update.
        lo, hi: The interval, disjoint from the current solution on insert and
            covered by it on removal.
        remove: Undo a previous insert.

    Returns:
        The indexes of the cells whose uncovered length changed.

    Raises:
        ValueError: When an insert overlaps covered length or a removal frees
            more than a cell holds. The events are left untouched.
    """
    if lo > hi:
        raise ValueError(f"The interval ({lo}, {hi}) is inverted.")
    n = len(events.space)
    x = events.space.x_grid
    first = min(max(int(np.floor(lo * n)), 0), n - 1)
    last = min(max(int(np.ceil(hi * n)) - 1, first), n - 1)
    changes = []
    for k in range(first, last + 1):
        overlap = min(hi, x[k + 1]) - max(lo, x[k])
        if overlap <= 0:
            continue
        change = overlap if remove else -overlap
        left = events.cell_residuals[k] + change
        if left < -tol or left > 1.0 / n + tol:
            raise ValueError(
                f"The interval ({lo}, {hi}) overlaps the solution inconsistently in "
                f"cell {k}."
            )
        changes.append((k, change))
    if remove:
        events._covered.remove(lo, hi)
    else:
        events._covered.insert(lo, hi)
    for k, change in changes:
        events._apply(k, change)
        events._rebuild(k)
    return [k for k, _ in changes]


def sweep_residual_measures(sweep, events, coeff):
    """Residual measure of the proxy coverage at every position of a sweep.

    A running total over the live events is moved along the sweep; a height
    step only revisits the cells whose chains change at that height.

    Args:
        sweep: A :class:`~subtraj.coverage.maintain.Sweep` over a polygonal row.
        events: The sweep's interval events.
        coeff: The :class:`CoeffEvents` of the swept row, current with the
            solution.
    """
    out = np.zeros(len(sweep))
    if len(sweep) == 0:
        return out
    return accumulate(sweep, events, coeff, out)

def eval_all_residual_measures(ws, coeffs, sol):
    """The candidate of largest residual measure in the current round.

    Args:
        ws: A polygonal :class:`~subtraj.solver.base.Workspace`.
        coeffs: :class:`CoeffEvents` keyed by ``(edge, reversed)`` of the swept
            rows.
        sol: The current :class:`~subtraj.intervals.MeasureSolution`.

    Returns:
        A :class:`~subtraj.solver.base.Choice`, or None without candidates.
    """
    best = None
    for cand, cov in zip(ws.type1, ws.type1_cov):
        gain = sum(sol.residual_measure(lo, hi) for lo, hi in cov)
        choice = Choice(gain, cand.descriptor, cand, cov)
        if choice.beats(best):
            best = choice

    for sweep, events in zip(ws.sweeps, ws.events):
        mask = sweep.candidate_mask
        if not mask.any():
            continue
        coeff = coeffs[(sweep.edge, sweep.space.reversed)]
        residuals = sweep_residual_measures(sweep, events, coeff)
        values = np.where(mask, residuals, -INF)
        top = values.max()
        w = min(np.flatnonzero(values == top).tolist(), key=sweep.descriptor)
        choice = Choice(float(top), sweep.descriptor(w), None, (sweep, w))
        if choice.beats(best):
            best = choice

    if best is not None and best.candidate is None:
        sweep, w = best.coverage
        best.candidate = sweep.candidate(w)
        best.coverage = proxy_cov(
            sweep.space, int(sweep.s_idx[w]), int(sweep.t_idx[w]), tol=ws.tol
        )
    return best


def solve_scm(
    P, delta, ell, k, epsilon=0.1, simplifier="greedy", threads=1, tol=TOLERANCE
):
    """Choose k centres maximizing the covered length at radius ``(4 + ε) delta``.

    The free spaces are polygonal approximations at radius ``4 delta`` built on
    a ball polytope of parameter ``ε / 16``. Every round adds the candidate of
    largest residual measure; the loop stops early when no candidate adds
    length.

    Args:
        P: The input curve.
        delta: The distance threshold.
        ell: The centre complexity.
        k: The number of centres.
        epsilon: The radius relaxation, in ``(0, 0.8]``.

    Returns:
        A :class:`~subtraj.solver.base.Solution` whose stats hold the measure
        after every round.
    """
    if k < 1:
        raise ValueError(f"The value of `k` must be greater than zero, got {k}.")
    if not 0 < epsilon <= 0.8:
        raise ValueError(f"The value of `epsilon` must be in (0, 0.8], got {epsilon}.")
    clock = time.perf_counter()
    S = simplify(P, delta, simplifier)
    timings = {"simplify": time.perf_counter() - clock}
    ws = prepare_workspace(
        P,
        S,
        4 * delta,
        ell,
        backend="approx",
        epsilon=epsilon / 16,
        threads=threads,
        tol=tol,
    )
    timings.update(ws.timings)

    clock = time.perf_counter()
    coeffs = {}
    for sweep in ws.sweeps:
        key = (sweep.edge, sweep.space.reversed)
        if key not in coeffs:
            coeffs[key] = build_coeff_events(sweep.space)
    sol = MeasureSolution()
    centers, measures = [], []
    for _ in range(k):
        best = eval_all_residual_measures(ws, coeffs, sol)
        if best is None or best.weight <= tol:
            logger.info("no candidate adds length after %d rounds", len(centers))
            break
        pieces = IntervalUnion(best.coverage).difference(sol.intervals())
        for lo, hi in pieces:
            for coeff in coeffs.values():
                update_events_on_insert(coeff, lo, hi, tol=tol)
            sol.insert(lo, hi)
        centers.append(best.candidate)
        measures.append(sol.measure)
        logger.debug(
            "round %d: %r adds %.6g", len(centers), best.candidate, best.weight
        )
    timings["greedy"] = time.perf_counter() - clock
    logger.info(
        "selected %d centers covering %.6g in %.3fs",
        len(centers),
        sol.measure,
        sum(timings.values()),
    )
    stats = {
        "rounds": len(centers),
        "measures": measures,
        "candidates": ws.candidate_count,
        "coeff_events": sum(len(_) for _ in coeffs.values()),
        "types": type_counts(centers),
        "timings": timings,
        "epsilon": epsilon,
    }
    return Solution(centers, sol.intervals(), S, (4 + epsilon) * delta, stats)
