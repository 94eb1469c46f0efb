"""Brute force references for the coverage engine and the greedy solvers.

Nothing here is used while solving. Every function trades speed for a plain
derivation: grids instead of boundary formulas, enumeration instead of greedy
choice.
"""
import itertools
import logging
import math
from functools import reduce

import numpy as np
from scipy.spatial.distance import cdist

from subtraj.coverage.state import proxy_cov
from subtraj.curve import PolygonalCurve
from subtraj.intervals import IntervalUnion

__author__ = "The subtraj developers"

__all__ = [
    "GridReachability",
    "brute_cov",
    "candidate_coverages",
    "brute_setcover",
    "brute_best_k_measure",
    "resample",
    "discrete_frechet",
]

logger = logging.getLogger(__name__)

MAX_GROUND = 25
MAX_FOOTPRINTS = 20
MAX_SUBSETS = 10**6


def _stack(rows):
    if hasattr(rows, "cells"):
        return [list(rows.cells)]
    rows = list(rows)
    if rows and not isinstance(getattr(rows[0], "cells", rows[0]), (list, tuple)):
        return [rows]
    return [list(getattr(row, "cells", row)) for row in rows]


class GridReachability:
    """A refined grid over a stack of free space rows.

    Every cell is sampled at ``rho + 1`` positions per axis; neighbouring cells
    share their border samples. A sample is free when its cell contains it.

    Args:
        rows: A row, or a list of consecutive rows, of cells.
        rho: Subdivisions per cell and axis.
    """

    __slots__ = ("_rows", "_rho", "_free")

    def __init__(self, rows, rho=256):
        self._rows = _stack(rows)
        self._rho = int(rho)
        n_rows, n_cols = len(self._rows), len(self._rows[0])
        local = np.arange(rho + 1) / rho
        free = np.zeros((n_rows * rho + 1, n_cols * rho + 1), dtype=bool)
        uu, yy = np.meshgrid(local, local)
        for r, cells in enumerate(self._rows):
            for k, cell in enumerate(cells):
                block = np.asarray(cell.contains(uu, yy), dtype=bool)
                free[r * rho : (r + 1) * rho + 1, k * rho : (k + 1) * rho + 1] |= block
        self._free = free

    @property
    def rho(self):
        return self._rho

    @property
    def free(self):
        """The free mask, indexed ``[height sample, position sample]``."""
        return self._free

    @property
    def columns(self):
        return len(self._rows[0])

    def min_start(self, s_row, t_row):
        """The left-most start sample reaching every sample of the target row.

        Paths move right or up through free samples, starting anywhere on
        sample row ``s_row``.

        Returns:
            An array over the position samples; ``inf`` where unreachable.
        """
        free = self._free
        width = free.shape[1]
        best = np.where(free[s_row], np.arange(width, dtype=float), np.inf)
        best = self._sweep_right(best, free[s_row])
        for y in range(s_row + 1, t_row + 1):
            best = np.where(free[y], best, np.inf)
            best = self._sweep_right(best, free[y])
        return best

    @staticmethod
    def _sweep_right(values, free):
        """Running minimum inside every run of free samples."""
        out = np.where(free, values, np.inf)
        edges = np.diff(np.concatenate([[0], free.astype(int), [0]]))
        for a, b in zip(np.flatnonzero(edges == 1), np.flatnonzero(edges == -1)):
            out[a:b] = np.minimum.accumulate(out[a:b])
        return out


def brute_cov(rows, s, t, rho=256):
    """Coverage of a stack of rows from height s to height t on a grid.

    Args:
        rows: A row, or a list of consecutive rows.
        s: The anchor height in the first row.
        t: The target height in the last row.
        rho: Grid subdivisions per cell.

    Returns:
        An :class:`~subtraj.intervals.IntervalUnion` in global positions.

    Example:
        >>> from subtraj.curve import PolygonalCurve
        >>> from subtraj.frechet import free_space_rows
        >>> P = PolygonalCurve([[0, 0], [1, 0], [2, 0]])
        >>> rows = free_space_rows(P, PolygonalCurve([[0, 0], [2, 0]]), 5.0)
        >>> brute_cov(rows, 0.0, 1.0, rho=8).to_list()
        [(0.0, 1.0)]
    """
    grid = GridReachability(rows, rho)
    n_rows = len(_stack(rows))
    s_row = int(round(s * rho))
    t_row = (n_rows - 1) * rho + int(round(t * rho))
    best = grid.min_start(s_row, t_row)
    scale = grid.columns * rho
    found = [
        (best[c] / scale, c / scale) for c in np.flatnonzero(np.isfinite(best))
    ]
    return IntervalUnion(found, tol=1.0 / scale)


def candidate_coverages(ws):
    """Every candidate of a workspace with its explicitly computed coverage.

    Type (I) candidates keep their stored coverage; Type (II) and (III)
    candidates get their proxy coverage computed from scratch.

    Returns:
        A list of ``(candidate, coverage)`` pairs sorted by descriptor.
    """
    found = dict(
        (cand.descriptor, (cand, cov)) for cand, cov in zip(ws.type1, ws.type1_cov)
    )
    for sweep in ws.sweeps:
        for w in np.flatnonzero(sweep.candidate_mask).tolist():
            key = sweep.descriptor(w)
            if key in found:
                continue
            cov = proxy_cov(sweep.space, int(sweep.s_idx[w]), int(sweep.t_idx[w]))
            found[key] = (sweep.candidate(w), cov)
    return [found[key] for key in sorted(found)]


def _footprints(coverages, ground):
    ground = np.asarray(ground, dtype=float)
    return [
        frozenset(np.flatnonzero(cov.contains(ground)).tolist())
        if isinstance(cov, IntervalUnion)
        else frozenset(cov)
        for cov in coverages
    ]


def brute_setcover(coverages, ground):
    """Minimum number of coverages whose union contains the ground set.

    Args:
        coverages: :class:`~subtraj.intervals.IntervalUnion` objects, or sets of
            ground indexes.
        ground: The points to cover, or their number when coverages are index
            sets.

    Raises:
        ValueError: For instances beyond exhaustive search, or when the ground
            set cannot be covered.

    Example:
        >>> brute_setcover([{0, 1}, {1, 2}, {2}], 3)
        2
    """
    ground = np.arange(ground) if isinstance(ground, int) else ground
    feet = _footprints(coverages, ground)
    # points with equal membership are interchangeable
    signature = {}
    for point in range(len(ground)):
        key = frozenset(i for i, f in enumerate(feet) if point in f)
        signature.setdefault(key, point)
    points = set(signature.values())
    feet = {f & points for f in feet if f & points}
    feet = [f for f in feet if not any(f < g for g in feet)]
    if len(points) > MAX_GROUND or len(feet) > MAX_FOOTPRINTS:
        raise ValueError(
            f"The instance has {len(points)} ground classes and {len(feet)} "
            "footprints; too large for exhaustive search."
        )
    if not points:
        return 0
    if set().union(*feet) != points:
        raise ValueError("The coverages do not cover the ground set.")
    for size in range(1, len(feet) + 1):
        for combo in itertools.combinations(feet, size):
            if frozenset().union(*combo) == points:
                return size
    raise AssertionError("unreachable")


def brute_best_k_measure(coverages, k):
    """Largest union length of k coverages.

    Returns:
        A tuple ``(measure, indexes)`` of the best subset.

    Raises:
        ValueError: When there are more than a million subsets.

    Example:
        >>> covs = [IntervalUnion([(0, 0.5)]), IntervalUnion([(0.25, 1.0)])]
        >>> brute_best_k_measure(covs, 1)
        (0.75, (1,))
    """
    k = min(k, len(coverages))
    if math.comb(len(coverages), k) > MAX_SUBSETS:
        raise ValueError(
            f"There are {math.comb(len(coverages), k)} subsets of size {k}; the "
            f"limit is {MAX_SUBSETS}."
        )
    best, arg = -1.0, ()
    for combo in itertools.combinations(range(len(coverages)), k):
        chosen = (coverages[i] for i in combo)
        union = reduce(IntervalUnion.union, chosen, IntervalUnion())
        if union.measure > best:
            best, arg = union.measure, combo
    return best, arg


def resample(curve, count):
    """Sample a curve at ``count`` equally spaced global parameters."""
    return np.stack([curve.eval(x) for x in np.linspace(0.0, 1.0, count)])


def discrete_frechet(P, Q):
    """Discrete Fréchet distance of two point sequences or curves.

    Example:
        >>> discrete_frechet([[0, 0], [1, 0]], [[0, 1], [1, 1]])
        1.0
    """
    P = P.as_array() if isinstance(P, PolygonalCurve) else np.asarray(P, dtype=float)
    Q = Q.as_array() if isinstance(Q, PolygonalCurve) else np.asarray(Q, dtype=float)
    dist = cdist(P, Q)
    n, m = dist.shape
    table = np.full((n, m), np.inf)
    table[0, 0] = dist[0, 0]
    for i in range(1, n):
        table[i, 0] = max(table[i - 1, 0], dist[i, 0])
    for j in range(1, m):
        table[0, j] = max(table[0, j - 1], dist[0, j])
    for i in range(1, n):
        for j in range(1, m):
            prev = min(table[i - 1, j], table[i - 1, j - 1], table[i, j - 1])
            table[i, j] = max(prev, dist[i, j])
    return float(table[-1, -1])
