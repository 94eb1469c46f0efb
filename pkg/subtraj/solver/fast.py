"""Subcubic covering: coarse point sets, selection over implicit sorted lists
and the doubling driver.

The atomic boundaries of a row are never merged into one sorted array. Per cell
the left boundary ``l`` is convex and the right boundary ``r`` is concave in
the height, so each splits into two monotone pieces; every piece is an
:class:`ImplicitSortedList` answering positional and rank queries. Selecting
split values across all pieces yields a coarse partition of [0, 1], whose
midpoints are covered first. The few atomic intervals the coarse cover misses
are extracted gap by gap and covered in a second pass.
"""
import logging
import math
import time

import numpy as np

from subtraj.intervals import IntervalUnion
from subtraj.simplify import simplify
from subtraj.solver.base import prepare_workspace
from subtraj.solver.base import RoundLimitExceeded
from subtraj.solver.base import Solution
from subtraj.solver.base import type_counts
from subtraj.solver.sc import cluster
from subtraj.solver.sc import cover_a
from subtraj.utils import TOLERANCE

__author__ = "The subtraj developers"

__all__ = [
    "ImplicitSortedList",
    "CoarsePartition",
    "build_implicit_lists",
    "rank_select_coarsen",
    "alpha_coarse",
    "uncovered_extract",
    "cover_a_fast",
]

logger = logging.getLogger(__name__)

C_BUCKET = 20


class ImplicitSortedList:
    """A non-decreasing value list addressed by position.

    Items are ordered by the key ``(value, list id, position)``, which makes
    items of different lists distinct even when their values coincide.

    Args:
        values: Non-decreasing values.
        list_id: A tuple identifying the list, for instance ``(edge, cell,
            chain, piece)``.
        edge: The 1-based edge of S the list belongs to, or 0.

    Example:
        >>> items = ImplicitSortedList([0.1, 0.2, 0.2, 0.4], (0,))
        >>> items.item_at(1)
        (0.2, (0,), 1)
        >>> items.rank_below((0.2, (0,), 2)), items.rank_below((0.2, (1,), 0))
        (2, 3)
    """

    __slots__ = ("_values", "_id", "_edge")

    def __init__(self, values, list_id, edge=0):
        values = np.asarray(values, dtype=float)
        if np.any(np.diff(values) < 0):
            raise ValueError("The values of an implicit sorted list must not decrease.")
        self._values = values
        self._id = tuple(list_id)
        self._edge = int(edge)

    def __len__(self):
        return self._values.size

    def __repr__(self):
        return f"ImplicitSortedList({self._id}, length={len(self)})"

    @property
    def list_id(self):
        return self._id

    @property
    def edge(self):
        return self._edge

    @property
    def values(self):
        return self._values

    def item_at(self, j):
        """The key of the item at position j."""
        return (float(self._values[j]), self._id, int(j))

    def rank_below(self, key):
        """Number of items whose key is smaller than ``key``."""
        value, list_id, position = key
        lo = int(np.searchsorted(self._values, value, side="left"))
        hi = int(np.searchsorted(self._values, value, side="right"))
        if self._id < list_id:
            return hi
        if self._id > list_id:
            return lo
        return lo + min(max(position - lo, 0), hi - lo)

    def range_between(self, lo, hi):
        """Positions ``[a, b)`` of the items with ``lo <= value <= hi``."""
        a = int(np.searchsorted(self._values, lo, side="left"))
        b = int(np.searchsorted(self._values, hi, side="right"))
        return a, b


def _monotone_pieces(column, chain):
    """Split a boundary column into its two non-decreasing pieces.

    The left chain falls then rises; the right chain rises then falls.
    """
    finite = np.flatnonzero(np.isfinite(column))
    if finite.size == 0:
        return []
    run = column[finite[0] : finite[-1] + 1]
    if chain == "l":
        turn = int(np.argmin(run))
        pieces = (run[: turn + 1][::-1], run[turn:])
    else:
        turn = int(np.argmax(run))
        pieces = (run[: turn + 1], run[turn:][::-1])
    return [np.maximum.accumulate(piece) for piece in pieces if piece.size]


def build_implicit_lists(spaces):
    """One :class:`ImplicitSortedList` per monotone boundary piece of every row.

    The list ``[0, 1]`` of the mandatory boundaries is appended last.
    """
    lists = []
    for space in spaces:
        for chain, table in (("l", space.l_table), ("r", space.r_table)):
            for k in range(len(space)):
                for p, piece in enumerate(_monotone_pieces(table[k], chain)):
                    lists.append(
                        ImplicitSortedList(
                            np.clip(piece, 0.0, 1.0),
                            (space.edge, k, chain, p),
                            space.edge,
                        )
                    )
    lists.append(ImplicitSortedList([0.0, 1.0], (0, -1, "bound", 0)))
    return lists


class CoarsePartition:
    """Boundary keys ``v_1 < v_2 < ...`` of a coarse partition with occupancies.

    Bucket i holds the items with key in ``[v_i, v_{i+1})``; the last bucket is
    closed at the largest item.
    """

    __slots__ = ("_keys", "_counts")

    def __init__(self, keys, counts):
        order = sorted(range(len(keys)), key=lambda i: keys[i])
        self._keys = [keys[i] for i in order]
        self._counts = np.asarray([counts[i] for i in order], dtype=int)

    def __len__(self):
        return len(self._keys)

    @property
    def keys(self):
        return self._keys

    @property
    def values(self):
        """The boundary values."""
        return np.asarray([key[0] for key in self._keys], dtype=float)

    @property
    def counts(self):
        """Items per bucket."""
        return self._counts

    def midpoints(self):
        """One point inside every coarse interval of positive length."""
        values = np.unique(np.concatenate([[0.0, 1.0], self.values]))
        return (values[:-1] + values[1:]) / 2


def _size(ranges):
    return sum(hi - lo for _, lo, hi in ranges)


def _pivot(lists, ranges):
    """Weighted median of the 5-quantiles of every range."""
    cand = []
    for lid, lo, hi in ranges:
        length = hi - lo
        positions = sorted({lo + (length * q) // 5 for q in range(1, 5)})
        for pos in positions:
            cand.append((lists[lid].item_at(min(pos, hi - 1)), length / len(positions)))
    cand.sort(key=lambda item: item[0])
    weights = np.asarray([w for _, w in cand])
    before = np.concatenate([[0.0], np.cumsum(weights)[:-1]])
    after = weights.sum() - before - weights
    first = int(np.flatnonzero(before - after >= 0)[0])
    return cand[first][0]


def rank_select_coarsen(lists, K):
    """Partition the items of several sorted lists into O(K) buckets.

    Subproblems are explicit ``(list, lo, hi)`` ranges. A subproblem of at most
    ``total / K`` items is one bucket. A subproblem with at most ``C_BUCKET``
    items per range is sorted and cut into chunks of ``total / K`` items.
    Otherwise it is split at the weighted median of the quantiles of its
    ranges, found by rank queries.

    Args:
        lists: :class:`ImplicitSortedList` objects.
        K: The target number of buckets, at least 1.

    Example:
        >>> lists = [ImplicitSortedList(np.arange(100) / 100, (0,))]
        >>> part = rank_select_coarsen(lists, 10)
        >>> int(part.counts.sum()), bool(part.counts.max() <= 10)
        (100, True)
    """
    if K < 1:
        raise ValueError(f"The number of buckets must be at least 1, got {K}.")
    ranges = [(i, 0, len(items)) for i, items in enumerate(lists) if len(items)]
    total = _size(ranges)
    if total == 0:
        return CoarsePartition([], [])
    target = max(total / K, 1.0)
    chunk = max(int(math.ceil(target)), 1)
    keys, counts = [], []

    def sort_and_chunk(ranges):
        items = sorted(
            lists[lid].item_at(j) for lid, lo, hi in ranges for j in range(lo, hi)
        )
        for start in range(0, len(items), chunk):
            keys.append(items[start])
            counts.append(len(items[start : start + chunk]))

    stack = [ranges]
    while stack:
        ranges = [r for r in stack.pop() if r[2] > r[1]]
        size = _size(ranges)
        if size == 0:
            continue
        if size <= target:
            keys.append(min(lists[lid].item_at(lo) for lid, lo, _ in ranges))
            counts.append(size)
            continue
        if size <= C_BUCKET * len(ranges):
            sort_and_chunk(ranges)
            continue
        pivot = _pivot(lists, ranges)
        left, right = [], []
        for lid, lo, hi in ranges:
            cut = min(max(lists[lid].rank_below(pivot), lo), hi)
            left.append((lid, lo, cut))
            right.append((lid, cut, hi))
        if _size(left) == 0 or _size(right) == 0:
            sort_and_chunk(ranges)
            continue
        stack += [right, left]
    return CoarsePartition(keys, counts)


def alpha_coarse(ws, alpha, lists=None):
    """A partition of the atomic boundaries into about ``n**alpha`` buckets.

    Args:
        ws: A :class:`~subtraj.solver.base.Workspace`.
        alpha: A float in ``[0, 3]``.
        lists: Prebuilt implicit lists of the workspace rows.
    """
    if not 0 <= alpha <= 3:
        raise ValueError(f"The value of `alpha` must be in [0, 3], got {alpha}.")
    lists = build_implicit_lists(ws.spaces) if lists is None else lists
    total = sum(len(_) for _ in lists)
    K = min(int(math.ceil(len(ws.P) ** alpha)), max(total, 1))
    return rank_select_coarsen(lists, K)


def _edge_boundaries(lists, edge, a, b):
    """Boundary values of an edge inside ``[a, b]`` with their neighbours outside."""
    inside = [np.asarray([x for x in (0.0, 1.0) if a <= x <= b])]
    below, above = 0.0, 1.0
    for items in lists:
        if items.edge != edge:
            continue
        lo, hi = items.range_between(a, b)
        inside.append(items.values[lo:hi])
        if lo > 0:
            below = max(below, float(items.values[lo - 1]))
        if hi < len(items):
            above = min(above, float(items.values[hi]))
    return np.unique(np.concatenate(inside + [[below, above]]))


def uncovered_extract(coverage, ws, lists=None, tol=TOLERANCE):
    """Atomic midpoints and molecular intervals outside a coverage.

    Only the gaps of the coverage are visited; inside each gap every implicit
    list is cut by two binary searches.

    Args:
        coverage: The covered part of [0, 1] as an
            :class:`~subtraj.intervals.IntervalUnion`; its endpoints are atomic
            boundaries.
        ws: The :class:`~subtraj.solver.base.Workspace`.
        lists: Prebuilt implicit lists of the workspace rows.

    Returns:
        A tuple ``(midpoints, molecular)``: the midpoints of the uncovered atomic
        intervals, and per edge the list of molecular intervals that overlap an
        uncovered gap.
    """
    lists = build_implicit_lists(ws.spaces) if lists is None else lists
    gaps = IntervalUnion([(0.0, 1.0)]).difference(coverage)
    midpoints = []
    molecular = {space.edge: [] for space in ws.spaces}
    for a, b in gaps:
        values = [np.asarray([a, b])]
        for items in lists:
            lo, hi = items.range_between(a, b)
            values.append(items.values[lo:hi])
        first, last = cluster(np.concatenate(values), tol)
        midpoints.append((last[:-1] + first[1:]) / 2)
        for edge in molecular:
            bounds = _edge_boundaries(lists, edge, a, b)
            molecular[edge] += [
                (float(x), float(y))
                for x, y in zip(bounds[:-1], bounds[1:])
                if x < b and y > a
            ]
    midpoints = np.concatenate(midpoints) if midpoints else np.empty(0)
    molecular = {e: sorted(set(v)) for e, v in molecular.items()}
    return midpoints, molecular


def _alpha(K, n):
    log_n = math.log(n)
    value = 1.5 + math.log(K) / (2 * log_n) + math.log(log_n) / log_n
    return min(max(value, 0.0), 3.0)


def cover_a_fast(P, delta, ell, simplifier="greedy", threads=1, tol=TOLERANCE):
    """Cover P at radius ``4 delta`` with the doubling driver.

    For ``K = 1, 2, 4, ...`` the midpoints of an ``alpha``-coarse partition are
    covered with at most ``lambda K`` rounds, then the uncovered atomic
    intervals with at most ``lambda K`` more rounds. A round cap overrun doubles
    K.

    Args:
        P: The input curve, with at least 3 vertices for a meaningful ``alpha``.
        delta: The distance threshold.
        ell: The centre complexity.

    Returns:
        A :class:`~subtraj.solver.base.Solution`; its stats hold the final K.
    """
    if ell < 2:
        raise ValueError(f"The value of `ell` must be at least 2, got {ell}.")
    clock = time.perf_counter()
    S = simplify(P, delta, simplifier)
    timings = {"simplify": time.perf_counter() - clock}
    ws = prepare_workspace(P, S, 4 * delta, ell, threads=threads, tol=tol)
    timings.update(ws.timings)

    clock = time.perf_counter()
    lists = build_implicit_lists(ws.spaces)
    n = max(len(P), 3)
    lam = 48 * math.log(n) + 64
    K, attempts = 1, 0
    while True:
        attempts += 1
        alpha = _alpha(K, n)
        cap = int(math.ceil(lam * K))
        coarse = alpha_coarse(ws, alpha, lists)
        try:
            first, covered = cover_a(ws, coarse.midpoints(), max_rounds=cap)
            missing, _ = uncovered_extract(covered, ws, lists, tol)
            second, extra = cover_a(ws, missing, max_rounds=cap)
        except RoundLimitExceeded as error:
            logger.info("K = %d: %s; doubling", K, error)
            K *= 2
            continue
        break
    centers = list(first) + [c for c in second if c not in first]
    coverage = covered.union(extra)
    timings["greedy"] = time.perf_counter() - clock
    logger.info(
        "fast cover: K = %d, alpha = %.3f, %d + %d centers",
        K,
        alpha,
        len(first),
        len(second),
    )
    stats = {
        "rounds": len(first) + len(second),
        "K": K,
        "alpha": alpha,
        "attempts": attempts,
        "coarse_intervals": len(coarse),
        "uncovered_atomic": int(len(missing)),
        "candidates": ws.candidate_count,
        "types": type_counts(centers),
        "timings": timings,
    }
    return Solution(centers, coverage, S, 4 * delta, stats)
