"""Monotone reachability in free spaces and the Fréchet decision procedure.

A free space row is a list of cells; a stack of rows is a list of such lists,
one per edge of the vertical curve. Reachable sets are propagated cell by cell,
left to right and bottom to top, carrying for each cell the lowest entry
height on its left side and the left-most entry position on its bottom side.
"""
import logging

from subtraj.cell.base import is_empty
from subtraj.cell.exact import ExactCell
from subtraj.intervals import IntervalUnion

__author__ = "The subtraj developers"

__all__ = ["decide_frechet", "reach_cover", "free_space_rows"]

logger = logging.getLogger(__name__)


def _cells(row):
    return row.cells if hasattr(row, "cells") else row


def _as_rows(rows):
    if hasattr(rows, "cells"):
        return [rows.cells]
    rows = list(rows)
    if rows and not isinstance(_cells(rows[0]), (list, tuple)):
        return [rows]
    return [_cells(_) for _ in rows]


def free_space_rows(P, Q, delta):
    """Exact free space of P (horizontal) against Q (vertical) as a stack of rows."""
    return [
        [ExactCell(P.edge(i), Q.edge(j), delta) for i in range(1, P.edge_count + 1)]
        for j in range(1, Q.edge_count + 1)
    ]


def _min_entry(candidates, hi):
    candidates = [_ for _ in candidates if _ is not None]
    if not candidates:
        return None
    entry = min(candidates)
    return entry if entry <= hi else None


def _propagate(rows, start, s, u_lo, t):
    """Reachable target slices at height t from the start segment.

    The start segment lies in cell ``start`` of the first row, at local height
    ``s`` and beginning at ``u_lo``. Returns a list of ``(column, lo, hi)``
    slices of the last row at local height ``t``.
    """
    n_rows, n_cols = len(rows), len(rows[0])
    targets = []
    bottom = {}
    for r, cells in enumerate(rows):
        if r > 0 and not bottom:
            break
        last = r == n_rows - 1
        first = start if r == 0 else min(bottom)
        reach = start if r == 0 else max(bottom)
        next_bottom = {}
        left = None
        for k in range(first, n_cols):
            from_start = r == 0 and k == start
            from_bottom = bottom.get(k)
            if not from_start and left is None and from_bottom is None:
                if k >= reach:
                    break
                continue
            cell = cells[k]

            lo, hi = cell.column(1.0)
            entry = _min_entry(
                [
                    max(lo, s) if from_start else None,
                    max(lo, left) if left is not None else None,
                    lo if from_bottom is not None else None,
                ],
                hi,
            )

            if not last:
                lo, hi = cell.slice(1.0)
                up = _min_entry(
                    [
                        max(lo, u_lo) if from_start else None,
                        lo if left is not None else None,
                        max(lo, from_bottom) if from_bottom is not None else None,
                    ],
                    hi,
                )
                if up is not None:
                    next_bottom[k] = up
            else:
                lo, hi = cell.slice(t)
                if lo <= hi:
                    at = _min_entry(
                        [
                            max(lo, u_lo) if from_start and t >= s else None,
                            lo if left is not None and t >= left else None,
                            max(lo, from_bottom) if from_bottom is not None else None,
                        ],
                        hi,
                    )
                    if at is not None:
                        targets.append((k, at, hi))
            left = entry
            if left is not None:
                reach = max(reach, k + 1)
        bottom = next_bottom
    return targets


def reach_cover(rows, s, t, tol=1e-12):
    """All x-intervals ``[a, c]`` joined by a monotone path from height s to t.

    Args:
        rows: A free space row, or a list of consecutive rows. Each row is a
            :class:`~subtraj.freespace.FreeSpace` or a list of cells.
        s: The anchor height, local to the first row.
        t: The target height, local to the last row. For a single row ``s <= t``.

    Returns:
        An :class:`~subtraj.intervals.IntervalUnion` in the global parameter of
        the horizontal curve.

    Example:
        >>> from subtraj.curve import PolygonalCurve
        >>> P = PolygonalCurve([[0, 0], [1, 0], [2, 0]])
        >>> S = PolygonalCurve([[0, 0], [2, 0]])
        >>> reach_cover(free_space_rows(P, S, 5.0), 0.0, 1.0).to_list()
        [(0.0, 1.0)]
    """
    rows = _as_rows(rows)
    if len(rows) == 1 and s > t:
        raise ValueError(f"The anchor height, {s}, lies above the target, {t}.")
    n_cols = len(rows[0])
    found = []
    for i, cell in enumerate(rows[0]):
        lo, hi = cell.slice(s)
        if is_empty((lo, hi)):
            continue
        targets = _propagate(rows, i, s, lo, t)
        if not targets:
            continue
        column, _, c_hi = max(targets, key=lambda item: (item[0] + item[2]))
        found.append(((i + lo) / n_cols, (column + c_hi) / n_cols))
    return IntervalUnion(found, tol=tol)


def decide_frechet(P, Q, delta):
    """Decide whether the Fréchet distance of P and Q is at most delta.

    Example:
        >>> from subtraj.curve import PolygonalCurve
        >>> P = PolygonalCurve([[0, 0], [1, 0]])
        >>> decide_frechet(P, P, 0.0)
        True
        >>> decide_frechet(P, PolygonalCurve([[0, 1], [1, 1]]), 0.5)
        False
    """
    if len(P) < 2 or len(Q) < 2:
        raise ValueError("Both curves require at least 2 vertices.")
    rows = free_space_rows(P, Q, delta)
    lo, _ = rows[0][0].slice(0.0)
    if lo > 0.0:
        return False
    targets = _propagate(rows, 0, 0.0, 0.0, 1.0)
    last = len(rows[0]) - 1
    return any(k == last and hi >= 1.0 - 1e-12 for k, _, hi in targets)
