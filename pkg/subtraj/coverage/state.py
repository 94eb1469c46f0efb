"""Combinatorial representation of the coverage of a subedge, and its proxy.

For a free space row and a window ``(s, t)`` of extremal heights the coverage
of the subedge ``e[s, t]`` is a union of intervals ``[l_i(s), r_j(t)]`` over
inclusion-maximal index pairs ``(i, j)``. The pairs with ``i < j`` form the
global group, the pairs ``(i, i)`` the local group. The proxy coverage replaces
the endpoints of bad cells so that the union becomes disjoint.

All comparisons are written as ``a - tol <= b`` so that the incremental
maintenance and the from-scratch computation agree exactly.
"""
import json

import numpy as np

from subtraj.coverage.structures import JumpRightDS
from subtraj.intervals import IntervalUnion
from subtraj.utils import TOLERANCE

__author__ = "The subtraj developers"

__all__ = [
    "BadWindow",
    "CombinatorialState",
    "bad_mask",
    "bad_index_test",
    "compute_bad_windows",
    "combinatorial_state",
    "reduce_global",
    "proxy_intervals",
    "proxy_cov",
]


def bad_mask(l, r, top_x, bottom_x, tol=TOLERANCE):
    """Vectorised bad-cell test.

    A cell is bad when its right-most top-most point is left of both ``l`` and
    ``r`` and both are left of its left-most bottom-most point. Cells with an
    infinite ``l`` or ``r`` are never bad.
    """
    l, r = np.asarray(l, dtype=float), np.asarray(r, dtype=float)
    finite = np.isfinite(l) & np.isfinite(r)
    with np.errstate(invalid="ignore"):
        left_of = top_x - tol <= np.minimum(l, r)
        right_of = np.maximum(l, r) - tol <= bottom_x
    return finite & left_of & right_of


def bad_index_test(space, i, s_idx, t_idx, tol=TOLERANCE):
    """True when cell i is bad for the window ``(s_idx, t_idx)`` of the row."""
    if s_idx > t_idx:
        raise ValueError(f"The window ({s_idx}, {t_idx}) is not ordered.")
    return bool(
        bad_mask(
            space.l_table[i, s_idx],
            space.r_table[i, t_idx],
            space.top_x[i],
            space.bottom_x[i],
            tol,
        )
    )


class BadWindow:
    """A contiguous range ``[first, last]`` of sweep positions where a cell is bad."""

    __slots__ = ("cell", "first", "last")

    def __init__(self, cell, first, last):
        self.cell, self.first, self.last = int(cell), int(first), int(last)

    def __eq__(self, other):
        if not isinstance(other, BadWindow):
            return False
        mine = (self.cell, self.first, self.last)
        return mine == (other.cell, other.first, other.last)

    def __repr__(self):
        return f"BadWindow(cell={self.cell}, first={self.first}, last={self.last})"

    def __contains__(self, position):
        return self.first <= position <= self.last


def compute_bad_windows(space, s_idx, t_idx, tol=TOLERANCE):
    """Bad windows of every cell along a sweep.

    Args:
        space: The swept :class:`~subtraj.freespace.FreeSpace`.
        s_idx: Height indexes of the window starts, one per position.
        t_idx: Height indexes of the window ends.

    Returns:
        A list of :class:`BadWindow` sorted by cell, one per maximal run.
    """
    s_idx, t_idx = np.asarray(s_idx), np.asarray(t_idx)
    mask = bad_mask(
        space.l_table[:, s_idx],
        space.r_table[:, t_idx],
        space.top_x[:, None],
        space.bottom_x[:, None],
        tol,
    )
    windows = []
    for cell in np.flatnonzero(mask.any(axis=1)):
        row = np.concatenate([[False], mask[cell], [False]]).astype(np.int8)
        starts = np.flatnonzero(np.diff(row) == 1)
        stops = np.flatnonzero(np.diff(row) == -1) - 1
        windows += [BadWindow(cell, a, b) for a, b in zip(starts, stops)]
    return windows


class CombinatorialState:
    """The index-pair sets of one window.

    Attributes:
        U: Maximal pairs reaching cell j at some height at most t.
        G: The global group.
        G_tilde: The reduced global group.
        L: The local group without its bad cells.
        B: The bad cells.
    """

    __slots__ = ("s_idx", "t_idx", "U", "G", "G_tilde", "L", "B")

    def __init__(self, s_idx, t_idx, U, G, G_tilde, L, B):
        self.s_idx, self.t_idx = int(s_idx), int(t_idx)
        self.U = tuple(sorted(U))
        self.G = tuple(sorted(G))
        self.G_tilde = tuple(sorted(G_tilde))
        self.L = tuple(sorted(L))
        self.B = frozenset(int(_) for _ in B)

    def __eq__(self, other):
        if not isinstance(other, CombinatorialState):
            return False
        check = [getattr(self, _) == getattr(other, _) for _ in __class__.__slots__]
        return False if False in check else True

    def __repr__(self):
        return (
            f"CombinatorialState(({self.s_idx}, {self.t_idx}), U={list(self.U)}, "
            f"G={list(self.G)}, G_tilde={list(self.G_tilde)}, L={list(self.L)}, "
            f"B={sorted(self.B)})"
        )

    def members(self):
        """The pairs that contribute to the proxy coverage, with endpoint flags.

        Returns:
            A set of ``((i, j), start_bad, end_bad)``; local pairs are never bad.
        """
        out = {((i, i), False, False) for i, _ in self.L}
        out |= {((i, j), i in self.B, j in self.B) for i, j in self.G_tilde}
        return out

    def dict(self):
        return {
            "window": [self.s_idx, self.t_idx],
            "U": [list(_) for _ in self.U],
            "G": [list(_) for _ in self.G],
            "G_tilde": [list(_) for _ in self.G_tilde],
            "L": [list(_) for _ in self.L],
            "B": sorted(self.B),
        }

    @property
    def data_structure(self):
        return json.dumps(self.dict(), ensure_ascii=False, sort_keys=False, indent=2)


def _maximal(pairs):
    pairs = set(pairs)
    return [
        p
        for p in pairs
        if not any(q != p and q[0] <= p[0] and p[1] <= q[1] for q in pairs)
    ]


def reduce_global(G, bad):
    """Merge global pairs that overlap, or that meet at a good cell.

    Example:
        >>> reduce_global([(0, 3), (3, 4)], bad=set())
        [(0, 4)]
        >>> reduce_global([(0, 3), (3, 4)], bad={3})
        [(0, 3), (3, 4)]
    """
    out = []
    for a, b in sorted(G):
        if out and (a < out[-1][1] or (a == out[-1][1] and a not in bad)):
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def combinatorial_state(space, s_idx, t_idx, tol=TOLERANCE):
    """Compute the :class:`CombinatorialState` of a window from scratch.

    Reachability from cell i runs up to the first blocked boundary, found with
    a :class:`~subtraj.coverage.structures.JumpRightDS` over the open flags,
    and is checked boundary by boundary for inverted floors on the way. The
    maximal pairs are filtered explicitly.
    """
    if s_idx > t_idx:
        raise ValueError(f"The window ({s_idx}, {t_idx}) is not ordered.")
    n = len(space)
    s, t = space.heights[s_idx], space.heights[t_idx]
    lo, hi = space.boundary_lo, space.boundary_hi
    l, r = space.l_table[:, s_idx], space.r_table[:, t_idx]
    lfin, rfin = np.isfinite(l), np.isfinite(r)
    bad = set(
        np.flatnonzero(bad_mask(l, r, space.top_x, space.bottom_x, tol)).tolist()
    )

    open_ = (s - tol <= hi) & (lo - tol <= t)
    jumps = JumpRightDS(open_.astype(float))
    reach = []
    for i in np.flatnonzero(lfin):
        blocked = jumps.first_not_above(int(i), 0.0)
        floor = s
        for b in range(i, n - 1 if blocked is None else blocked):
            floor = max(floor, lo[b])
            if floor - tol > hi[b]:
                break
            reach.append((int(i), b + 1))

    locals_ = [(int(i), int(i)) for i in np.flatnonzero(lfin)]
    U = _maximal(reach + locals_)
    closing = [(i, j) for i, j in reach if rfin[j]]
    closing += [(i, i) for i, _ in locals_ if rfin[i] and l[i] - tol <= r[i]]
    R = _maximal(closing)
    G = sorted(p for p in R if p[0] < p[1])
    L = sorted(p for p in R if p[0] == p[1] and p[0] not in bad)
    return CombinatorialState(s_idx, t_idx, U, G, reduce_global(G, bad), L, bad)


def proxy_intervals(space, s_idx, t_idx, state=None, tol=TOLERANCE):
    """The raw intervals of the proxy coverage of a window, unsorted.

    Bad start cells begin at ``r_i(s)`` and bad end cells stop at ``l_j(t)``.
    """
    state = combinatorial_state(space, s_idx, t_idx, tol) if state is None else state
    ls, rs = space.l_table[:, s_idx], space.r_table[:, s_idx]
    lt, rt = space.l_table[:, t_idx], space.r_table[:, t_idx]
    out = [(float(ls[i]), float(rt[i])) for i, _ in state.L]
    for i, j in state.G_tilde:
        start = rs[i] if i in state.B else ls[i]
        end = lt[j] if j in state.B else rt[j]
        out.append((float(start), float(end)))
    ordered = sorted(out)
    assert all(b[0] >= a[1] - 4 * tol for a, b in zip(ordered, ordered[1:]))
    return out


def proxy_cov(space, s_idx, t_idx, state=None, tol=TOLERANCE):
    """The proxy coverage of the window as an :class:`IntervalUnion`.

    Example:
        >>> from subtraj.curve import PolygonalCurve
        >>> from subtraj.freespace import build_free_space
        >>> P = PolygonalCurve([[0, 0], [1, 0], [2, 0]])
        >>> S = PolygonalCurve([[0, 0], [2, 0]])
        >>> space = build_free_space(P, S, 1, 10.0)
        >>> proxy_cov(space, 0, space.m - 1).to_list()
        [(0.0, 1.0)]
    """
    return IntervalUnion(proxy_intervals(space, s_idx, t_idx, state, tol))
