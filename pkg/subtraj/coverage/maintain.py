"""Sweep maintenance of the reduced global group along a sweep-sequence.

A :class:`Sweep` binds a sweep-sequence to the free space row it walks over. A
:class:`SweepMaintainer` keeps the maximal reach pairs, the global and local
groups and the reduced global group of the current window in sorted
containers. Moving the window by one height flips the boundary tests and the
cell flags of a few cells only; the maintainer repairs the pairs around those
flips and reports the members it opened and closed, which become the events of
the sweep.
"""
import logging

import numpy as np
from sortedcontainers import SortedDict
from sortedcontainers import SortedList

from subtraj.candidates import Candidate
from subtraj.coverage.state import bad_mask
from subtraj.coverage.state import CombinatorialState
from subtraj.coverage.state import compute_bad_windows
from subtraj.coverage.structures import ShootLeftDS
from subtraj.utils import TOLERANCE

__author__ = "The subtraj developers"

__all__ = ["Sweep", "SweepMaintainer", "Event", "maintain", "interval_event_list"]

logger = logging.getLogger(__name__)


class Sweep:
    """A sweep-sequence of an edge together with the row it is swept over.

    Args:
        space: The forward row of the edge.
        sequence: A :class:`~subtraj.candidates.SweepSequence`. Reversed
            sequences are swept over the mirrored row.
        mirrored: The mirrored row, if already built.
    """

    __slots__ = ("_space", "_sequence", "_heights", "_s_idx", "_t_idx", "_windows")

    def __init__(self, space, sequence, mirrored=None, tol=TOLERANCE):
        if sequence.orientation == "reversed":
            mirrored = space.mirrored() if mirrored is None else mirrored
            self._space = mirrored
        else:
            self._space = space
        self._heights = space.heights
        self._sequence = sequence
        self._s_idx, self._t_idx = sequence.sweep_indexes()
        self._windows = compute_bad_windows(self._space, self._s_idx, self._t_idx, tol)

    def __len__(self):
        return len(self._sequence)

    def __repr__(self):
        return f"Sweep(edge={self.edge}, {self._sequence!r})"

    @property
    def space(self):
        """The row the sequence walks over."""
        return self._space

    @property
    def sequence(self):
        return self._sequence

    @property
    def edge(self):
        return self._space.edge

    @property
    def s_idx(self):
        return self._s_idx

    @property
    def t_idx(self):
        return self._t_idx

    @property
    def candidate_mask(self):
        return self._sequence.candidate

    @property
    def bad_windows(self):
        return self._windows

    def descriptor(self, position):
        """Tie-breaking key of the candidate at a position."""
        seq = self._sequence
        return (
            seq.type_rank,
            self.edge,
            int(seq.orientation == "reversed"),
            int(seq.a[position]) + 1,
            int(seq.b[position]) + 1,
        )

    def candidate(self, position):
        """The :class:`~subtraj.candidates.Candidate` at a position."""
        seq = self._sequence
        a, b = int(seq.a[position]), int(seq.b[position])
        return Candidate(
            "II" if seq.kind == "affix" else "III",
            self.edge,
            a + 1,
            b + 1,
            heights=(self._heights[a], self._heights[b]),
            reversed=seq.orientation == "reversed",
        )


class SweepMaintainer:
    """Incrementally maintained index-pair sets of a moving window.

    The reach of the window is kept as the chain of maximal pairs ``(i, R(i))``
    of U, where ``R(i)`` is the last cell reached from cell i. A cell i stops at
    the first blocked boundary at or after i, or where the inversion floor of
    the boundaries exceeds i. Every step flips the flags of a few cells and
    boundaries; the chain is walked again only from the pair before the first
    flip until it meets a stored pair past the flip. The global pairs, the
    local cells and the reduced global group are repaired at the touched pairs
    only.

    Args:
        space: The row being swept.
        s_idx: Initial start height index.
        t_idx: Initial end height index, at least ``s_idx``.

    Attributes:
        visited: Running count of chain pairs, cells and global pairs revisited
            by the steps since construction.
    """

    def __init__(self, space, s_idx, t_idx, tol=TOLERANCE):
        if s_idx > t_idx:
            raise ValueError(f"The window ({s_idx}, {t_idx}) is not ordered.")
        self._space = space
        self._tol = tol
        self._n = n = len(space)
        lo, hi = space.boundary_lo, space.boundary_hi
        self._inv_floor = self._inversion_floor(lo, hi, tol)
        self._hi_order = np.argsort(hi, kind="stable")
        self._lo_order = np.argsort(lo - tol, kind="stable")
        self._hi_sorted = hi[self._hi_order]
        self._lo_sorted = (lo - tol)[self._lo_order]
        self._s_idx, self._t_idx = int(s_idx), int(t_idx)

        s, t = space.heights[self._s_idx], space.heights[self._t_idx]
        l, r = space.l_table[:, self._s_idx], space.r_table[:, self._t_idx]
        lfin, rfin = np.isfinite(l), np.isfinite(r)
        open_ = (s - tol <= hi) & (lo - tol <= t)
        self._blocked = SortedList(np.flatnonzero(~open_).tolist())
        self._lfin = SortedList(np.flatnonzero(lfin).tolist())
        self._rfin = SortedList(np.flatnonzero(rfin).tolist())
        local = lfin & rfin & (l - tol <= r)
        self._local = SortedList(np.flatnonzero(local).tolist())
        self._bad = set(
            np.flatnonzero(bad_mask(l, r, space.top_x, space.bottom_x, tol)).tolist()
        )

        self._U = SortedDict()
        self._ends = SortedDict()
        self._G = SortedDict()
        self._L = SortedList()
        self._tilde = SortedDict()
        self._opened, self._closed = set(), set()
        self.visited = 0

        dirty, removed = self._repair_chain([0])
        changes = self._repair_global(dirty | removed)
        changed = self._repair_local(changes, range(n))
        self._emit_local(changed, ())
        self._repair_reduced([0, n])
        self.visited = 0

    @staticmethod
    def _inversion_floor(lo, hi, tol):
        n = lo.size + 1
        inv = ShootLeftDS(lo - tol, np.full(lo.size, np.inf))
        floor = np.zeros(n, dtype=int)
        for j in range(1, n):
            b = j - 1
            first = inv.query(b, hi[b])
            first_ok = b + 1 if first is None else first
            floor[j] = max(floor[j - 1], first_ok)
        return floor

    @property
    def s_idx(self):
        return self._s_idx

    @property
    def t_idx(self):
        return self._t_idx

    # chain of maximal reach pairs

    def _first_lfin(self, x):
        k = self._lfin.bisect_left(x)
        return self._lfin[k] if k < len(self._lfin) else None

    def _reach_end(self, i):
        """Last cell reached from cell i, and whether a blocked boundary stops it."""
        k = self._blocked.bisect_left(i)
        blocked = self._blocked[k] if k < len(self._blocked) else self._n - 1
        inv = int(np.searchsorted(self._inv_floor, i, side="right")) - 1
        return (blocked, True) if blocked <= inv else (inv, False)

    def _step(self, i):
        """The end of pair i and the start of the next maximal pair."""
        end, blocked = self._reach_end(i)
        if end >= self._n - 1:
            return end, None
        x = end + 1 if blocked else int(self._inv_floor[end + 1])
        return end, self._first_lfin(x)

    def _repair_chain(self, positions):
        """Walk the chain again around flipped cells and boundaries.

        Returns:
            The starts of new or changed pairs together with the first stored
            pair after every walk, and the starts of removed pairs.
        """
        dirty, removed = set(), set()
        done = -1
        for p in sorted(set(positions)):
            if p <= done:
                continue
            k = self._ends.bisect_left(p - 1)
            if k > 0:
                pred = self._ends.peekitem(k - 1)[1]
                node, first = self._step(pred)[1], pred + 1
            else:
                node, first = self._first_lfin(0), 0
            fresh = {}
            while node is not None and not (node > p and node in self._U):
                end, nxt = self._step(node)
                fresh[node] = end
                node = nxt
            stop = self._n if node is None else node
            self.visited += len(fresh) + 1

            stale = list(self._U.irange(first, stop, inclusive=(True, False)))
            for key in stale:
                if fresh.get(key) != self._U[key]:
                    del self._ends[self._U.pop(key)]
                    if key not in fresh:
                        removed.add(key)
            for key, end in fresh.items():
                if key not in self._U:
                    self._U[key] = end
                    self._ends[end] = key
            dirty.update(fresh)
            if node is not None:
                dirty.add(node)
            done = stop
        return dirty, removed

    def _owner(self, cell):
        """Start of the chain pair whose range holds the cell, or None."""
        k = self._ends.bisect_left(cell)
        return self._ends.peekitem(k)[1] if k < len(self._ends) else None

    # global pairs, local cells and the reduced global group

    def _closing(self, i):
        if i not in self._U:
            return None
        end = self._U[i]
        k = self._U.index(i)
        prev_end = self._U.peekitem(k - 1)[1] if k > 0 else -1
        idx = self._rfin.bisect_right(end) - 1
        if idx < 0:
            return None
        j = self._rfin[idx]
        return j if j >= max(i + 1, prev_end + 1) else None

    def _repair_global(self, keys):
        """Recompute the global pair promoted from every chain start in keys."""
        changes = []
        for key in sorted(keys):
            old, new = self._G.get(key), self._closing(key)
            self.visited += 1
            if old == new:
                continue
            if new is None:
                del self._G[key]
            else:
                self._G[key] = new
            changes.append((key, old, new))
        return changes

    def _covered(self, k):
        idx = self._G.bisect_right(k) - 1
        return idx >= 0 and self._G.peekitem(idx)[1] >= k

    def _repair_local(self, changes, cells):
        """Update the local cells outside every global pair; return the toggled."""
        check = set(cells)
        for key, old, new in changes:
            if old is None or new is None:
                a, b = key, new if old is None else old
            else:
                a, b = min(old, new) + 1, max(old, new)
            check.update(self._local.irange(a, b))
        self.visited += len(check)
        toggled = []
        for k in check:
            want = k in self._local and not self._covered(k)
            if want != (k in self._L):
                (self._L.add if want else self._L.remove)(k)
                toggled.append(k)
        return toggled

    def _emit(self, key, live):
        if live:
            if key in self._closed:
                self._closed.remove(key)
            else:
                self._opened.add(key)
        elif key in self._opened:
            self._opened.remove(key)
        else:
            self._closed.add(key)

    def _emit_local(self, toggled, bad_flips):
        toggled, bad_flips = set(toggled), set(bad_flips)
        for k in toggled | bad_flips:
            now = k in self._L and k not in self._bad
            was = ((k in self._L) != (k in toggled)) and (
                (k in self._bad) == (k in bad_flips)
            )
            if now != was:
                self._emit(((k, k), False, False), now)

    def _repair_reduced(self, positions):
        """Merge the global pairs again around the given cells."""
        if not positions:
            return
        lo, hi = min(positions), max(positions)
        k = self._tilde.bisect_right(lo) - 2
        first = self._tilde.peekitem(k)[0] if k >= 0 else -1
        groups, cur, stop = [], None, None
        for a in self._G.irange(first):
            b = self._G[a]
            self.visited += 1
            if cur is not None and (a < cur[1] or (a == cur[1] and a not in self._bad)):
                cur[1] = max(cur[1], b)
                continue
            if a > hi and a in self._tilde:
                stop = a
                break
            if cur is not None:
                groups.append(tuple(cur))
            cur = [a, b]
        if cur is not None:
            groups.append(tuple(cur))

        stale = list(self._tilde.irange(first, stop, inclusive=(True, False)))
        for a in stale:
            self._emit(self._tilde.pop(a), False)
        for a, b in groups:
            key = ((a, b), a in self._bad, b in self._bad)
            self._tilde[a] = key
            self._emit(key, True)

    # steps

    def _flipped(self, order, values, a, b, side):
        lo, hi = np.searchsorted(values, [min(a, b), max(a, b)], side=side)
        return order[lo:hi]

    def _move(self, s_idx, t_idx):
        space, tol = self._space, self._tol
        heights = space.heights
        s_old, t_old = self._s_idx, self._t_idx
        self._s_idx, self._t_idx = s_idx, t_idx
        s, t = heights[s_idx], heights[t_idx]
        l_changes, r_changes = space.height_changes

        bounds, cells = [], []
        if s_idx != s_old:
            bounds.append(
                self._flipped(
                    self._hi_order,
                    self._hi_sorted,
                    heights[s_old] - tol,
                    s - tol,
                    "left",
                )
            )
            cells.append(l_changes[s_idx])
        if t_idx != t_old:
            bounds.append(
                self._flipped(
                    self._lo_order, self._lo_sorted, heights[t_old], t, "right"
                )
            )
            cells.append(r_changes[t_idx])

        positions = []
        bounds = np.unique(np.concatenate(bounds)) if bounds else []
        for b in np.asarray(bounds, dtype=int).tolist():
            ok = s - tol <= space.boundary_hi[b] and space.boundary_lo[b] - tol <= t
            if ok == (b in self._blocked):
                (self._blocked.remove if ok else self._blocked.add)(b)
                positions.append(b)

        cells = np.unique(np.concatenate(cells)) if cells else np.empty(0, int)
        l, r = space.l_table[cells, s_idx], space.r_table[cells, t_idx]
        lfin, rfin = np.isfinite(l), np.isfinite(r)
        local = lfin & rfin & (l - tol <= r)
        bad = bad_mask(l, r, space.top_x[cells], space.bottom_x[cells], tol)
        rfin_flips, local_flips, bad_flips = [], [], []
        for c, lf, rf, lc, bd in zip(
            cells.tolist(), lfin.tolist(), rfin.tolist(), local.tolist(), bad.tolist()
        ):
            if lf != (c in self._lfin):
                (self._lfin.add if lf else self._lfin.remove)(c)
                positions.append(c)
            if rf != (c in self._rfin):
                (self._rfin.add if rf else self._rfin.remove)(c)
                rfin_flips.append(c)
            if lc != (c in self._local):
                (self._local.add if lc else self._local.remove)(c)
                local_flips.append(c)
            if bd != (c in self._bad):
                (self._bad.add if bd else self._bad.discard)(c)
                bad_flips.append(c)

        dirty, removed = self._repair_chain(positions) if positions else (set(), set())
        owners = {self._owner(c) for c in rfin_flips} - {None}
        changes = self._repair_global(dirty | removed | owners)
        toggled = self._repair_local(changes, local_flips)
        self._emit_local(toggled, bad_flips)
        self._repair_reduced([key for key, _, _ in changes] + bad_flips)

    def advance_start(self, s_idx):
        """Move the window start to the next height."""
        if s_idx != self._s_idx + 1 or s_idx > self._t_idx:
            raise ValueError(
                f"The start height index must advance from {self._s_idx} by one, "
                f"without passing {self._t_idx}; got {s_idx}."
            )
        self._move(s_idx, self._t_idx)

    def advance_end(self, t_idx):
        """Move the window end to the next height."""
        if t_idx != self._t_idx + 1:
            raise ValueError(
                f"The end height index must advance from {self._t_idx} by one; "
                f"got {t_idx}."
            )
        self._move(self._s_idx, t_idx)

    def pop_changes(self):
        """Members opened and closed since the last call.

        Returns:
            A pair of sets ``(opened, closed)`` of ``((i, j), start_bad, end_bad)``.
        """
        opened, closed = self._opened, self._closed
        self._opened, self._closed = set(), set()
        return opened, closed

    def state(self):
        """Snapshot the :class:`CombinatorialState` of the current window."""
        U = list(self._U.items())
        G = list(self._G.items())
        G_tilde = [key[0] for key in self._tilde.values()]
        L = [(k, k) for k in self._L if k not in self._bad]
        return CombinatorialState(self._s_idx, self._t_idx, U, G, G_tilde, L, self._bad)


def _walk(sweep, tol):
    s_idx, t_idx = sweep.s_idx, sweep.t_idx
    if len(s_idx) == 0:
        return
    keeper = SweepMaintainer(sweep.space, int(s_idx[0]), int(t_idx[0]), tol)
    yield keeper
    for w in range(1, len(s_idx)):
        if t_idx[w] != t_idx[w - 1]:
            keeper.advance_end(int(t_idx[w]))
        if s_idx[w] != s_idx[w - 1]:
            keeper.advance_start(int(s_idx[w]))
        yield keeper


def maintain(sweep, tol=TOLERANCE):
    """Yield the :class:`CombinatorialState` at every position of a sweep.

    The first window is settled from scratch; every later window is reached by
    :meth:`SweepMaintainer.advance_end` and
    :meth:`SweepMaintainer.advance_start` steps.
    """
    for keeper in _walk(sweep, tol):
        yield keeper.state()


class Event:
    """A pair of the proxy coverage together with the positions where it lives.

    Over ``[first, last]`` the pair is a member of the reduced global group (or
    of the local group) and the good or bad status of its endpoints is constant.
    """

    __slots__ = ("pair", "first", "last", "start_bad", "end_bad")

    def __init__(self, pair, first, last, start_bad=False, end_bad=False):
        self.pair = (int(pair[0]), int(pair[1]))
        self.first, self.last = int(first), int(last)
        self.start_bad, self.end_bad = bool(start_bad), bool(end_bad)

    def __repr__(self):
        return (
            f"Event({self.pair}, [{self.first}, {self.last}], "
            f"bad=({self.start_bad}, {self.end_bad}))"
        )

    def __eq__(self, other):
        if not isinstance(other, Event):
            return False
        check = [getattr(self, _) == getattr(other, _) for _ in __class__.__slots__]
        return False if False in check else True

    @property
    def local(self):
        return self.pair[0] == self.pair[1]


def _member_changes(states):
    live = set()
    for state in states:
        members = state.members()
        yield members - live, live - members
        live = members


def interval_event_list(sweep, tol=TOLERANCE, states=None):
    """Turn the member changes along a sweep into a list of :class:`Event`.

    At every position the events covering it are exactly the members of the
    reduced global group and of the local group without bad cells. Without
    ``states`` the opened and closed members are read from the maintainer
    after every step; given snapshots, consecutive member sets are compared.
    """
    if states is None:
        changes = (keeper.pop_changes() for keeper in _walk(sweep, tol))
    else:
        changes = _member_changes(states)
    events, open_ = [], {}
    w = -1
    for w, (opened, closed) in enumerate(changes):
        for key in closed:
            events.append(Event(key[0], open_.pop(key), w - 1, key[1], key[2]))
        for key in opened:
            open_[key] = w
    for key, first in open_.items():
        events.append(Event(key[0], first, w, key[1], key[2]))
    events.sort(key=lambda e: (e.first, e.pair))
    logger.debug("%r: %d events", sweep, len(events))
    return events
