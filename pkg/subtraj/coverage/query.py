"""Weighted point queries against the proxy coverage of every sweep position."""
import numpy as np

from subtraj.coverage.structures import RangeSumTree

__author__ = "The subtraj developers"

__all__ = ["WeightedPointSet", "SweepAccumulator", "accumulate", "batch_point_query"]


class WeightedPointSet:
    """Sorted points of [0, 1] with positive weights.

    Example:
        >>> Q = WeightedPointSet([0.7, 0.2], [1, 3])
        >>> Q.points.tolist(), Q.weights.tolist()
        ([0.2, 0.7], [3, 1])
        >>> Q.total
        4
    """

    __slots__ = ("_points", "_weights")

    def __init__(self, points=(), weights=None):
        points = np.asarray(points, dtype=float).ravel()
        weights = (
            np.ones(points.size, dtype=np.int64)
            if weights is None
            else np.asarray(weights).ravel()
        )
        if weights.size != points.size:
            raise ValueError(
                f"Expecting {points.size} weights, got {weights.size}."
            )
        if np.any(weights <= 0):
            raise ValueError("Point weights must be positive.")
        order = np.argsort(points, kind="stable")
        self._points, self._weights = points[order], weights[order]

    @classmethod
    def from_mapping(cls, mapping):
        """Build from a ``point -> weight`` mapping, skipping zero weights."""
        items = [(p, w) for p, w in mapping.items() if w > 0]
        if not items:
            return cls()
        points, weights = zip(*items)
        return cls(points, np.asarray(weights, dtype=np.int64))

    def __len__(self):
        return self._points.size

    @property
    def points(self):
        return self._points

    @property
    def weights(self):
        return self._weights

    @property
    def total(self):
        return self._weights.sum().item() if self._weights.size else 0


# table name -> (cell weight function, l or r table, height that drives it)
_TABLES = {
    "start_good": ("_at_least", "l", "s"),
    "start_bad": ("_at_least", "r", "s"),
    "local_below": ("_below", "l", "s"),
    "end_good": ("_at_most", "r", "t"),
    "end_bad": ("_at_most", "l", "t"),
}


class _CellSums:
    """Per-cell weights of Q cut at the l and r entries of a row."""

    def __init__(self, space, Q):
        self.space = space
        q, w = Q.points, Q.weights
        self.q = q
        self.cum = np.concatenate([[0], np.cumsum(w)])
        x = space.x_grid
        start = np.searchsorted(q, x[:-1], side="left")
        stop = np.searchsorted(q, x[1:], side="left")
        stop[-1] = q.size
        self.half = np.stack([start, stop], axis=1)
        self.closed = np.stack([start, np.searchsorted(q, x[1:], side="right")], axis=1)
        self.tree = RangeSumTree(self.cum[stop] - self.cum[start])

    def _at_least(self, k, value):
        """Weight of half-open cell points ``q >= value``."""
        a, b = self.half[k]
        pos = min(max(int(np.searchsorted(self.q, value, side="left")), a), b)
        return self.cum[b] - self.cum[pos]

    def _at_most(self, k, value):
        """Weight of closed cell points ``q <= value``."""
        a, b = self.closed[k]
        pos = min(max(int(np.searchsorted(self.q, value, side="right")), a), b)
        return self.cum[pos] - self.cum[a]

    def _below(self, k, value):
        """Weight of closed cell points ``q < value``."""
        a, b = self.closed[k]
        pos = min(max(int(np.searchsorted(self.q, value, side="left")), a), b)
        return self.cum[pos] - self.cum[a]

    def value(self, name, k, h):
        """The weight of table ``name`` for cell k at height index h."""
        method, table, _ = _TABLES[name]
        table = self.space.l_table if table == "l" else self.space.r_table
        return getattr(self, method)(k, table[k, h])

    def between(self, i, j):
        return self.tree.range_sum(i, j)


def _roles(event):
    """The ``(table, cell, sign)`` terms of the weight of an event."""
    i, j = event.pair
    if event.local:
        return [("end_good", i, 1), ("local_below", i, -1)]
    start = "start_bad" if event.start_bad else "start_good"
    end = "end_bad" if event.end_bad else "end_good"
    return [(start, i, 1), (end, j, 1)]


class SweepAccumulator:
    """A sum over the live events of a sweep, kept while the sweep advances.

    Every live event adds a start term of its first cell, an end term of its
    last cell and a constant for the cells strictly between. The start and end
    terms are grouped per table and cell with their multiplicity, so moving a
    height only revisits the cells whose l or r entry changes at that height.

    Args:
        source: Provides ``space``, ``value(name, k, h)`` for the tables
            ``start_good``, ``start_bad``, ``local_below``, ``end_good`` and
            ``end_bad``, and ``between(i, j)`` for the cells ``i..j``.
        s, t: The initial height indexes.
    """

    def __init__(self, source, s, t):
        self.sums = source
        self.heights = {"s": s, "t": t}
        self.count = {}
        self.total = 0

    def _term(self, name, k):
        return self.sums.value(name, k, self.heights[_TABLES[name][2]])

    def toggle(self, event, sign):
        """Add (sign 1) or remove (sign -1) an event at the current heights."""
        i, j = event.pair
        if not event.local:
            self.total += sign * self.sums.between(i + 1, j - 1)
        for name, k, weight in _roles(event):
            self.total += sign * weight * self._term(name, k)
            key = (name, k)
            self.count[key] = self.count.get(key, 0) + sign * weight
            if self.count[key] == 0:
                del self.count[key]

    def move(self, which, h):
        """Move the start (``"s"``) or end (``"t"``) height to index h."""
        l_changes, r_changes = self.sums.space.height_changes
        for step in range(self.heights[which] + 1, h + 1):
            for name, (_, table, driver) in _TABLES.items():
                if driver != which:
                    continue
                for k in (l_changes if table == "l" else r_changes)[step].tolist():
                    mult = self.count.get((name, k))
                    if mult:
                        new = self.sums.value(name, k, step)
                        old = self.sums.value(name, k, step - 1)
                        self.total += mult * (new - old)
        self.heights[which] = h


def batch_point_query(sweep, events, Q):
    """Weight of the points of Q inside the proxy coverage, per sweep position.

    The proxy interval of a global pair ``(i, j)`` splits into the points of
    cell i right of its start, the points of the cells strictly between, and
    the points of cell j left of its end. Local pairs use the points of their
    own cell. A running total is moved along the sweep: events are added when
    they open and removed after they close, and a height step only updates the
    cells whose l or r entry changes at that height.

    Args:
        sweep: A :class:`~subtraj.coverage.maintain.Sweep`.
        events: The sweep's events from
            :func:`~subtraj.coverage.maintain.interval_event_list`.
        Q: A :class:`WeightedPointSet`.

    Returns:
        An array with one weight per sweep position.
    """
    dtype = Q.weights.dtype if len(Q) else np.int64
    out = np.zeros(len(sweep), dtype=dtype)
    if len(Q) == 0 or len(sweep) == 0:
        return out
    source = _CellSums(sweep.space, Q)
    return accumulate(sweep, events, source, out)


def accumulate(sweep, events, source, out):
    """Write the :class:`SweepAccumulator` total of every sweep position to out.

    Events are removed at the heights of their last position and added at the
    heights of their first one, so every evaluated term belongs to a live pair.
    """
    s_idx, t_idx = sweep.s_idx, sweep.t_idx
    opening, closing = {}, {}
    for event in events:
        opening.setdefault(event.first, []).append(event)
        closing.setdefault(event.last + 1, []).append(event)
    running = SweepAccumulator(source, int(s_idx[0]), int(t_idx[0]))
    for w in range(len(sweep)):
        for event in closing.get(w, []):
            running.toggle(event, -1)
        running.move("t", int(t_idx[w]))
        running.move("s", int(s_idx[w]))
        for event in opening.get(w, []):
            running.toggle(event, 1)
        out[w] = running.total
    return out
