"""Disjoint interval unions over [0, 1] and the greedy solution structures."""
import json
from bisect import bisect_right

import numpy as np
from sortedcontainers import SortedDict
from sortedcontainers import SortedList

__author__ = "The subtraj developers"

__all__ = ["IntervalUnion", "SolutionIntervals", "MeasureSolution"]


class IntervalUnion:
    """An immutable union of closed intervals, stored sorted and disjoint.

    Intervals whose gap is at most ``tol`` are merged; inverted intervals
    (``lo > hi``) are dropped.

    Args:
        intervals: An iterable of ``(lo, hi)`` pairs.
        tol: Merge tolerance.

    Example:
        >>> IntervalUnion([(0.5, 0.7), (0.0, 0.2), (0.1, 0.3)]).to_list()
        [(0.0, 0.3), (0.5, 0.7)]
        >>> round(IntervalUnion([(0.0, 0.3), (0.5, 0.7)]).measure, 12)
        0.5
    """

    __slots__ = ("_lo", "_hi")

    def __init__(self, intervals=(), tol=0.0):
        pairs = sorted((float(a), float(b)) for a, b in intervals if a <= b)
        lo, hi = [], []
        for a, b in pairs:
            if lo and a <= hi[-1] + tol:
                hi[-1] = max(hi[-1], b)
            else:
                lo.append(a)
                hi.append(b)
        self._lo = np.asarray(lo, dtype=float)
        self._hi = np.asarray(hi, dtype=float)

    def __len__(self):
        return self._lo.size

    def __iter__(self):
        return iter(zip(self._lo.tolist(), self._hi.tolist()))

    def __eq__(self, other):
        if not isinstance(other, IntervalUnion):
            return False
        return np.array_equal(self._lo, other._lo) and np.array_equal(
            self._hi, other._hi
        )

    def __repr__(self):
        return f"IntervalUnion({self.to_list()})"

    @property
    def lo(self):
        """Left endpoints."""
        return self._lo

    @property
    def hi(self):
        """Right endpoints."""
        return self._hi

    @property
    def measure(self):
        """The total length."""
        return float(np.sum(self._hi - self._lo))

    @property
    def is_empty(self):
        return self._lo.size == 0

    def to_list(self):
        """Return the intervals as a list of tuples."""
        return list(self)

    def contains(self, x, tol=0.0):
        """Vectorised point membership."""
        x = np.asarray(x, dtype=float)
        k = np.searchsorted(self._lo, x + tol, side="right") - 1
        valid = k >= 0
        out = np.zeros(x.shape, dtype=bool)
        out[valid] = x[valid] <= self._hi[k[valid]] + tol
        return out

    def union(self, other, tol=0.0):
        return IntervalUnion(list(self) + list(other), tol=tol)

    def expand(self, tol):
        """Grow every interval by ``tol`` on both sides."""
        return IntervalUnion([(a - tol, b + tol) for a, b in self], tol=0.0)

    def intersection(self, other):
        out = []
        i = j = 0
        a, b = list(self), list(other)
        while i < len(a) and j < len(b):
            lo, hi = max(a[i][0], b[j][0]), min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalUnion(out)

    def difference(self, other):
        """Closure of ``self`` minus ``other``."""
        out = []
        cuts = list(other)
        for lo, hi in self:
            start = lo
            for a, b in cuts:
                if b < start or a > hi:
                    continue
                if a > start:
                    out.append((start, a))
                start = max(start, b)
            if start < hi:
                out.append((start, hi))
        return IntervalUnion(out)

    def gaps(self, lo=0.0, hi=1.0, tol=0.0):
        """Return the parts of ``[lo, hi]`` not covered, ignoring gaps <= tol."""
        missing = IntervalUnion([(lo, hi)]).difference(self.expand(tol / 2.0))
        return IntervalUnion([(a, b) for a, b in missing if b - a > tol])

    def issubset(self, other, tol=0.0):
        """True if every interval lies inside ``other`` up to ``tol``."""
        grown = other.expand(tol)
        for lo, hi in self:
            k = bisect_right(grown._lo.tolist(), lo) - 1
            if k < 0 or grown._hi[k] < hi:
                return False
        return True

    def covers(self, lo=0.0, hi=1.0, tol=0.0):
        """True if ``[lo, hi]`` is covered up to gaps of length ``tol``."""
        return self.gaps(lo, hi, tol).is_empty

    def hausdorff(self, other):
        """Hausdorff distance between two non-empty unions."""
        return max(self._directed(other), other._directed(self))

    def _directed(self, other):
        if self.is_empty or other.is_empty:
            return 0.0 if self.is_empty and other.is_empty else np.inf
        samples = np.concatenate([self._lo, self._hi])
        mid = 0.5 * (other._hi[:-1] + other._lo[1:])
        samples = np.concatenate([samples, mid[self.contains(mid)]])
        k = np.searchsorted(other._lo, samples, side="right") - 1
        dist = np.full(samples.shape, np.inf)
        left = k >= 0
        dist[left] = np.maximum(samples[left] - other._hi[k[left]], 0.0)
        right = k + 1 < len(other)
        dist[right] = np.minimum(dist[right], other._lo[k[right] + 1] - samples[right])
        return float(np.max(dist))

    def dict(self):
        """Return the union as a python dictionary."""
        return {"intervals": [list(_) for _ in self], "measure": self.measure}

    @property
    def data_structure(self):
        """Json serialized string describing the union."""
        return json.dumps(self.dict(), ensure_ascii=False, sort_keys=False, indent=2)


class SolutionIntervals:
    """Disjoint covered intervals together with the still uncovered points.

    The covered union lives in a :class:`~sortedcontainers.SortedDict` keyed by
    left endpoint; uncovered points live in a
    :class:`~sortedcontainers.SortedList`, so counting uncovered points of an
    interval is two bisections.

    Args:
        points: The points to cover (for instance atomic midpoints).
        boundaries: Optional sorted boundaries for alignment checks.
        tol: Alignment tolerance.

    Example:
        >>> sol = SolutionIntervals([0.1, 0.3, 0.5, 0.7])
        >>> sol.residual_count(0.0, 1.0)
        4
        >>> sol.insert(0.2, 0.6)
        [0.3, 0.5]
        >>> sol.residual_count(0.0, 0.6)
        1
    """

    __slots__ = ("_uncovered", "_intervals", "_boundaries", "_tol", "_total")

    def __init__(self, points, boundaries=None, tol=1e-9):
        self._uncovered = SortedList(float(_) for _ in points)
        self._total = len(self._uncovered)
        self._intervals = SortedDict()
        self._boundaries = None if boundaries is None else np.asarray(boundaries)
        self._tol = tol

    def __len__(self):
        return len(self._intervals)

    @property
    def uncovered(self):
        """The points not yet covered, sorted."""
        return self._uncovered

    @property
    def uncovered_count(self):
        return len(self._uncovered)

    @property
    def covered_count(self):
        return self._total - len(self._uncovered)

    def intervals(self):
        """The covered union as an :class:`IntervalUnion`."""
        return IntervalUnion(self._intervals.items())

    def _check_aligned(self, value):
        if self._boundaries is None:
            return
        k = np.searchsorted(self._boundaries, value)
        near = [
            abs(self._boundaries[j] - value)
            for j in (k - 1, k)
            if 0 <= j < self._boundaries.size
        ]
        if not near or min(near) > self._tol:
            raise ValueError(
                f"The endpoint, {value}, is not aligned to an interval boundary "
                f"within tolerance {self._tol}."
            )

    def residual_count(self, lo, hi, aligned=False):
        """Number of uncovered points in ``[lo, hi]``."""
        if aligned:
            self._check_aligned(lo)
            self._check_aligned(hi)
        if lo > hi:
            return 0
        return self._uncovered.bisect_right(hi) - self._uncovered.bisect_left(lo)

    def insert(self, lo, hi):
        """Add ``[lo, hi]`` and return the newly covered points."""
        if lo > hi:
            return []
        newly = list(self._uncovered.irange(lo, hi))
        for point in newly:
            self._uncovered.remove(point)
        _merge_into(self._intervals, lo, hi)
        return newly


def _merge_into(table, lo, hi):
    """Insert ``[lo, hi]`` into a SortedDict of disjoint intervals, merging."""
    k = table.bisect_right(lo) - 1
    if k >= 0:
        start, end = table.peekitem(k)
        if end >= lo:
            lo = start
            hi = max(hi, end)
            del table[start]
    for start in list(table.irange(lo, hi)):
        hi = max(hi, table.pop(start))
    table[lo] = hi


class MeasureSolution:
    """Disjoint covered intervals with their total length.

    Example:
        >>> sol = MeasureSolution()
        >>> sol.insert(0.2, 0.4)
        >>> round(sol.residual_measure(0.0, 0.3), 12)
        0.2
        >>> round(sol.measure, 12)
        0.2
    """

    __slots__ = ("_intervals", "_measure")

    def __init__(self, intervals=()):
        self._intervals = SortedDict()
        self._measure = 0.0
        for lo, hi in intervals:
            self.insert(lo, hi)

    def __len__(self):
        return len(self._intervals)

    @property
    def measure(self):
        """The Lebesgue measure of the union."""
        return self._measure

    def intervals(self):
        return IntervalUnion(self._intervals.items())

    def covered_measure(self, lo, hi):
        """Measure of ``[lo, hi]`` intersected with the union."""
        if lo >= hi:
            return 0.0
        keys = self._intervals.keys()
        k = max(self._intervals.bisect_right(lo) - 1, 0)
        total = 0.0
        for start in keys[k:]:
            if start >= hi:
                break
            end = self._intervals[start]
            total += max(0.0, min(end, hi) - max(start, lo))
        return total

    def residual_measure(self, lo, hi):
        """Measure of ``[lo, hi]`` minus the union."""
        if lo >= hi:
            return 0.0
        return (hi - lo) - self.covered_measure(lo, hi)

    def insert(self, lo, hi):
        """Add ``[lo, hi]`` to the union."""
        if lo >= hi:
            return
        self._measure += self.residual_measure(lo, hi)
        _merge_into(self._intervals, lo, hi)

    def remove(self, lo, hi):
        """Remove ``(lo, hi)`` from the union."""
        if lo >= hi:
            return
        self._measure -= self.covered_measure(lo, hi)
        keys = self._intervals.keys()
        k = max(self._intervals.bisect_left(lo) - 1, 0)
        for start in list(keys[k:]):
            if start >= hi:
                break
            end = self._intervals[start]
            if end <= lo:
                continue
            del self._intervals[start]
            if start < lo:
                self._intervals[start] = lo
            if end > hi:
                self._intervals[hi] = end
