"""Base cell class and the free space interval record."""
import json

import numpy as np

from subtraj.utils import INF


__author__ = "The subtraj developers"

__all__ = ["BaseCell", "CellExtremes", "FreeSpaceIntervals", "EMPTY", "is_empty"]

EMPTY = (INF, -INF)


def is_empty(interval):
    """True when the closed interval ``(lo, hi)`` is empty."""
    return not interval[0] <= interval[1]


def clip_unit(interval):
    """Intersect ``(lo, hi)`` with [0, 1]."""
    lo, hi = max(interval[0], 0.0), min(interval[1], 1.0)
    return (lo, hi) if lo <= hi else EMPTY


class FreeSpaceIntervals:
    """The intersection of a cell's free region with its four sides.

    Each attribute is a closed interval ``(lo, hi)`` in local coordinates, or
    :data:`EMPTY`.
    """

    __slots__ = ("left", "right", "bottom", "top")

    def __init__(self, left, right, bottom, top):
        self.left = left
        self.right = right
        self.bottom = bottom
        self.top = top

    def __eq__(self, other):
        check = [getattr(self, _) == getattr(other, _) for _ in __class__.__slots__]
        return False if False in check else True

    def dict(self):
        """Return the intervals as a python dictionary, omitting empty sides."""
        obj = {k: list(getattr(self, k)) for k in __class__.__slots__}
        _ = [obj.pop(k) for k in [k for k, v in obj.items() if v[0] > v[1]]]
        return obj

    @property
    def data_structure(self):
        """Json serialized string describing the intervals."""
        return json.dumps(self.dict(), ensure_ascii=False, sort_keys=False, indent=2)


class CellExtremes:
    """Extreme features of a non-empty convex cell region.

    ``bottom`` and ``top`` are ``(y, u_lo, u_hi)``: the height and the u-range of
    the bottom-most and top-most points. ``left`` and ``right`` are
    ``(u, y_lo, y_hi)``.
    """

    __slots__ = ("bottom", "top", "left", "right")

    def __init__(self, bottom, top, left, right):
        self.bottom = tuple(float(_) for _ in bottom)
        self.top = tuple(float(_) for _ in top)
        self.left = tuple(float(_) for _ in left)
        self.right = tuple(float(_) for _ in right)

    def __eq__(self, other):
        check = [getattr(self, _) == getattr(other, _) for _ in __class__.__slots__]
        return False if False in check else True

    def __repr__(self):
        return (
            f"CellExtremes(bottom={self.bottom}, top={self.top}, left={self.left}, "
            f"right={self.right})"
        )

    def mirrored(self):
        """Return the extremes of the region mirrored by ``y -> 1 - y``."""
        return CellExtremes(
            bottom=(1.0 - self.top[0], self.top[1], self.top[2]),
            top=(1.0 - self.bottom[0], self.bottom[1], self.bottom[2]),
            left=(self.left[0], 1.0 - self.left[2], 1.0 - self.left[1]),
            right=(self.right[0], 1.0 - self.right[2], 1.0 - self.right[1]),
        )

    def heights(self):
        """Heights of the extreme features, each tagged with its kind."""
        return [
            (self.bottom[0], "bottom"),
            (self.left[1], "left"),
            (self.left[2], "left"),
            (self.right[1], "right"),
            (self.right[2], "right"),
            (self.top[0], "top"),
        ]


class BaseCell:
    """A convex free region inside the unit square ``[0, 1] x [0, 1]``.

    The coordinate ``u`` runs along an edge of the input curve and ``y`` along an
    edge of the simplification. Subclasses implement :meth:`slice`,
    :meth:`column`, :meth:`contains`, :meth:`mirrored` and :meth:`_extremes`.
    """

    __slots__ = ("_extremes_cache",)

    def __init__(self):
        self._extremes_cache = None

    def slice(self, y):
        """Return the u-interval of the region at height y, or EMPTY."""
        raise NotImplementedError

    def column(self, u):
        """Return the y-interval of the region at position u, or EMPTY."""
        raise NotImplementedError

    def contains(self, u, y):
        """Vectorised membership test."""
        raise NotImplementedError

    def mirrored(self):
        """Return the cell mirrored by ``y -> 1 - y``."""
        raise NotImplementedError

    def _extremes(self):
        raise NotImplementedError

    def extremes(self):
        """Return the :class:`CellExtremes`, or None for an empty cell."""
        if self._extremes_cache is None:
            self._extremes_cache = self._extremes() or False
        return self._extremes_cache or None

    @property
    def is_empty(self):
        """True when the region does not meet the unit square."""
        return self.extremes() is None

    def y_range(self):
        """The closed range of heights with a non-empty slice."""
        ext = self.extremes()
        return EMPTY if ext is None else (ext.bottom[0], ext.top[0])

    def bounds(self, y):
        """Return ``(l(y), r(y))`` in local coordinates, ``(inf, inf)`` if empty.

        Heights within the y-range always produce finite values; numerically empty
        tangent slices fall back to the matching extreme point.
        """
        ext = self.extremes()
        if ext is None:
            return INF, INF
        ybot, ytop = ext.bottom[0], ext.top[0]
        if y < ybot or y > ytop:
            return INF, INF
        lo, hi = self.slice(y)
        if lo <= hi:
            return lo, hi
        feature = ext.bottom if y - ybot <= ytop - y else ext.top
        return feature[1], feature[2]

    def intervals(self):
        """Return the :class:`FreeSpaceIntervals` of the cell."""
        return FreeSpaceIntervals(
            left=self.column(0.0),
            right=self.column(1.0),
            bottom=self.slice(0.0),
            top=self.slice(1.0),
        )

    def vertex_heights(self):
        """Heights where the boundary functions change slope; empty for curved cells."""
        return np.empty(0)
