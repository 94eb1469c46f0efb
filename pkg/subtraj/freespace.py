"""Free space rows of one simplification edge against the whole input curve."""
import logging

import numpy as np

from subtraj.cell.exact import ExactCell
from subtraj.cell.polygon import approx_cell
from subtraj.cell.polygon import build_ball_polytope
from subtraj.utils import check_literal
from subtraj.utils import INF
from subtraj.utils import TOLERANCE

__author__ = "The subtraj developers"

__all__ = [
    "FreeSpace",
    "ExtremalSet",
    "extremal_points",
    "boundary_fns",
    "build_free_space",
    "build_free_spaces",
]

logger = logging.getLogger(__name__)

BACKENDS = ("exact", "approx")

# kind ranks of the symbolic perturbation key
_KIND_RANK = {"bound": -1, "bottom": 0, "left": 1, "right": 1, "vertex": 1, "top": 2}


class ExtremalSet:
    """Sorted heights of extremal points of a free space row.

    Entries are ``(y, cell, kind)`` triples ordered by the key
    ``(y, cell, kind rank)``. The heights 0 and 1 are always present, tagged with
    cell ``-1`` and kind ``bound``.

    Example:
        >>> ext = ExtremalSet([(0.5, 0, "top"), (0.5, 0, "bottom")])
        >>> [kind for _, _, kind in ext.entries][1:3]
        ['bottom', 'top']
        >>> ext.heights.tolist()
        [0.0, 0.5, 1.0]
    """

    __slots__ = ("_entries", "_heights")

    def __init__(self, entries=(), heights=None):
        entries = [(float(np.clip(y, 0.0, 1.0)), int(c), str(k)) for y, c, k in entries]
        entries += [(0.0, -1, "bound"), (1.0, -1, "bound")]
        entries.sort(key=lambda item: (item[0], item[1], _KIND_RANK[item[2]]))
        self._entries = tuple(entries)
        if heights is None:
            heights = np.unique(np.asarray([_[0] for _ in entries], dtype=float))
        self._heights = np.asarray(heights, dtype=float)

    def __len__(self):
        return self._heights.size

    def __eq__(self, other):
        if not isinstance(other, ExtremalSet):
            return False
        return self._entries == other._entries

    def __repr__(self):
        return f"ExtremalSet({len(self._entries)} entries, {len(self)} heights)"

    @property
    def entries(self):
        """All keyed entries, sorted."""
        return self._entries

    @property
    def heights(self):
        """The distinct heights, sorted and including 0 and 1."""
        return self._heights

    def mirrored(self):
        """The extremal set of the free space mirrored by ``y -> 1 - y``."""
        swap = {"top": "bottom", "bottom": "top"}
        return ExtremalSet(
            [(1.0 - y, c, swap.get(k, k)) for y, c, k in self._entries if c >= 0],
            heights=1.0 - self._heights[::-1],
        )


def extremal_points(cells, include_vertices=False):
    """Collect the extremal heights of a row of cells.

    Args:
        cells: A :class:`FreeSpace` or a list of cells.
        include_vertices: Also add every vertex height of polygonal cells.

    Returns:
        An :class:`ExtremalSet`.
    """
    cells = cells.cells if isinstance(cells, FreeSpace) else cells
    entries = []
    for k, cell in enumerate(cells):
        ext = cell.extremes()
        if ext is None:
            continue
        entries += [(y, k, kind) for y, kind in ext.heights()]
        if include_vertices:
            entries += [(y, k, "vertex") for y in cell.vertex_heights()]
    return ExtremalSet(entries)


def boundary_fns(space, i, y):
    """Return ``(l_i(y), r_i(y))`` of cell i in local coordinates.

    Example:
        >>> from subtraj.curve import PolygonalCurve
        >>> P = PolygonalCurve([[0, 0], [1, 0]])
        >>> space = build_free_space(P, P, 1, 5.0)
        >>> boundary_fns(space, 0, 0.5)
        (0.0, 1.0)
    """
    lo, hi = space.cells[i].bounds(y)
    return float(lo), float(hi)


def _column_changes(table):
    changed = table[:, 1:] != table[:, :-1]
    cols, rows = np.nonzero(changed.T)
    bounds = np.searchsorted(cols, np.arange(table.shape[1]))
    out = [np.empty(0, dtype=int)]
    out += [rows[bounds[h - 1] : bounds[h]] for h in range(1, table.shape[1])]
    return out


class FreeSpace:
    """One row of the free space: an edge of the simplification against P.

    Besides the cells the row caches, for every height of its extremal set,
    the left-most and right-most free positions of every cell in the global
    parameter of P. Infinite entries mark empty slices.

    Args:
        cells: The cells, one per edge of P.
        extremal: The :class:`ExtremalSet` of the row.
        edge: The 1-based index of the simplification edge.
        reversed: True for the row of the reversed edge.
    """

    __slots__ = (
        "_cells",
        "_extremal",
        "_edge",
        "_reversed",
        "_l",
        "_r",
        "_top_x",
        "_bot_x",
        "_lo_b",
        "_hi_b",
        "_changes",
    )

    def __init__(self, cells, extremal, edge=1, reversed=False, tables=None):
        self._cells = tuple(cells)
        self._extremal = extremal
        self._edge = int(edge)
        self._reversed = bool(reversed)
        n = len(self._cells)
        if tables is None:
            tables = self._build_tables()
        self._l, self._r, self._top_x, self._bot_x, self._lo_b, self._hi_b = tables
        self._changes = None
        assert self._l.shape == (n, len(extremal))

    def _build_tables(self):
        n, heights = len(self._cells), self._extremal.heights
        left = np.full((n, heights.size), INF)
        right = np.full((n, heights.size), INF)
        top_x, bot_x = np.full(n, INF), np.full(n, INF)
        for k, cell in enumerate(self._cells):
            ext = cell.extremes()
            if ext is None:
                continue
            ybot, ytop = ext.bottom[0], ext.top[0]
            for h in np.flatnonzero((heights >= ybot) & (heights <= ytop)):
                lo, hi = cell.bounds(heights[h])
                left[k, h], right[k, h] = (k + lo) / n, (k + hi) / n
            top_x[k] = (k + ext.top[2]) / n
            bot_x[k] = (k + ext.bottom[1]) / n
        lo_b, hi_b = np.full(max(n - 1, 0), INF), np.full(max(n - 1, 0), -INF)
        for b in range(n - 1):
            a0, a1 = self._cells[b].column(1.0)
            c0, c1 = self._cells[b + 1].column(0.0)
            lo, hi = max(a0, c0, 0.0), min(a1, c1, 1.0)
            if lo <= hi:
                lo_b[b], hi_b[b] = lo, hi
        return left, right, top_x, bot_x, lo_b, hi_b

    def __len__(self):
        return len(self._cells)

    def __repr__(self):
        flag = ", reversed" if self._reversed else ""
        return (
            f"FreeSpace(edge={self._edge}, cells={len(self)}, "
            f"heights={self.m}{flag})"
        )

    @property
    def cells(self):
        """The cells of the row."""
        return self._cells

    @property
    def extremal(self):
        """The :class:`ExtremalSet` of the row."""
        return self._extremal

    @property
    def heights(self):
        """The sorted extremal heights."""
        return self._extremal.heights

    @property
    def m(self):
        """Number of extremal heights."""
        return len(self._extremal)

    @property
    def edge(self):
        return self._edge

    @property
    def reversed(self):
        return self._reversed

    @property
    def l_table(self):
        """Global left-most free positions, shape ``(cells, heights)``."""
        return self._l

    @property
    def r_table(self):
        """Global right-most free positions, shape ``(cells, heights)``."""
        return self._r

    @property
    def top_x(self):
        """Global position of the right-most top-most point of every cell."""
        return self._top_x

    @property
    def bottom_x(self):
        """Global position of the left-most bottom-most point of every cell."""
        return self._bot_x

    @property
    def boundary_lo(self):
        """Lower ends of the free intervals between consecutive cells."""
        return self._lo_b

    @property
    def boundary_hi(self):
        """Upper ends of the free intervals between consecutive cells."""
        return self._hi_b

    @property
    def height_changes(self):
        """Cells whose l or r entry differs from the previous height.

        Returns:
            A pair of lists ``(l_changes, r_changes)``; entry h holds the cell
            indexes whose value at height h differs from height ``h - 1``. Entry
            0 is empty.
        """
        if self._changes is None:
            self._changes = (_column_changes(self._l), _column_changes(self._r))
        return self._changes

    @property
    def x_grid(self):
        """The global positions of the vertices of P."""
        return np.arange(len(self) + 1) / len(self)

    def mirrored(self):
        """The free space of the reversed edge, mirrored by ``y -> 1 - y``.

        The l/r tables of the mirror are the original tables with reversed height
        order; they are never recomputed.
        """
        tables = (
            self._l[:, ::-1].copy(),
            self._r[:, ::-1].copy(),
            self._top_x_mirrored(),
            self._bot_x_mirrored(),
            np.where(self._hi_b >= self._lo_b, 1.0 - self._hi_b, INF),
            np.where(self._hi_b >= self._lo_b, 1.0 - self._lo_b, -INF),
        )
        return FreeSpace(
            [cell.mirrored() for cell in self._cells],
            self._extremal.mirrored(),
            edge=self._edge,
            reversed=not self._reversed,
            tables=tables,
        )

    def _top_x_mirrored(self):
        n, out = len(self), np.full(len(self), INF)
        for k, cell in enumerate(self._cells):
            ext = cell.extremes()
            if ext is not None:
                out[k] = (k + ext.bottom[2]) / n
        return out

    def _bot_x_mirrored(self):
        n, out = len(self), np.full(len(self), INF)
        for k, cell in enumerate(self._cells):
            ext = cell.extremes()
            if ext is not None:
                out[k] = (k + ext.top[1]) / n
        return out

    def height_index(self, y, tol=TOLERANCE):
        """Index of the extremal height y, matched within tol."""
        k = int(np.argmin(np.abs(self.heights - y)))
        if abs(self.heights[k] - y) > tol:
            raise ValueError(f"The height, {y}, is not an extremal height of the row.")
        return k


def build_free_space(P, S, edge, delta, backend="exact", ball=None, epsilon=0.1):
    """Build the free space row of edge ``edge`` (1-based) of S against P.

    Args:
        P: The input :class:`~subtraj.curve.PolygonalCurve`.
        S: The simplification.
        edge: The 1-based edge index of S.
        delta: The radius.
        backend: ``exact`` for conic cells or ``approx`` for polygonal cells.
        ball: A prebuilt ball polytope for the approximate backend.
        epsilon: The approximation parameter used when ``ball`` is not given.
    """
    check_literal(backend, "backend", BACKENDS)
    eS = S.edge(edge)
    if backend == "exact":
        cells = [ExactCell(P.edge(k), eS, delta) for k in range(1, P.edge_count + 1)]
        extremal = extremal_points(cells)
    else:
        ball = build_ball_polytope(epsilon) if ball is None else ball
        cells = [
            approx_cell(eS, P.edge(k), delta, ball) for k in range(1, P.edge_count + 1)
        ]
        extremal = extremal_points(cells, include_vertices=True)
    return FreeSpace(cells, extremal, edge=edge)


def build_free_spaces(P, S, delta, backend="exact", epsilon=0.1):
    """Build one row per edge of S."""
    ball = build_ball_polytope(epsilon) if backend == "approx" else None
    spaces = [
        build_free_space(P, S, e, delta, backend=backend, ball=ball, epsilon=epsilon)
        for e in range(1, S.edge_count + 1)
    ]
    logger.debug(
        "built %d %s free space rows with %d extremal heights in total",
        len(spaces),
        backend,
        sum(_.m for _ in spaces),
    )
    return spaces
